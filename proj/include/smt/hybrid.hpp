#pragma once

// Two-phase reconstruction. A breadth-first pass with a random list-disjunct
// design narrows each bin to a small candidate set of coordinates; the
// adaptive search then runs inside each candidate set, with bins whose labels
// are incomparable sharing rounds.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "smt/fasmt.hpp"
#include "smt/grouptest.hpp"
#include "smt/oracle.hpp"

namespace smt {

struct LocalizedBin {
  Label label;
  double value = 0.0;
  std::vector<std::uint32_t> candidates;
  BitVector zero_union;
};

enum class Phase2Order {
  /// Kahn layers of the label order, one lockstep search per layer.
  Layered,
  /// Bins one at a time in a random linear extension of the label order.
  RandomLinearExtension,
};

struct HybridOptions {
  double tau = kDefaultTau;
  ListDesignOptions list;
  Phase2Order order = Phase2Order::Layered;
  std::uint64_t order_seed = 0;
  BinSchedule schedule = BinSchedule::Stack;
  Transcript* transcript = nullptr;
  /// Receives a line of text whenever the run falls back to plain fasmt.
  std::function<void(const std::string&)> log;
};

struct HybridReport {
  std::size_t list_columns = 0;
  std::size_t list_size = 0;
  std::size_t bins = 0;
  std::size_t layers = 0;
  std::uint64_t phase1_queries = 0;
  std::uint64_t phase1_rounds = 0;
  std::uint64_t phase2_queries = 0;
  std::uint64_t phase2_rounds = 0;
  std::vector<std::size_t> bin_queries;
  std::vector<std::size_t> candidate_sizes;
  bool fell_back = false;
  std::string fallback_reason;
};

/// Bins grouped so every bin's ≤-predecessors lie in earlier groups; each
/// group holds pairwise incomparable labels. Labels must share one length.
std::vector<std::vector<std::size_t>> partial_order_layers(const std::vector<Label>& labels);

/// Exact reconstruction for degree ≤ d. Falls back to fasmt_run on the full
/// domain when a candidate set exceeds the audited list size, when the
/// search overflows, or when (n, d) is outside the list-design range.
SparsePolynomial hybrid_run(CountingOracle& f, std::size_t d, std::uint64_t seed, const HybridOptions& options = {},
                            HybridReport* report = nullptr);

}  // namespace smt
