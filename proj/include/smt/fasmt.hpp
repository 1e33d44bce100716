#pragma once

// Fully adaptive transform: a depth-first walk over bins in lex order, each
// split by the next binary-splitting test of its own path, with coefficients
// peeled off the residual as they are isolated.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "smt/core.hpp"
#include "smt/grouptest.hpp"
#include "smt/oracle.hpp"

namespace smt {

// Test vectors from the root to a bin, shared with the parent's path.
struct PathNode {
  std::shared_ptr<const PathNode> parent;
  BitVector h;
};

struct BinRecord {
  Label label;
  double value = 0.0;
  std::shared_ptr<const PathNode> path;
  /// Union of the path columns with outcome 0.
  BitVector zero_union;
  /// Search state after feeding `label`; empty in replay mode.
  std::optional<GbsaCursor> cursor;

  /// Path columns in order, root first.
  TestMatrix path_matrix(std::size_t n) const;
};

/// Queries x = ¬(U_ℓ ∪ h) once and splits the bin sum into (V(ℓ‖0), V(ℓ‖1)),
/// subtracting the coefficients already found.
std::pair<double, double> split_bin(const BinRecord& bin, const BitVector& h, CountingOracle& f,
                                    const PeeledCoefficients& found, Transcript* transcript = nullptr);
std::pair<double, double> split_bin(const BinRecord& bin, const BitVector& h, CountingOracle& f,
                                    const SparsePolynomial& found);

enum class BinSchedule {
  /// Push the 1-child then the 0-child; pops come out in lex order.
  Stack,
  /// Explicit lex-ordered priority queue.
  PriorityQueue,
};

enum class GbsaMode {
  /// Each bin carries a copy of its parent's search state.
  Cursor,
  /// Each bin replays the search from its label.
  Replay,
};

struct FasmtOptions {
  double tau = kDefaultTau;
  BinSchedule schedule = BinSchedule::Stack;
  GbsaMode gbsa = GbsaMode::Cursor;
  Transcript* transcript = nullptr;
  /// Called for every isolated coefficient with the bin value it was given.
  std::function<void(const Label&, const BitVector&, double)> on_peel;
};

// Lex-ordered search below one root bin. Drives itself one query at a time
// so several searches over incomparable bins can share rounds.
class BinSplitter {
 public:
  /// `universe` restricts the binary splitting to those coordinates (all when
  /// empty optional). `base_union` is the zero-union of the root bin.
  BinSplitter(std::size_t n, std::size_t d, double root_value, BitVector base_union,
              std::optional<std::vector<std::uint32_t>> universe, PeeledCoefficients& found,
              const FasmtOptions& options);

  /// Pops, prunes and peels bins until one needs a test; returns that query, or
  /// nothing when the search is complete. Throws DegreeOverflowError when the
  /// replay becomes infeasible.
  std::optional<BitVector> next_query();
  /// Feeds the raw oracle value for the query last returned.
  void deliver(double raw);

  std::size_t splits() const noexcept { return splits_; }
  std::size_t peeled() const noexcept { return peeled_; }

 private:
  void push(BinRecord bin);
  BinRecord pop();
  bool pending_empty() const;
  GbsaAction action_for(const BinRecord& bin) const;

  std::size_t n_;
  std::size_t d_;
  std::optional<std::vector<std::uint32_t>> universe_;
  PeeledCoefficients& found_;
  const FasmtOptions& options_;

  std::vector<BinRecord> stack_;
  std::vector<BinRecord> heap_;

  struct Open {
    BinRecord bin;
    BitVector h;
    BitVector x;
  };
  std::optional<Open> open_;
  std::size_t splits_ = 0;
  std::size_t peeled_ = 0;
};

/// Exact reconstruction for degree ≤ d: one root query, then one query per
/// split, each its own round.
SparsePolynomial fasmt_run(CountingOracle& f, std::size_t d, const FasmtOptions& options = {});

/// Worst-case query count 1 + s·(d·(⌈log₂(n/d)⌉ + 2) + d).
std::size_t fasmt_query_budget(std::size_t n, std::size_t s, std::size_t d);

struct AutoDegreeResult {
  SparsePolynomial spectrum;
  std::size_t d = 0;
  std::size_t restarts = 0;
};

/// Runs fasmt_run starting at d, doubling d after each degree overflow, at
/// most ⌈log₂ n⌉ restarts. Queries of failed attempts stay counted.
AutoDegreeResult fasmt_run_auto(CountingOracle& f, std::size_t d, const FasmtOptions& options = {});

}  // namespace smt
