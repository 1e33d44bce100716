#pragma once

// Partially adaptive transform: bins are refined breadth-first with the
// columns of a fixed design, one batch of queries per column, and every
// surviving leaf is decoded from its syndrome.

#include <functional>
#include <span>
#include <vector>

#include "smt/core.hpp"
#include "smt/oracle.hpp"

namespace smt {

// Active bins at one depth, lex-sorted. zero_unions[i] is the union of the
// columns on which labels[i] has outcome 0, so x = ¬zero_unions[i] is the
// query vector of that bin.
struct LevelState {
  std::size_t depth = 0;
  std::vector<Label> labels;
  std::vector<double> values;
  std::vector<BitVector> zero_unions;

  std::size_t size() const noexcept { return labels.size(); }
  bool empty() const noexcept { return labels.empty(); }
};

/// Solves m_i = Σ_{j : ℓ_j ≤ ℓ_i} u_j by forward substitution. Labels must be
/// of equal length and strictly increasing in lex order.
std::vector<double> solve_bin_system(std::span<const Label> labels, std::span<const double> measurements);

struct PasmtOptions {
  double tau = kDefaultTau;
  Transcript* transcript = nullptr;
  /// Called with the root level and after every refinement.
  std::function<void(const LevelState&)> on_level;
};

/// Round 0: queries f(1) and returns the root level (empty when f(1) is zero).
LevelState pasmt_root(CountingOracle& f, const PasmtOptions& options = {});

/// Splits every active bin with test vector h in one batch, keeping the level
/// lex-sorted and dropping bins with |V| ≤ τ.
void pasmt_refine(CountingOracle& f, const BitVector& h, LevelState& level, const PasmtOptions& options = {});

/// Root query plus one refinement per column of H, stopping early once no
/// bin survives.
LevelState pasmt_levels(CountingOracle& f, const TestMatrix& h, const PasmtOptions& options = {});

/// Full reconstruction with a d-disjunct design H. Throws AlgorithmError
/// naming the leaf when a syndrome fails to decode.
SparsePolynomial pasmt_run(CountingOracle& f, const TestMatrix& h, std::size_t d, const PasmtOptions& options = {});

}  // namespace smt
