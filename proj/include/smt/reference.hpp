#pragma once

// Brute-force ground truth over the full subset lattice. Everything here is
// exponential in n and exists to check the sparse algorithms.
//
// Dense tables are indexed by a bitmask whose binary numeral reads like the
// text form: coordinate i is bit (n - i), so index 0b01 with n = 2 is "01".

#include <cstdint>
#include <span>
#include <vector>

#include "smt/core.hpp"
#include "smt/oracle.hpp"

namespace smt {

inline constexpr std::size_t kMaxDenseVariables = 24;
inline constexpr std::size_t kMaxLearnVariables = 20;
inline constexpr std::size_t kMaxCheckedCoefficients = 25;

struct DenseTable {
  std::size_t n = 0;
  std::vector<double> values;

  /// Zero table of length 2^n; throws CapacityError for n > 24.
  static DenseTable zeros(std::size_t n);
  static DenseTable from_values(std::size_t n, std::vector<double> values);
};

std::uint64_t dense_index(const BitVector& x);
BitVector dense_point(std::size_t n, std::uint64_t index);

/// f[x] = Σ_{k ⊆ x} F[k], one subset-sum sweep per coordinate 1..n.
DenseTable zeta_transform(DenseTable table);
/// Exact inverse of zeta_transform.
DenseTable mobius_transform(DenseTable table);

DenseTable to_dense(const SparsePolynomial& p);
/// Keeps entries with |F| > tau.
SparsePolynomial to_sparse(const DenseTable& spectrum, double tau);

class DenseOracle final : public QueryOracle {
 public:
  explicit DenseOracle(DenseTable evaluations) : table_(std::move(evaluations)) {}
  std::size_t n() const override { return table_.n; }
  double eval(const BitVector& x) const override;

 private:
  DenseTable table_;
};

/// Queries all 2^n points in one round and inverts. n ≤ 20.
SparsePolynomial brute_force_learn(CountingOracle& f, double tau = kDefaultTau);

/// True iff every nonempty subset of `values` sums to more than tau in
/// absolute value. Enumerates all 2^s subsets; s ≤ 25.
bool check_subset_sum_independence(std::span<const double> values, double tau = kDefaultTau);
bool check_subset_sum_independence(const SparsePolynomial& p, double tau = kDefaultTau);

}  // namespace smt
