#include "smt/reference.hpp"

#include <bit>
#include <cmath>

#include "smt/error.hpp"

namespace smt {

namespace {

void require_dense_capacity(std::size_t n) {
  if (n > kMaxDenseVariables) {
    throw CapacityError("dense tables support n <= 24, got n = " + std::to_string(n));
  }
}

void require_table(const DenseTable& t) {
  require_dense_capacity(t.n);
  if (t.values.size() != (std::size_t{1} << t.n)) {
    throw DimensionError("dense table for n = " + std::to_string(t.n) + " has " +
                         std::to_string(t.values.size()) + " entries");
  }
}

// All subset sums of `values`, built so each sum adds terms in index order.
std::vector<double> subset_sums(std::span<const double> values) {
  std::vector<double> sums(std::size_t{1} << values.size(), 0.0);
  for (std::size_t mask = 1; mask < sums.size(); ++mask) {
    const std::size_t top = std::bit_width(mask) - 1;
    sums[mask] = sums[mask ^ (std::size_t{1} << top)] + values[top];
  }
  return sums;
}

}  // namespace

DenseTable DenseTable::zeros(std::size_t n) {
  require_dense_capacity(n);
  return {n, std::vector<double>(std::size_t{1} << n, 0.0)};
}

DenseTable DenseTable::from_values(std::size_t n, std::vector<double> values) {
  DenseTable t{n, std::move(values)};
  require_table(t);
  return t;
}

std::uint64_t dense_index(const BitVector& x) {
  require_dense_capacity(x.size());
  std::uint64_t idx = 0;
  for (auto i : x.indices()) idx |= std::uint64_t{1} << (x.size() - 1 - i);
  return idx;
}

BitVector dense_point(std::size_t n, std::uint64_t index) {
  BitVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    if ((index >> (n - 1 - i)) & 1U) x.set(i);
  }
  return x;
}

DenseTable zeta_transform(DenseTable table) {
  require_table(table);
  const std::size_t size = table.values.size();
  for (std::size_t coord = 1; coord <= table.n; ++coord) {
    const std::size_t bit = std::size_t{1} << (table.n - coord);
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (mask & bit) table.values[mask] += table.values[mask ^ bit];
    }
  }
  return table;
}

DenseTable mobius_transform(DenseTable table) {
  require_table(table);
  const std::size_t size = table.values.size();
  for (std::size_t coord = 1; coord <= table.n; ++coord) {
    const std::size_t bit = std::size_t{1} << (table.n - coord);
    for (std::size_t mask = 0; mask < size; ++mask) {
      if (mask & bit) table.values[mask] -= table.values[mask ^ bit];
    }
  }
  return table;
}

DenseTable to_dense(const SparsePolynomial& p) {
  auto t = DenseTable::zeros(p.n());
  for (const auto& [k, v] : p.entries()) t.values[dense_index(k)] = v;
  return t;
}

SparsePolynomial to_sparse(const DenseTable& spectrum, double tau) {
  require_table(spectrum);
  SparsePolynomial p(spectrum.n);
  for (std::size_t idx = 0; idx < spectrum.values.size(); ++idx) {
    if (!is_zero(spectrum.values[idx], tau)) p.set(dense_point(spectrum.n, idx), spectrum.values[idx]);
  }
  return p;
}

double DenseOracle::eval(const BitVector& x) const {
  if (x.size() != table_.n) throw DimensionError("query length does not match dense table");
  return table_.values[dense_index(x)];
}

SparsePolynomial brute_force_learn(CountingOracle& f, double tau) {
  const std::size_t n = f.n();
  if (n > kMaxLearnVariables) {
    throw CapacityError("brute-force learning supports n <= 20, got n = " + std::to_string(n));
  }
  std::vector<BitVector> points;
  points.reserve(std::size_t{1} << n);
  for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << n); ++idx) {
    points.push_back(dense_point(n, idx));
  }
  auto evaluations = DenseTable::from_values(n, f.batch_eval(points));
  return to_sparse(mobius_transform(std::move(evaluations)), tau);
}

bool check_subset_sum_independence(std::span<const double> values, double tau) {
  if (values.size() > kMaxCheckedCoefficients) {
    throw CapacityError("subset-sum check supports at most 25 coefficients, got " +
                        std::to_string(values.size()));
  }
  // Split into two halves so the tables stay small; every pair is still visited.
  const std::size_t half = values.size() / 2;
  const auto low = subset_sums(values.first(half));
  const auto high = subset_sums(values.subspan(half));
  for (std::size_t b = 0; b < high.size(); ++b) {
    for (std::size_t a = 0; a < low.size(); ++a) {
      if (a == 0 && b == 0) continue;
      if (std::abs(low[a] + high[b]) <= tau) return false;
    }
  }
  return true;
}

bool check_subset_sum_independence(const SparsePolynomial& p, double tau) {
  const auto values = p.values();
  return check_subset_sum_independence(values, tau);
}

}  // namespace smt
