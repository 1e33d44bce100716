#include <gtest/gtest.h>

#include <random>

#include "smt/error.hpp"
#include "smt/reference.hpp"
#include "test_util.hpp"

using namespace smt;
using smt::test::bv;
using smt::test::poly;

namespace {

DenseTable random_table(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  auto t = DenseTable::zeros(n);
  for (auto& v : t.values) v = u(rng);
  return t;
}

// f[x] = Σ_{k ⊆ x} F[k] straight from the definition, O(3^n).
std::vector<double> naive_zeta(const std::vector<double>& F) {
  std::vector<double> f(F.size(), 0.0);
  for (std::size_t x = 0; x < F.size(); ++x) {
    for (std::size_t k = x;; k = (k - 1) & x) {
      f[x] += F[k];
      if (k == 0) break;
    }
  }
  return f;
}

}  // namespace

TEST(Zeta, Examples) {
  EXPECT_EQ(zeta_transform(DenseTable::from_values(2, {1, 2, 0, 0})).values, (std::vector<double>{1, 3, 1, 3}));
  EXPECT_EQ(zeta_transform(DenseTable::zeros(3)).values, std::vector<double>(8, 0.0));
  EXPECT_EQ(zeta_transform(DenseTable::from_values(2, {0, 0, 0, 5})).values, (std::vector<double>{0, 0, 0, 5}));
}

TEST(Mobius, Examples) {
  EXPECT_EQ(mobius_transform(DenseTable::from_values(2, {1, 3, 1, 3})).values, (std::vector<double>{1, 2, 0, 0}));
  auto constant = mobius_transform(DenseTable::from_values(3, std::vector<double>(8, 2.5)));
  EXPECT_EQ(constant.values[0], 2.5);
  for (std::size_t i = 1; i < 8; ++i) EXPECT_EQ(constant.values[i], 0.0);
}

TEST(Zeta, MatchesDefinition) {
  std::mt19937_64 rng(1);
  for (std::size_t n = 0; n <= 8; ++n) {
    const auto F = random_table(n, rng);
    const auto f = zeta_transform(F);
    const auto expected = naive_zeta(F.values);
    for (std::size_t i = 0; i < f.values.size(); ++i) EXPECT_NEAR(f.values[i], expected[i], 1e-12);
  }
}

TEST(Zeta, HandExpansion) {
  auto t = DenseTable::from_values(2, {1, 2, 4, 8});
  auto one = DenseTable::from_values(1, {1, 2});
  EXPECT_EQ(zeta_transform(one).values, (std::vector<double>{1, 3}));
  EXPECT_EQ(zeta_transform(t).values, (std::vector<double>{1, 3, 5, 15}));
}

TEST(Zeta, InversePairExhaustiveSmallN) {
  std::mt19937_64 rng(2);
  for (std::size_t n = 0; n <= 10; ++n) {
    const auto F = random_table(n, rng);
    const auto a = mobius_transform(zeta_transform(F));
    const auto b = zeta_transform(mobius_transform(F));
    for (std::size_t i = 0; i < F.values.size(); ++i) {
      EXPECT_NEAR(a.values[i], F.values[i], 1e-9);
      EXPECT_NEAR(b.values[i], F.values[i], 1e-9);
    }
  }
}

TEST(Zeta, InversePairRandomizedLargeN) {
  std::mt19937_64 rng(3);
  for (std::size_t n : {14u, 20u}) {
    auto F = DenseTable::zeros(n);
    std::uniform_int_distribution<int> small(-3, 3);
    for (auto& v : F.values) v = small(rng);
    // Integer inputs keep the round trip exact.
    EXPECT_EQ(mobius_transform(zeta_transform(F)).values, F.values);
  }
}

TEST(Dense, CapacityAndShape) {
  EXPECT_THROW(DenseTable::zeros(25), CapacityError);
  EXPECT_THROW(zeta_transform(DenseTable{2, {1, 2, 3}}), DimensionError);
  EXPECT_THROW(DenseTable::from_values(2, {1}), DimensionError);
}

TEST(Dense, IndexConventionMatchesText) {
  EXPECT_EQ(dense_index(bv("01")), 1u);
  EXPECT_EQ(dense_index(bv("10")), 2u);
  EXPECT_EQ(dense_point(4, 0b0011), bv("0011"));
  for (std::uint64_t m = 0; m < 64; ++m) EXPECT_EQ(dense_index(dense_point(6, m)), m);
}

TEST(Dense, SparseRoundTrip) {
  const auto p = poly(5, {{"10100", 1.5}, {"00000", -1}, {"11111", 2}});
  EXPECT_EQ(to_sparse(to_dense(p), kDefaultTau), p);
  const auto f = zeta_transform(to_dense(p));
  for (std::uint64_t m = 0; m < 32; ++m) EXPECT_DOUBLE_EQ(f.values[m], smt::test::direct_eval(p, dense_point(5, m)));
}

TEST(BruteForceLearn, Examples) {
  DenseOracle zero(DenseTable::zeros(4));
  CountingOracle fz(zero);
  EXPECT_TRUE(brute_force_learn(fz).empty());
  EXPECT_EQ(fz.query_count(), 16u);
  EXPECT_EQ(fz.round_count(), 1u);

  const auto p = poly(4, {{"1100", 1.5}});
  PolynomialOracle op(p);
  CountingOracle fp(op);
  EXPECT_EQ(brute_force_learn(fp), p);
}

TEST(BruteForceLearn, ReproducesOracleEverywhere) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<std::uint64_t> pick(0, 1023);
  SparsePolynomial p(10);
  for (int i = 0; i < 5; ++i) p.set(dense_point(10, pick(rng)), 1.0 + i * 0.25);
  PolynomialOracle o(p);
  CountingOracle f(o);
  const auto learned = brute_force_learn(f);
  EXPECT_TRUE(spectra_match(learned, p, 1e-9));
  EXPECT_TRUE(smt::test::agrees_everywhere(learned, o, 1e-9));
  EXPECT_EQ(f.query_count(), 1024u);
}

TEST(BruteForceLearn, Capacity) {
  FunctionOracle big(21, [](const BitVector&) { return 0.0; });
  CountingOracle f(big);
  EXPECT_THROW(brute_force_learn(f), CapacityError);
  EXPECT_EQ(f.query_count(), 0u);
}

TEST(SubsetSumIndependence, Examples) {
  EXPECT_FALSE(check_subset_sum_independence(std::vector<double>{1, 2, -3}));
  EXPECT_TRUE(check_subset_sum_independence(std::vector<double>{1, 2, 4}));
  EXPECT_TRUE(check_subset_sum_independence(std::vector<double>{0.3, 1.7, 2.2, 9}));
  EXPECT_TRUE(check_subset_sum_independence(std::vector<double>{}));
  EXPECT_FALSE(check_subset_sum_independence(std::vector<double>{5, 1, -1}));
  EXPECT_THROW(check_subset_sum_independence(std::vector<double>(26, 1.0)), CapacityError);
}

TEST(SubsetSumIndependence, ScalingInvariantAtZeroTau) {
  std::mt19937_64 rng(6);
  std::uniform_int_distribution<int> v(-6, 6);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> values(1 + trial % 8);
    for (auto& x : values) x = v(rng);
    const bool base = check_subset_sum_independence(values, 0.0);
    for (double c : {0.5, 3.0, 1024.0}) {
      auto scaled = values;
      for (auto& x : scaled) x *= c;
      EXPECT_EQ(check_subset_sum_independence(scaled, 0.0), base);
    }
  }
}

TEST(SubsetSumIndependence, MatchesNaiveEnumeration) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> v(-5, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> values(1 + trial % 10);
    for (auto& x : values) x = v(rng);
    bool expected = true;
    for (std::size_t mask = 1; mask < (std::size_t{1} << values.size()); ++mask) {
      double s = 0;
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (mask >> i & 1U) s += values[i];
      }
      if (s == 0) expected = false;
    }
    EXPECT_EQ(check_subset_sum_independence(values, 0.0), expected);
  }
}

TEST(SubsetSumIndependence, PolynomialOverload) {
  EXPECT_FALSE(check_subset_sum_independence(poly(3, {{"100", 1}, {"010", 2}, {"001", -3}})));
  EXPECT_TRUE(check_subset_sum_independence(poly(3, {{"100", 1}, {"010", 2}})));
}
