#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "smt/error.hpp"
#include "smt/grouptest.hpp"
#include "smt/harness.hpp"
#include "smt/pasmt.hpp"
#include "smt/reference.hpp"
#include "test_util.hpp"

using namespace smt;
using smt::test::bv;
using smt::test::lb;
using smt::test::poly;

namespace {

std::vector<Label> labels(std::initializer_list<const char*> xs) {
  std::vector<Label> out;
  for (const char* x : xs) out.push_back(lb(x));
  return out;
}

TestMatrix three_column_design() { return TestMatrix(4, {bv("0011"), bv("1010"), bv("1100")}); }

// Σ_{ℓ' ≤ ℓ} V(ℓ'‖0) from the ground truth: coefficients whose syndrome on the
// first t+1 columns is ℓ'‖0 with ℓ' ≤ ℓ.
double expected_measurement(const SparsePolynomial& p, const TestMatrix& h, std::size_t t, const Label& l) {
  double sum = 0;
  for (const auto& [k, v] : p.entries()) {
    Label full;
    for (std::size_t c = 0; c <= t; ++c) full.push_back(h.column(c).intersects(k));
    if (full[t]) continue;
    bool leq = true;
    for (std::size_t c = 0; c < t; ++c) {
      if (full[c] && !l[c]) leq = false;
    }
    if (leq) sum += v;
  }
  return sum;
}

}  // namespace

TEST(SolveBinSystem, Examples) {
  const auto ls = labels({"00", "01", "10", "11"});
  EXPECT_EQ(solve_bin_system(ls, std::vector<double>{1, 3, 4, 10}), (std::vector<double>{1, 2, 3, 4}));
  const auto one = labels({"101"});
  EXPECT_EQ(solve_bin_system(one, std::vector<double>{2.5}), (std::vector<double>{2.5}));
  const auto two = labels({"0", "1"});
  EXPECT_EQ(solve_bin_system(two, std::vector<double>{1.5, 1.5 + 7}), (std::vector<double>{1.5, 7}));
  EXPECT_TRUE(solve_bin_system({}, {}).empty());
}

TEST(SolveBinSystem, IncomparableLabelsStayIndependent) {
  const auto ls = labels({"01", "10"});
  EXPECT_EQ(solve_bin_system(ls, std::vector<double>{3, 5}), (std::vector<double>{3, 5}));
}

TEST(SolveBinSystem, Errors) {
  const auto unsorted = labels({"10", "01"});
  EXPECT_THROW(solve_bin_system(unsorted, std::vector<double>{1, 2}), ValidationError);
  const auto dup = labels({"01", "01"});
  EXPECT_THROW(solve_bin_system(dup, std::vector<double>{1, 2}), ValidationError);
  const auto mixed = labels({"0", "01"});
  EXPECT_THROW(solve_bin_system(mixed, std::vector<double>{1, 2}), DimensionError);
  const auto ok = labels({"0", "1"});
  EXPECT_THROW(solve_bin_system(ok, std::vector<double>{1}), DimensionError);
}

TEST(Pasmt, ZeroFunctionUsesOneQuery) {
  PolynomialOracle o(SparsePolynomial(4));
  CountingOracle f(o);
  EXPECT_TRUE(pasmt_run(f, three_column_design(), 1).empty());
  EXPECT_EQ(f.query_count(), 1u);
  EXPECT_EQ(f.round_count(), 1u);
}

TEST(Pasmt, ConstantTermFollowsAllZerosPath) {
  const auto p = poly(4, {{"0000", 3.5}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  std::vector<LevelState> levels;
  PasmtOptions opts;
  opts.on_level = [&](const LevelState& s) { levels.push_back(s); };
  EXPECT_EQ(pasmt_run(f, three_column_design(), 1, opts), p);
  ASSERT_EQ(levels.size(), 4u);
  EXPECT_EQ(levels.back().labels, labels({"000"}));
}

TEST(Pasmt, ThreeColumnDesignDecodableInstance) {
  const auto h = three_column_design();
  const auto p = poly(4, {{"0000", 1}, {"0100", 2}, {"0001", 4}});
  EXPECT_EQ(syndrome(h, bv("0100")), lb("001"));
  EXPECT_EQ(syndrome(h, bv("0001")), lb("100"));
  PolynomialOracle o(p);
  CountingOracle f(o);
  std::ostringstream log;
  Transcript t(log);
  PasmtOptions opts;
  opts.tau = 0;
  opts.transcript = &t;
  EXPECT_EQ(pasmt_run(f, h, 1, opts), p);
  EXPECT_LE(f.query_count(), 3u * 3 + 1);
  EXPECT_EQ(f.round_count(), 4u);
  EXPECT_EQ(log.str().substr(0, 8), "\t1111\t7\n");
}

TEST(Pasmt, ThreeColumnDesignCollisionIsReported) {
  // 1000 and 1100 share the syndrome 011 under this design.
  const auto p = poly(4, {{"0010", 1}, {"1000", 2}, {"1100", 4}});
  EXPECT_EQ(syndrome(three_column_design(), bv("1000")), syndrome(three_column_design(), bv("1100")));
  PolynomialOracle o(p);
  CountingOracle f(o);
  try {
    pasmt_run(f, three_column_design(), 1);
    FAIL() << "expected AlgorithmError";
  } catch (const AlgorithmError& e) {
    EXPECT_NE(std::string(e.what()).find("011"), std::string::npos);
  }
}

TEST(Pasmt, DimensionMismatch) {
  PolynomialOracle o(poly(5, {{"10000", 1}}));
  CountingOracle f(o);
  EXPECT_THROW(pasmt_run(f, three_column_design(), 1), DimensionError);
}

TEST(Pasmt, LevelConservationAndMeasurements) {
  const std::size_t n = 40, d = 2;
  const auto h = default_disjunct_design(n, d);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto p = generate_synthetic(n, 6, d, seed);
    PolynomialOracle o(p);
    CountingOracle f(o);
    double total = 0;
    for (const auto& [k, v] : p.entries()) total += v;
    PasmtOptions opts;
    opts.on_level = [&](const LevelState& s) {
      double sum = 0;
      for (double v : s.values) sum += v;
      EXPECT_NEAR(sum, total, 6 * 1e-9 + 1e-12);
      EXPECT_LE(s.size(), p.size());
      for (std::size_t i = 1; i < s.size(); ++i) {
        EXPECT_EQ(lex_compare(s.labels[i - 1], s.labels[i]), Ordering::Less);
      }
    };
    EXPECT_TRUE(spectra_match(pasmt_run(f, h, d, opts), p, 1e-9));
  }
}

TEST(Pasmt, MeasurementsMatchGroundTruth) {
  const std::size_t n = 30, d = 2;
  const auto h = default_disjunct_design(n, d);
  const auto p = generate_synthetic(n, 8, d, 11);
  PolynomialOracle o(p);
  CountingOracle f(o);
  auto level = pasmt_root(f);
  for (std::size_t t = 0; t < h.cols(); ++t) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      const auto x = ~(level.zero_unions[i] | h.column(t));
      EXPECT_NEAR(o.eval(x), expected_measurement(p, h, t, level.labels[i]), 1e-9);
    }
    pasmt_refine(f, h.column(t), level);
  }
}

TEST(Pasmt, QueryAndRoundEnvelope) {
  for (std::size_t n : {16u, 64u}) {
    for (std::size_t d : {1u, 2u, 3u}) {
      const auto h = default_disjunct_design(n, d);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto p = generate_synthetic(n, 8, d, seed);
        PolynomialOracle o(p);
        CountingOracle f(o);
        EXPECT_TRUE(spectra_match(pasmt_run(f, h, d), p, 1e-9));
        EXPECT_LE(f.query_count(), p.size() * h.cols() + 1);
        EXPECT_LE(f.round_count(), h.cols() + 1);
      }
    }
  }
}

TEST(Pasmt, RoundsIndependentOfSparsity) {
  const auto h = default_disjunct_design(128, 2);
  std::optional<std::uint64_t> rounds;
  for (std::size_t s : {1u, 2u, 4u, 8u, 16u, 32u}) {
    const auto p = generate_synthetic(128, s, 2, 100 + s);
    PolynomialOracle o(p);
    CountingOracle f(o);
    EXPECT_TRUE(spectra_match(pasmt_run(f, h, 2), p, 1e-9));
    if (!rounds) rounds = f.round_count();
    EXPECT_EQ(f.round_count(), *rounds);
  }
  EXPECT_EQ(*rounds, h.cols() + 1);
}

TEST(Pasmt, AgreesWithBruteForceSmallN) {
  for (std::size_t n = 2; n <= 12; ++n) {
    const std::size_t d = std::min<std::size_t>(3, n - 1);
    const auto h = default_disjunct_design(n, d);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto p = generate_synthetic(n, 5, d, seed * 31 + n);
      PolynomialOracle o(p);
      CountingOracle f(o);
      const auto got = pasmt_run(f, h, d);
      CountingOracle g(o);
      EXPECT_TRUE(spectra_match(got, brute_force_learn(g), 1e-9));
      EXPECT_TRUE(smt::test::agrees_everywhere(got, o, 1e-9));
    }
  }
}

TEST(Pasmt, EmptyLevelStopsEarly) {
  const auto p = poly(6, {{"100000", 1}, {"010000", -1}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  const auto level = pasmt_levels(f, default_disjunct_design(6, 1));
  EXPECT_TRUE(level.empty());
  EXPECT_EQ(f.query_count(), 1u);
}
