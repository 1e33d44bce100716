#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "smt/error.hpp"
#include "smt/fasmt.hpp"
#include "smt/grouptest.hpp"
#include "smt/harness.hpp"
#include "smt/reference.hpp"
#include "test_util.hpp"

using namespace smt;
using smt::test::bv;
using smt::test::lb;
using smt::test::poly;

namespace {

BinRecord root_bin(std::size_t n, double value) {
  BinRecord b;
  b.value = value;
  b.zero_union = BitVector(n);
  return b;
}

std::string transcript_of(const SparsePolynomial& p, std::size_t d, FasmtOptions opts) {
  PolynomialOracle o(p);
  CountingOracle f(o);
  std::ostringstream out;
  Transcript t(out);
  opts.transcript = &t;
  fasmt_run(f, d, opts);
  return out.str();
}

SparsePolynomial integer_weights(const SparsePolynomial& p, std::uint64_t seed) {
  SparsePolynomial q(p.n());
  std::uint64_t w = seed;
  for (const auto& [k, v] : p.entries()) q.set(k, static_cast<double>(1 + (w++ * 7) % 9));
  return q;
}

}  // namespace

TEST(SplitBin, RootSplitSeparatesBothItems) {
  const auto p = poly(4, {{"1000", 2}, {"0001", 3}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  PeeledCoefficients none(4);
  const auto [v0, v1] = split_bin(root_bin(4, 5), bv("1011"), f, none);
  EXPECT_DOUBLE_EQ(v0, 0);
  EXPECT_DOUBLE_EQ(v1, 5);
  EXPECT_EQ(f.query_count(), 1u);
  EXPECT_EQ(f.round_count(), 1u);
}

TEST(SplitBin, ZeroBinAndSingleCoefficient) {
  PolynomialOracle zero(SparsePolynomial(4));
  CountingOracle fz(zero);
  const auto [a, b] = split_bin(root_bin(4, 0), bv("1100"), fz, SparsePolynomial(4));
  EXPECT_DOUBLE_EQ(a, 0);
  EXPECT_DOUBLE_EQ(b, 0);

  const auto p = poly(4, {{"0010", 1.5}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  const auto [c, e] = split_bin(root_bin(4, 1.5), bv("1100"), f, SparsePolynomial(4));
  EXPECT_DOUBLE_EQ(c, 1.5);
  EXPECT_DOUBLE_EQ(e, 0);
}

TEST(SplitBin, SubtractsPeeledCoefficients) {
  const auto p = poly(4, {{"0000", 1}, {"0100", 2}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  PeeledCoefficients found(4);
  found.add(bv("0000"), 1);
  const auto [v0, v1] = split_bin(root_bin(4, 2), bv("1000"), f, found);
  EXPECT_DOUBLE_EQ(v0, 2);
  EXPECT_DOUBLE_EQ(v1, 0);
  EXPECT_THROW(split_bin(root_bin(4, 2), bv("100"), f, found), DimensionError);
}

TEST(Fasmt, ZeroFunction) {
  PolynomialOracle o(SparsePolynomial(8));
  CountingOracle f(o);
  EXPECT_TRUE(fasmt_run(f, 2).empty());
  EXPECT_EQ(f.query_count(), 1u);
  EXPECT_EQ(f.round_count(), 1u);
}

TEST(Fasmt, ConstantTerm) {
  const auto p = poly(8, {{"00000000", 2.5}});
  for (std::size_t d : {1u, 3u}) {
    PolynomialOracle o(p);
    CountingOracle f(o);
    EXPECT_EQ(fasmt_run(f, d), p);
    EXPECT_EQ(f.query_count(), 1 + d);
  }
}

TEST(Fasmt, RandomInstanceMatchesGenerator) {
  const auto p = generate_synthetic(16, 8, 3, 5);
  PolynomialOracle o(p);
  CountingOracle f(o);
  const auto got = fasmt_run(f, 3);
  EXPECT_TRUE(spectra_match(got, p, 1e-9));
  EXPECT_LE(f.query_count(), fasmt_query_budget(16, p.size(), 3));
  EXPECT_EQ(f.query_count(), f.round_count());
}

TEST(Fasmt, AgreesWithBruteForceSmallN) {
  for (std::size_t n = 1; n <= 12; ++n) {
    const std::size_t d = std::min<std::size_t>(3, n);
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto p = generate_synthetic(n, 6, d, 17 * seed + n);
      PolynomialOracle o(p);
      CountingOracle f(o);
      const auto got = fasmt_run(f, d);
      CountingOracle g(o);
      EXPECT_TRUE(spectra_match(got, brute_force_learn(g), 1e-9));
      EXPECT_TRUE(smt::test::agrees_everywhere(got, o, 1e-9));
    }
  }
}

TEST(Fasmt, StackAndPriorityQueueTranscriptsMatch) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_synthetic(48, 10, 3, seed);
    FasmtOptions stack, pq;
    pq.schedule = BinSchedule::PriorityQueue;
    const auto a = transcript_of(p, 3, stack);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, transcript_of(p, 3, pq));
  }
}

TEST(Fasmt, CursorAndReplayTranscriptsMatch) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto p = generate_synthetic(48, 10, 3, seed + 50);
    FasmtOptions cursor, replay;
    replay.gbsa = GbsaMode::Replay;
    EXPECT_EQ(transcript_of(p, 3, cursor), transcript_of(p, 3, replay));
  }
}

TEST(Fasmt, TranscriptLabelsAreLexIncreasing) {
  const auto p = generate_synthetic(32, 8, 2, 9);
  std::istringstream in(transcript_of(p, 2, {}));
  std::string line;
  std::vector<Label> seen;
  while (std::getline(in, line)) seen.push_back(lb(line.substr(0, line.find('\t'))));
  ASSERT_GT(seen.size(), 1u);
  EXPECT_TRUE(seen.front().empty());
  for (std::size_t i = 2; i < seen.size(); ++i) EXPECT_EQ(lex_compare(seen[i - 1], seen[i]), Ordering::Less);
}

TEST(Fasmt, QueriesFollowTheLabelPath) {
  // Each split query is ¬(U ∪ h) where h and every path column come from
  // replaying the search on prefixes of the label.
  const std::size_t n = 24, d = 3;
  const auto p = generate_synthetic(n, 6, d, 4);
  std::istringstream in(transcript_of(p, d, {}));
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    const auto l = lb(line.substr(0, tab));
    const auto x = bv(line.substr(tab + 1, n));
    BitVector u(n);
    Label prefix;
    for (std::size_t i = 0; i < l.size(); ++i) {
      const auto step = gbsa_step(prefix, n, d);
      ASSERT_TRUE(std::holds_alternative<GbsaTest>(step));
      if (!l[i]) u |= std::get<GbsaTest>(step).h;
      prefix.push_back(l[i]);
    }
    const auto step = gbsa_step(l, n, d);
    ASSERT_TRUE(std::holds_alternative<GbsaTest>(step));
    EXPECT_EQ(x, ~(u | std::get<GbsaTest>(step).h));
  }
}

TEST(BinRecord, PathMatrixSharesParentColumns) {
  auto a = std::make_shared<const PathNode>(PathNode{nullptr, bv("1100")});
  auto b = std::make_shared<const PathNode>(PathNode{a, bv("0011")});
  BinRecord r;
  r.path = b;
  const auto m = r.path_matrix(4);
  ASSERT_EQ(m.cols(), 2u);
  EXPECT_EQ(m.column(0), bv("1100"));
  EXPECT_EQ(m.column(1), bv("0011"));
  EXPECT_EQ(BinRecord{}.path_matrix(4).cols(), 0u);
}

TEST(Fasmt, PeelingSoundnessIntegerMode) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto p = integer_weights(generate_synthetic(40, 8, 3, seed), seed);
    PolynomialOracle o(p);
    CountingOracle f(o);
    FasmtOptions opts;
    opts.tau = 0;
    std::size_t peels = 0;
    opts.on_peel = [&](const Label&, const BitVector& k, double v) {
      ++peels;
      EXPECT_EQ(v, p.coefficient(k));
    };
    EXPECT_EQ(fasmt_run(f, 3, opts), p);
    EXPECT_EQ(peels, p.size());
  }
}

TEST(Fasmt, QueryBudget) {
  EXPECT_EQ(fasmt_query_budget(128, 16, 4), 513u);
  for (std::size_t n : {16u, 100u, 512u}) {
    for (std::size_t d : {1u, 2u, 4u}) {
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto p = generate_synthetic(n, 12, d, seed);
        PolynomialOracle o(p);
        CountingOracle f(o);
        EXPECT_TRUE(spectra_match(fasmt_run(f, d), p, 1e-9));
        EXPECT_LE(f.query_count(), fasmt_query_budget(n, p.size(), d));
      }
    }
  }
}

TEST(Fasmt, DegreeOverflow) {
  const auto p = poly(8, {{"11100000", 1}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  EXPECT_THROW(fasmt_run(f, 1), DegreeOverflowError);
  CountingOracle g(o);
  EXPECT_THROW(fasmt_run(g, 2), AlgorithmError);
  CountingOracle h(o);
  EXPECT_THROW(fasmt_run(h, 0), ParameterError);
}

TEST(Fasmt, AutoDegreeDoubling) {
  const auto p = poly(8, {{"11100000", 1}, {"00000001", 2}});
  PolynomialOracle o(p);
  CountingOracle f(o);
  const auto r = fasmt_run_auto(f, 1);
  EXPECT_EQ(r.spectrum, p);
  EXPECT_EQ(r.d, 4u);
  EXPECT_EQ(r.restarts, 2u);

  CountingOracle g(o);
  const auto direct = fasmt_run_auto(g, 3);
  EXPECT_EQ(direct.restarts, 0u);
  EXPECT_LT(g.query_count(), f.query_count());
}

TEST(BinSplitter, DrivesOneQueryAtATime) {
  const auto p = poly(6, {{"100000", 1}, {"000011", 2}});
  PolynomialOracle o(p);
  PeeledCoefficients found(6);
  FasmtOptions opts;
  BinSplitter s(6, 2, 3, BitVector(6), std::nullopt, found, opts);
  std::size_t queries = 0;
  while (auto x = s.next_query()) {
    s.deliver(o.eval(*x));
    ++queries;
  }
  EXPECT_EQ(found.polynomial(), p);
  EXPECT_EQ(s.splits(), queries);
  EXPECT_EQ(s.peeled(), 2u);
}
