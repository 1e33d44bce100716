#pragma once

// Group-testing primitives: Hwang's generalized binary splitting as a
// resumable decision procedure, d-disjunct designs with naive decoding, and
// randomized list-disjunct designs.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "smt/core.hpp"

namespace smt {

struct GbsaTest {
  BitVector h;
};
struct GbsaResult {
  BitVector k;
};
using GbsaAction = std::variant<GbsaTest, GbsaResult>;

// Generalized binary splitting, one test at a time.
//
// The universe (all coordinates by default) is split into min(d, |U|)
// contiguous blocks in ascending order, the first |U| mod d of them one
// element larger. Each block is tested whole; on a positive outcome binary
// splitting keeps the first ⌈|W|/2⌉ elements of W when that half tests
// positive and the rest otherwise, the located element is removed and the
// block is re-tested. Testing an empty block is skipped.
//
// The cursor is a value: copying it forks the search, which is how callers
// carry one search state per bin.
class GbsaCursor {
 public:
  GbsaCursor(std::size_t n, std::size_t d);
  /// Search restricted to `universe` (0-based, any order); tests are still
  /// length-n vectors.
  GbsaCursor(std::size_t n, std::vector<std::uint32_t> universe, std::size_t d);

  bool finished() const noexcept { return finished_; }
  /// Next test, or the identified vector once finished.
  GbsaAction action() const;
  /// Feeds the outcome of the pending test. Throws InfeasiblePrefixError if the
  /// search has already finished or more than d defectives are implied.
  void feed(bool outcome);

  std::size_t tests_used() const noexcept { return tests_; }
  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }

 private:
  enum class Pending { Block, Half };

  void load_block(std::size_t b);
  void settle();
  BitVector indicator(std::size_t lo, std::size_t hi) const;

  std::size_t n_;
  std::size_t d_;
  std::shared_ptr<const std::vector<std::vector<std::uint32_t>>> blocks_;
  std::size_t block_ = 0;
  std::vector<std::uint32_t> remaining_;
  bool splitting_ = false;
  std::size_t lo_ = 0, mid_ = 0, hi_ = 0;
  Pending pending_ = Pending::Block;
  std::vector<std::uint32_t> found_;
  std::size_t tests_ = 0;
  bool finished_ = false;
};

/// Replays the search against the outcomes in `label` and returns what comes
/// next: the following test, or the result if the search ends exactly there.
GbsaAction gbsa_step(const Label& label, std::size_t n, std::size_t d);

struct GbsaOutcome {
  BitVector k;
  std::size_t tests_used = 0;
};

/// Runs the search against `tester`, which answers hᵀk* for a hidden k*.
GbsaOutcome gbsa_run(const std::function<bool(const BitVector&)>& tester, std::size_t n,
                     std::size_t d);

/// d·(⌈log₂(n/d)⌉ + 2) + d, the worst-case test count of the search.
std::size_t gbsa_test_budget(std::size_t n, std::size_t d);
/// ⌈log₂(n/d)⌉ computed exactly in integers; 0 when n ≤ d.
std::size_t ceil_log2_ratio(std::size_t n, std::size_t d);

// ---------------------------------------------------------------------------
// Disjunct designs

/// Kautz–Singleton parameters: Reed–Solomon codewords of length `length` over
/// GF(q) for messages of `message_length` symbols, one test per (position,
/// symbol) pair.
struct KautzSingletonParams {
  std::size_t q = 0;
  std::size_t message_length = 0;
  std::size_t length = 0;
  std::size_t tests() const { return q * length; }
};

/// Cheapest prime-field parameters that are d-disjunct for n items, if any.
std::optional<KautzSingletonParams> kautz_singleton_params(std::size_t n, std::size_t d);

/// d-disjunct n×b matrix. Kautz–Singleton with empty tests dropped, or the
/// identity when that is no wider. Requires n ≥ 2 and 1 ≤ d < n.
TestMatrix construct_disjunct(std::size_t n, std::size_t d);

/// Disjunct design for any n ≥ 1, d ≥ 1: the identity when d ≥ n - 1 (it is
/// disjunct for every d), construct_disjunct otherwise.
TestMatrix default_disjunct_design(std::size_t n, std::size_t d);

/// Exhaustive d-disjunctness check over all (item, set of d other items).
/// Throws CapacityError when n^(d+1) > 10^8.
bool verify_disjunct(const TestMatrix& h, std::size_t d);

/// Items all of whose tests are positive.
std::vector<std::uint32_t> naive_candidates(const std::vector<BitVector>& rows, const BitVector& outcomes);

/// Naive O(bn) decoding. Throws DecodeError if the candidate set has more than
/// d items or does not reproduce the syndrome.
BitVector decode_disjunct(const TestMatrix& h, const Label& label, std::size_t d);

struct ListDesign {
  TestMatrix matrix;
  std::size_t d = 0;
  /// Largest candidate list seen by the construction audit (at least d).
  std::size_t list_size = 0;
  std::vector<BitVector> rows;
};

struct ListDesignOptions {
  double column_factor = 4.0;
  std::size_t audit_trials = 1000;
};

/// Random design with entries 1 w.p. 1/(d+1) and ⌈C·d·log₂ n⌉ columns (at
/// least one), audited on random defect vectors of weight 1..d.
ListDesign construct_list_disjunct(std::size_t n, std::size_t d, std::uint64_t seed,
                                   const ListDesignOptions& options = {});

/// Candidate set (ascending, 0-based) of the naive rule; no exactness claim.
std::vector<std::uint32_t> list_decode(const ListDesign& design, const Label& label);

}  // namespace smt
