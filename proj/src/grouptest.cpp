#include "smt/grouptest.hpp"

#include <algorithm>
#include <cmath>

#include "smt/error.hpp"
#include "smt/random.hpp"

namespace smt {

namespace {

using Blocks = std::vector<std::vector<std::uint32_t>>;

std::shared_ptr<const Blocks> partition(std::vector<std::uint32_t> universe, std::size_t d) {
  std::sort(universe.begin(), universe.end());
  auto blocks = std::make_shared<Blocks>();
  const std::size_t u = universe.size();
  const std::size_t count = std::min(d, u);
  if (count == 0) return blocks;
  const std::size_t base = u / count;
  const std::size_t extra = u % count;
  std::size_t pos = 0;
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t len = base + (b < extra ? 1 : 0);
    blocks->emplace_back(universe.begin() + pos, universe.begin() + pos + len);
    pos += len;
  }
  return blocks;
}

std::vector<std::uint32_t> all_coordinates(std::size_t n) {
  std::vector<std::uint32_t> u(n);
  for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<std::uint32_t>(i);
  return u;
}

bool is_prime(std::size_t q) {
  if (q < 2) return false;
  for (std::size_t p = 2; p * p <= q; ++p) {
    if (q % p == 0) return false;
  }
  return true;
}

// q^k ≥ n, without overflow.
bool power_reaches(std::size_t q, std::size_t k, std::size_t n) {
  std::size_t acc = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (acc >= (n + q - 1) / q) return true;
    acc *= q;
  }
  return acc >= n;
}

std::size_t smallest_root(std::size_t n, std::size_t k) {
  auto q = static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(n), 1.0 / k)));
  q = std::max<std::size_t>(q, 2);
  while (q > 2 && power_reaches(q - 1, k, n)) --q;
  while (!power_reaches(q, k, n)) ++q;
  return q;
}

void require_list_params(std::size_t n, std::size_t d) {
  if (n < 2 || d < 1 || d >= n) {
    throw ParameterError("design needs n >= 2 and 1 <= d < n, got n = " + std::to_string(n) +
                         ", d = " + std::to_string(d));
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// GbsaCursor

GbsaCursor::GbsaCursor(std::size_t n, std::size_t d) : GbsaCursor(n, all_coordinates(n), d) {}

GbsaCursor::GbsaCursor(std::size_t n, std::vector<std::uint32_t> universe, std::size_t d) : n_(n), d_(d) {
  if (n == 0) throw ParameterError("binary splitting needs n >= 1");
  if (d == 0) throw ParameterError("binary splitting needs d >= 1");
  for (auto i : universe) {
    if (i >= n) throw DimensionError("universe coordinate " + std::to_string(i + 1) + " exceeds n");
  }
  blocks_ = partition(std::move(universe), d);
  load_block(0);
  settle();
}

void GbsaCursor::load_block(std::size_t b) {
  block_ = b;
  if (b < blocks_->size()) {
    remaining_ = (*blocks_)[b];
  } else {
    remaining_.clear();
  }
  splitting_ = false;
}

BitVector GbsaCursor::indicator(std::size_t lo, std::size_t hi) const {
  BitVector h(n_);
  for (std::size_t j = lo; j < hi; ++j) h.set(remaining_[j]);
  return h;
}

// Advances past steps that need no test: isolating a single element and
// skipping exhausted blocks.
void GbsaCursor::settle() {
  while (true) {
    if (splitting_) {
      if (hi_ - lo_ == 1) {
        found_.push_back(remaining_[lo_]);
        if (found_.size() > d_) {
          throw InfeasiblePrefixError("outcomes imply more than " + std::to_string(d_) + " defectives");
        }
        remaining_.erase(remaining_.begin() + static_cast<std::ptrdiff_t>(lo_));
        splitting_ = false;
        continue;
      }
      mid_ = lo_ + (hi_ - lo_ + 1) / 2;
      pending_ = Pending::Half;
      return;
    }
    if (block_ >= blocks_->size()) {
      finished_ = true;
      return;
    }
    if (remaining_.empty()) {
      load_block(block_ + 1);
      continue;
    }
    pending_ = Pending::Block;
    return;
  }
}

GbsaAction GbsaCursor::action() const {
  if (finished_) {
    auto sorted = found_;
    std::sort(sorted.begin(), sorted.end());
    return GbsaResult{BitVector::from_indices(n_, sorted)};
  }
  if (pending_ == Pending::Block) return GbsaTest{indicator(0, remaining_.size())};
  return GbsaTest{indicator(lo_, mid_)};
}

void GbsaCursor::feed(bool outcome) {
  if (finished_) throw InfeasiblePrefixError("outcome received after the search finished");
  ++tests_;
  if (pending_ == Pending::Block) {
    if (outcome) {
      if (found_.size() == d_) {
        throw InfeasiblePrefixError("positive test after " + std::to_string(d_) + " defectives were found");
      }
      splitting_ = true;
      lo_ = 0;
      hi_ = remaining_.size();
    } else {
      load_block(block_ + 1);
    }
  } else if (outcome) {
    hi_ = mid_;
  } else {
    lo_ = mid_;
  }
  settle();
}

GbsaAction gbsa_step(const Label& label, std::size_t n, std::size_t d) {
  GbsaCursor cursor(n, d);
  for (std::size_t i = 0; i < label.size(); ++i) {
    try {
      cursor.feed(label[i]);
    } catch (const InfeasiblePrefixError& e) {
      throw InfeasiblePrefixError("prefix " + label.to_string() + " infeasible at outcome " +
                                  std::to_string(i + 1) + ": " + e.what());
    }
  }
  return cursor.action();
}

GbsaOutcome gbsa_run(const std::function<bool(const BitVector&)>& tester, std::size_t n, std::size_t d) {
  GbsaCursor cursor(n, d);
  while (!cursor.finished()) {
    const auto action = cursor.action();
    cursor.feed(tester(std::get<GbsaTest>(action).h));
  }
  return {std::get<GbsaResult>(cursor.action()).k, cursor.tests_used()};
}

std::size_t ceil_log2_ratio(std::size_t n, std::size_t d) {
  if (d == 0) throw ParameterError("log ratio needs d >= 1");
  std::size_t r = 0;
  std::size_t reach = d;
  while (reach < n) {
    reach *= 2;
    ++r;
  }
  return r;
}

std::size_t gbsa_test_budget(std::size_t n, std::size_t d) {
  return d * (ceil_log2_ratio(n, d) + 2) + d;
}

// ---------------------------------------------------------------------------
// Disjunct designs

std::optional<KautzSingletonParams> kautz_singleton_params(std::size_t n, std::size_t d) {
  if (n < 2 || d < 1) return std::nullopt;
  std::optional<KautzSingletonParams> best;
  // Longer messages shrink the field but lengthen the code; past log₂ n the
  // field is already minimal.
  std::size_t max_k = 2;
  while ((std::size_t{1} << max_k) < n && max_k < 63) ++max_k;
  for (std::size_t k = 2; k <= max_k; ++k) {
    const std::size_t m = d * (k - 1) + 1;
    std::size_t q = std::max(m, smallest_root(n, k));
    while (!is_prime(q)) ++q;
    KautzSingletonParams p{q, k, m};
    if (!best || p.tests() < best->tests()) best = p;
  }
  return best;
}

TestMatrix construct_disjunct(std::size_t n, std::size_t d) {
  require_list_params(n, d);
  const auto params = kautz_singleton_params(n, d);
  if (!params || params->tests() >= n) return TestMatrix::identity(n);

  const std::size_t q = params->q;
  std::vector<BitVector> cols(params->tests(), BitVector(n));
  std::vector<std::size_t> digits(params->message_length);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rest = i;
    for (auto& c : digits) {
      c = rest % q;
      rest /= q;
    }
    for (std::size_t alpha = 0; alpha < params->length; ++alpha) {
      std::size_t value = 0;
      for (std::size_t j = digits.size(); j-- > 0;) value = (value * alpha + digits[j]) % q;
      cols[alpha * q + value].set(i);
    }
  }
  std::erase_if(cols, [](const BitVector& c) { return c.none(); });
  return TestMatrix(n, std::move(cols));
}

TestMatrix default_disjunct_design(std::size_t n, std::size_t d) {
  if (n == 0 || d == 0) throw ParameterError("disjunct design needs n >= 1 and d >= 1");
  if (n == 1 || d + 1 >= n) return TestMatrix::identity(n);
  return construct_disjunct(n, d);
}

bool verify_disjunct(const TestMatrix& h, std::size_t d) {
  if (d == 0) throw ParameterError("disjunctness needs d >= 1");
  const std::size_t n = h.rows();
  long double work = 1;
  for (std::size_t i = 0; i <= d; ++i) work *= static_cast<long double>(n);
  if (work > 1e8L) {
    throw CapacityError("exhaustive disjunct check over n^(d+1) = " + std::to_string(static_cast<double>(work)) +
                        " cases exceeds 1e8");
  }
  const auto rows = h.row_vectors();
  const std::size_t size = std::min(d, n - 1);

  // True when `uncovered` survives every choice of the remaining members.
  auto survives = [&](auto&& self, std::size_t item, std::size_t start, std::size_t depth,
                      const BitVector& uncovered) -> bool {
    if (uncovered.none()) return false;
    if (depth == size) return true;
    for (std::size_t j = start; j < n; ++j) {
      if (j == item) continue;
      if (!self(self, item, j + 1, depth + 1, uncovered & ~rows[j])) return false;
    }
    return true;
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (!survives(survives, i, 0, 0, rows[i])) return false;
  }
  return true;
}

std::vector<std::uint32_t> naive_candidates(const std::vector<BitVector>& rows, const BitVector& outcomes) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].is_subset_of(outcomes)) out.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

BitVector decode_disjunct(const TestMatrix& h, const Label& label, std::size_t d) {
  if (label.size() != h.cols()) {
    throw DimensionError("syndrome of length " + std::to_string(label.size()) + " for a design with " +
                         std::to_string(h.cols()) + " tests");
  }
  const auto candidates = naive_candidates(h.row_vectors(), label.to_bits());
  if (candidates.size() > d) {
    throw DecodeError("syndrome " + label.to_string() + " has " + std::to_string(candidates.size()) +
                      " candidates, more than d = " + std::to_string(d));
  }
  auto k = BitVector::from_indices(h.rows(), candidates);
  if (syndrome(h, k) != label) {
    throw DecodeError("candidates " + k.to_string() + " do not reproduce syndrome " + label.to_string());
  }
  return k;
}

ListDesign construct_list_disjunct(std::size_t n, std::size_t d, std::uint64_t seed,
                                   const ListDesignOptions& options) {
  require_list_params(n, d);
  if (!(options.column_factor > 0)) throw ParameterError("column factor must be positive");
  const auto b = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(options.column_factor * d * std::log2(static_cast<double>(n)))));

  Rng rng(seed);
  ListDesign design;
  design.d = d;
  design.rows.assign(n, BitVector(b));
  std::vector<BitVector> cols(b, BitVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < b; ++t) {
      if (rng.uniform_index(d + 1) == 0) {
        design.rows[i].set(t);
        cols[t].set(i);
      }
    }
  }
  design.matrix = TestMatrix(n, std::move(cols));

  std::size_t worst = d;
  std::vector<std::uint32_t> support;
  for (std::size_t trial = 0; trial < options.audit_trials; ++trial) {
    const std::size_t c = 1 + rng.uniform_index(d);
    support.clear();
    while (support.size() < c) {
      const auto i = static_cast<std::uint32_t>(rng.uniform_index(n));
      if (std::find(support.begin(), support.end(), i) == support.end()) support.push_back(i);
    }
    BitVector outcomes(b);
    for (auto i : support) outcomes |= design.rows[i];
    worst = std::max(worst, naive_candidates(design.rows, outcomes).size());
  }
  design.list_size = worst;
  return design;
}

std::vector<std::uint32_t> list_decode(const ListDesign& design, const Label& label) {
  if (label.size() != design.matrix.cols()) {
    throw DimensionError("syndrome of length " + std::to_string(label.size()) + " for a design with " +
                         std::to_string(design.matrix.cols()) + " tests");
  }
  return naive_candidates(design.rows, label.to_bits());
}

}  // namespace smt
