#include "smt/fasmt.hpp"

#include <algorithm>

#include "smt/error.hpp"

namespace smt {

TestMatrix BinRecord::path_matrix(std::size_t n) const {
  std::vector<BitVector> cols;
  for (auto node = path; node; node = node->parent) cols.push_back(node->h);
  std::reverse(cols.begin(), cols.end());
  return TestMatrix(n, std::move(cols));
}

std::pair<double, double> split_bin(const BinRecord& bin, const BitVector& h, CountingOracle& f,
                                    const PeeledCoefficients& found, Transcript* transcript) {
  if (h.size() != f.n() || bin.zero_union.size() != f.n()) {
    throw DimensionError("bin and test vector must have length " + std::to_string(f.n()));
  }
  const auto x = ~(bin.zero_union | h);
  const double raw = f.eval_round(x);
  if (transcript) transcript->record(bin.label, x, raw);
  const double left = raw - found.contained_sum(x);
  return {left, bin.value - left};
}

std::pair<double, double> split_bin(const BinRecord& bin, const BitVector& h, CountingOracle& f,
                                    const SparsePolynomial& found) {
  if (h.size() != f.n() || bin.zero_union.size() != f.n()) {
    throw DimensionError("bin and test vector must have length " + std::to_string(f.n()));
  }
  const double left = residual_eval(f, found, ~(bin.zero_union | h));
  return {left, bin.value - left};
}

// ---------------------------------------------------------------------------
// BinSplitter

namespace {

struct LexGreater {
  bool operator()(const BinRecord& a, const BinRecord& b) const {
    return lex_compare(a.label, b.label) == Ordering::Greater;
  }
};

GbsaCursor fresh_cursor(std::size_t n, std::size_t d, const std::optional<std::vector<std::uint32_t>>& universe) {
  return universe ? GbsaCursor(n, *universe, d) : GbsaCursor(n, d);
}

}  // namespace

BinSplitter::BinSplitter(std::size_t n, std::size_t d, double root_value, BitVector base_union,
                         std::optional<std::vector<std::uint32_t>> universe, PeeledCoefficients& found,
                         const FasmtOptions& options)
    : n_(n), d_(d), universe_(std::move(universe)), found_(found), options_(options) {
  if (base_union.size() != n) throw DimensionError("root zero-union has the wrong length");
  BinRecord root{Label{}, root_value, nullptr, std::move(base_union), std::nullopt};
  if (options_.gbsa == GbsaMode::Cursor) root.cursor = fresh_cursor(n_, d_, universe_);
  push(std::move(root));
}

void BinSplitter::push(BinRecord bin) {
  if (options_.schedule == BinSchedule::Stack) {
    stack_.push_back(std::move(bin));
  } else {
    heap_.push_back(std::move(bin));
    std::push_heap(heap_.begin(), heap_.end(), LexGreater{});
  }
}

BinRecord BinSplitter::pop() {
  if (options_.schedule == BinSchedule::Stack) {
    auto bin = std::move(stack_.back());
    stack_.pop_back();
    return bin;
  }
  std::pop_heap(heap_.begin(), heap_.end(), LexGreater{});
  auto bin = std::move(heap_.back());
  heap_.pop_back();
  return bin;
}

bool BinSplitter::pending_empty() const {
  return options_.schedule == BinSchedule::Stack ? stack_.empty() : heap_.empty();
}

GbsaAction BinSplitter::action_for(const BinRecord& bin) const {
  if (bin.cursor) return bin.cursor->action();
  auto cursor = fresh_cursor(n_, d_, universe_);
  for (std::size_t i = 0; i < bin.label.size(); ++i) cursor.feed(bin.label[i]);
  return cursor.action();
}

std::optional<BitVector> BinSplitter::next_query() {
  if (open_) throw AlgorithmError("next_query called before the previous answer was delivered");
  while (!pending_empty()) {
    auto bin = pop();
    if (is_zero(bin.value, options_.tau)) continue;
    GbsaAction action;
    try {
      action = action_for(bin);
    } catch (const InfeasiblePrefixError& e) {
      throw DegreeOverflowError("bin " + bin.label.to_string() + " holds a coefficient of degree above " +
                                std::to_string(d_) + ": " + e.what());
    }
    if (auto* result = std::get_if<GbsaResult>(&action)) {
      if (options_.on_peel) options_.on_peel(bin.label, result->k, bin.value);
      found_.add(result->k, bin.value);
      ++peeled_;
      continue;
    }
    auto h = std::get<GbsaTest>(std::move(action)).h;
    auto x = ~(bin.zero_union | h);
    open_ = Open{std::move(bin), std::move(h), x};
    return x;
  }
  return std::nullopt;
}

void BinSplitter::deliver(double raw) {
  if (!open_) throw AlgorithmError("answer delivered with no query outstanding");
  auto [bin, h, x] = std::move(*open_);
  open_.reset();
  ++splits_;
  if (options_.transcript) options_.transcript->record(bin.label, x, raw);
  const double left = raw - found_.contained_sum(x);

  auto path = std::make_shared<const PathNode>(PathNode{bin.path, h});
  BinRecord zero{bin.label.child(false), left, path, bin.zero_union | h, std::nullopt};
  BinRecord one{bin.label.child(true), bin.value - left, path, std::move(bin.zero_union), std::nullopt};
  if (bin.cursor) {
    // An infeasible child keeps no cursor; popping it replays and raises,
    // unless its bin is pruned first.
    auto advance = [&](BinRecord& child, bool outcome) {
      child.cursor = *bin.cursor;
      try {
        child.cursor->feed(outcome);
      } catch (const InfeasiblePrefixError&) {
        child.cursor.reset();
      }
    };
    advance(zero, false);
    advance(one, true);
  }
  push(std::move(one));
  push(std::move(zero));
}

// ---------------------------------------------------------------------------

SparsePolynomial fasmt_run(CountingOracle& f, std::size_t d, const FasmtOptions& options) {
  if (d == 0) throw ParameterError("fasmt needs d >= 1");
  const std::size_t n = f.n();
  const auto all = BitVector::ones(n);
  const double total = f.eval_round(all);
  if (options.transcript) options.transcript->record(Label{}, all, total);

  PeeledCoefficients found(n);
  BinSplitter search(n, d, total, BitVector(n), std::nullopt, found, options);
  while (auto x = search.next_query()) search.deliver(f.eval_round(*x));
  return found.polynomial();
}

std::size_t fasmt_query_budget(std::size_t n, std::size_t s, std::size_t d) {
  return 1 + s * gbsa_test_budget(n, d);
}

AutoDegreeResult fasmt_run_auto(CountingOracle& f, std::size_t d, const FasmtOptions& options) {
  if (d == 0) throw ParameterError("fasmt needs d >= 1");
  const std::size_t n = f.n();
  const std::size_t max_restarts = ceil_log2_ratio(n, 1);
  for (std::size_t restart = 0;; ++restart) {
    try {
      return {fasmt_run(f, d, options), d, restart};
    } catch (const DegreeOverflowError&) {
      if (restart >= max_restarts || d >= n) throw;
      d = std::min(2 * d, n);
    }
  }
}

}  // namespace smt
