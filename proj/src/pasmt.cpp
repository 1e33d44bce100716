#include "smt/pasmt.hpp"

#include "smt/error.hpp"
#include "smt/grouptest.hpp"

namespace smt {

std::vector<double> solve_bin_system(std::span<const Label> labels, std::span<const double> measurements) {
  if (labels.size() != measurements.size()) {
    throw DimensionError("bin system has " + std::to_string(labels.size()) + " labels and " +
                         std::to_string(measurements.size()) + " measurements");
  }
  for (std::size_t i = 1; i < labels.size(); ++i) {
    if (labels[i].size() != labels[0].size()) throw DimensionError("bin labels differ in length");
    if (lex_compare(labels[i - 1], labels[i]) != Ordering::Less) {
      throw ValidationError("bin labels not strictly lex-sorted at position " + std::to_string(i + 1));
    }
  }
  // ℓ_j ≤ ℓ_i implies ℓ_j precedes ℓ_i in lex order, so the system is unit
  // lower triangular.
  std::vector<double> u(measurements.begin(), measurements.end());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (labels[j].leq(labels[i])) u[i] -= u[j];
    }
  }
  return u;
}

LevelState pasmt_root(CountingOracle& f, const PasmtOptions& options) {
  const auto all = BitVector::ones(f.n());
  const double total = f.eval_round(all);
  if (options.transcript) options.transcript->record(Label{}, all, total);
  LevelState level;
  if (!is_zero(total, options.tau)) {
    level.labels.emplace_back();
    level.values.push_back(total);
    level.zero_unions.emplace_back(f.n());
  }
  if (options.on_level) options.on_level(level);
  return level;
}

void pasmt_refine(CountingOracle& f, const BitVector& h, LevelState& level, const PasmtOptions& options) {
  if (h.size() != f.n()) throw DimensionError("test vector length does not match the oracle");
  if (level.empty()) {
    ++level.depth;
    if (options.on_level) options.on_level(level);
    return;
  }
  std::vector<BitVector> queries;
  queries.reserve(level.size());
  for (const auto& u : level.zero_unions) queries.push_back(~(u | h));
  const auto measured = f.batch_eval(queries);

  std::vector<Label> left_labels;
  left_labels.reserve(level.size());
  for (const auto& l : level.labels) left_labels.push_back(l.child(false));
  if (options.transcript) {
    for (std::size_t i = 0; i < queries.size(); ++i) options.transcript->record(left_labels[i], queries[i], measured[i]);
  }
  const auto left = solve_bin_system(left_labels, measured);

  LevelState next;
  next.depth = level.depth + 1;
  auto keep = [&](Label label, double value, BitVector zero_union) {
    if (is_zero(value, options.tau)) return;
    next.labels.push_back(std::move(label));
    next.values.push_back(value);
    next.zero_unions.push_back(std::move(zero_union));
  };
  for (std::size_t i = 0; i < level.size(); ++i) {
    keep(std::move(left_labels[i]), left[i], level.zero_unions[i] | h);
    keep(level.labels[i].child(true), level.values[i] - left[i], std::move(level.zero_unions[i]));
  }
  level = std::move(next);
  if (options.on_level) options.on_level(level);
}

LevelState pasmt_levels(CountingOracle& f, const TestMatrix& h, const PasmtOptions& options) {
  if (h.rows() != f.n()) {
    throw DimensionError("design has " + std::to_string(h.rows()) + " rows for " + std::to_string(f.n()) +
                         " variables");
  }
  auto level = pasmt_root(f, options);
  for (std::size_t t = 0; t < h.cols() && !level.empty(); ++t) pasmt_refine(f, h.column(t), level, options);
  return level;
}

SparsePolynomial pasmt_run(CountingOracle& f, const TestMatrix& h, std::size_t d, const PasmtOptions& options) {
  if (d == 0) throw ParameterError("pasmt needs d >= 1");
  const auto leaves = pasmt_levels(f, h, options);
  SparsePolynomial out(f.n());
  if (leaves.empty()) return out;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    const auto& label = leaves.labels[i];
    BitVector k;
    try {
      k = decode_disjunct(h, label, d);
    } catch (const DecodeError& e) {
      throw AlgorithmError("leaf " + label.to_string() +
                           " did not decode (degree above d or cancelling coefficients): " + e.what());
    }
    if (out.contains(k)) throw AlgorithmError("leaf " + label.to_string() + " decodes to a support seen before");
    out.set(k, leaves.values[i]);
  }
  return out;
}

}  // namespace smt
