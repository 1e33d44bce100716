#include "smt/hybrid.hpp"

#include <algorithm>
#include <memory>
#include <numeric>

#include "smt/error.hpp"
#include "smt/pasmt.hpp"
#include "smt/random.hpp"

namespace smt {

std::vector<std::vector<std::size_t>> partial_order_layers(const std::vector<Label>& labels) {
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lex_compare(labels[a], labels[b]) == Ordering::Less; });
  // Every ≤-predecessor is lex-smaller, so one pass in lex order suffices.
  std::vector<std::size_t> depth(labels.size(), 0);
  std::vector<std::vector<std::size_t>> layers;
  for (std::size_t a = 0; a < order.size(); ++a) {
    const auto i = order[a];
    for (std::size_t b = 0; b < a; ++b) {
      const auto j = order[b];
      if (labels[j].leq(labels[i])) depth[i] = std::max(depth[i], depth[j] + 1);
    }
    if (depth[i] >= layers.size()) layers.resize(depth[i] + 1);
    layers[depth[i]].push_back(i);
  }
  return layers;
}

namespace {

// Predecessor lists for the random linear extension.
std::vector<std::vector<std::size_t>> predecessors(const std::vector<Label>& labels) {
  std::vector<std::vector<std::size_t>> pred(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      if (i != j && labels[j].leq(labels[i])) pred[i].push_back(j);
    }
  }
  return pred;
}

}  // namespace

SparsePolynomial hybrid_run(CountingOracle& f, std::size_t d, std::uint64_t seed, const HybridOptions& options,
                            HybridReport* report) {
  if (d == 0) throw ParameterError("hybrid needs d >= 1");
  HybridReport local;
  HybridReport& rep = report ? *report : local;
  rep = HybridReport{};
  const std::size_t n = f.n();

  FasmtOptions fasmt_options;
  fasmt_options.tau = options.tau;
  fasmt_options.schedule = options.schedule;
  fasmt_options.transcript = options.transcript;

  auto fallback = [&](const std::string& reason) {
    rep.fell_back = true;
    rep.fallback_reason = reason;
    if (options.log) options.log("hybrid: falling back to fasmt: " + reason);
    return fasmt_run(f, d, fasmt_options);
  };
  if (n < 2 || d >= n) return fallback("list design needs n >= 2 and d < n");

  const auto design = construct_list_disjunct(n, d, seed, options.list);
  rep.list_columns = design.matrix.cols();
  rep.list_size = design.list_size;

  // Phase 1: breadth-first refinement with the list design.
  const auto q0 = f.query_count();
  const auto r0 = f.round_count();
  PasmtOptions pasmt_options;
  pasmt_options.tau = options.tau;
  pasmt_options.transcript = options.transcript;
  const auto leaves = pasmt_levels(f, design.matrix, pasmt_options);
  rep.phase1_queries = f.query_count() - q0;
  rep.phase1_rounds = f.round_count() - r0;

  std::vector<LocalizedBin> bins;
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    auto candidates = list_decode(design, leaves.labels[i]);
    rep.candidate_sizes.push_back(candidates.size());
    if (candidates.size() > design.list_size) {
      return fallback("bin " + leaves.labels[i].to_string() + " has " + std::to_string(candidates.size()) +
                      " candidates, audited list size is " + std::to_string(design.list_size));
    }
    bins.push_back({leaves.labels[i], leaves.values[i], std::move(candidates), leaves.zero_unions[i]});
  }
  rep.bins = bins.size();
  rep.bin_queries.assign(bins.size(), 0);

  // Phase 2: adaptive search inside each candidate set.
  const auto q1 = f.query_count();
  const auto r1 = f.round_count();
  PeeledCoefficients found(n);
  auto make_search = [&](std::size_t i) {
    return std::make_unique<BinSplitter>(n, d, bins[i].value, bins[i].zero_union, bins[i].candidates, found,
                                         fasmt_options);
  };
  std::vector<Label> labels;
  for (const auto& b : bins) labels.push_back(b.label);

  try {
    if (options.order == Phase2Order::Layered) {
      const auto layers = partial_order_layers(labels);
      rep.layers = layers.size();
      for (const auto& layer : layers) {
        std::vector<std::unique_ptr<BinSplitter>> searches;
        for (auto i : layer) searches.push_back(make_search(i));
        std::vector<std::size_t> active(layer.size());
        std::iota(active.begin(), active.end(), 0);
        while (!active.empty()) {
          std::vector<BitVector> batch;
          std::vector<std::size_t> asked;
          for (auto a : active) {
            if (auto x = searches[a]->next_query()) {
              batch.push_back(std::move(*x));
              asked.push_back(a);
            }
          }
          const auto raw = f.batch_eval(batch);
          for (std::size_t j = 0; j < asked.size(); ++j) {
            searches[asked[j]]->deliver(raw[j]);
            ++rep.bin_queries[layer[asked[j]]];
          }
          active = std::move(asked);
        }
      }
    } else {
      const auto pred = predecessors(labels);
      std::vector<bool> done(bins.size(), false);
      Rng rng(options.order_seed);
      for (std::size_t step = 0; step < bins.size(); ++step) {
        std::vector<std::size_t> ready;
        for (std::size_t i = 0; i < bins.size(); ++i) {
          if (done[i]) continue;
          if (std::all_of(pred[i].begin(), pred[i].end(), [&](std::size_t j) { return done[j]; })) ready.push_back(i);
        }
        const auto i = ready[rng.uniform_index(ready.size())];
        auto search = make_search(i);
        while (auto x = search->next_query()) {
          search->deliver(f.eval_round(*x));
          ++rep.bin_queries[i];
        }
        done[i] = true;
      }
      rep.layers = bins.size();
    }
  } catch (const AlgorithmError& e) {
    rep.phase2_queries = f.query_count() - q1;
    rep.phase2_rounds = f.round_count() - r1;
    return fallback(e.what());
  }
  rep.phase2_queries = f.query_count() - q1;
  rep.phase2_rounds = f.round_count() - r1;
  return found.polynomial();
}

}  // namespace smt
