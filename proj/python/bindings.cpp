#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "smt/error.hpp"
#include "smt/grouptest.hpp"
#include "smt/harness.hpp"
#include "smt/oracle.hpp"
#include "smt/random.hpp"
#include "smt/reference.hpp"

namespace py = pybind11;
using namespace smt;

namespace {

// Spectra cross the boundary as {bitstring: value}.
using Spectrum = std::map<std::string, double>;

SparsePolynomial to_poly(std::size_t n, const Spectrum& s) {
  SparsePolynomial p(n);
  for (const auto& [k, v] : s) {
    const auto bits = BitVector::from_string(k);
    if (bits.size() != n) {
      throw DimensionError("support " + k + " has length " + std::to_string(bits.size()) + ", expected " +
                           std::to_string(n));
    }
    p.set(bits, v);
  }
  return p;
}

Spectrum from_poly(const SparsePolynomial& p) {
  Spectrum out;
  for (const auto& [k, v] : p.entries()) out.emplace(k.to_string(), v);
  return out;
}

py::dict run(Algorithm alg, const QueryOracle& oracle, std::size_t d, double tau, std::uint64_t seed) {
  CountingOracle f(oracle);
  ReconstructOptions opts;
  opts.tau = tau;
  opts.seed = seed;
  const auto spectrum = reconstruct(alg, f, d, opts);
  py::dict out;
  out["spectrum"] = from_poly(spectrum);
  out["queries"] = f.query_count();
  out["rounds"] = f.round_count();
  return out;
}

std::vector<std::string> columns(const TestMatrix& h) {
  std::vector<std::string> out;
  for (const auto& c : h.columns()) out.push_back(c.to_string());
  return out;
}

TestMatrix from_columns(std::size_t n, const std::vector<std::string>& cols) {
  TestMatrix h(n);
  for (const auto& c : cols) h.add_column(BitVector::from_string(c));
  return h;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Sparse Möbius transform: query-efficient recovery of sparse set-function spectra.";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", error.ptr());
  py::register_exception<CapacityError>(m, "CapacityError", error.ptr());
  py::register_exception<ParameterError>(m, "ParameterError", error.ptr());
  py::register_exception<ValidationError>(m, "ValidationError", error.ptr());
  py::register_exception<InfeasiblePrefixError>(m, "InfeasiblePrefixError", error.ptr());
  py::register_exception<DecodeError>(m, "DecodeError", error.ptr());
  auto algorithm_error = py::register_exception<AlgorithmError>(m, "AlgorithmError", error.ptr());
  py::register_exception<DegreeOverflowError>(m, "DegreeOverflowError", algorithm_error.ptr());

  m.attr("DEFAULT_TAU") = kDefaultTau;
  m.attr("PRNG") = Rng::kAlgorithm;
  m.attr("CSV_HEADER") = std::string(kCsvHeader);

  m.def("generate_synthetic", [](std::size_t n, std::size_t s, std::size_t d, std::uint64_t seed, double lo,
                                 double hi) { return from_poly(generate_synthetic(n, s, d, seed, lo, hi)); },
        py::arg("n"), py::arg("s"), py::arg("d"), py::arg("seed"), py::arg("weight_lo") = 1.0,
        py::arg("weight_hi") = 2.0);

  m.def("evaluate",
        [](std::size_t n, const Spectrum& spectrum, const std::string& x) {
          return eval_sparse(to_poly(n, spectrum), BitVector::from_string(x));
        },
        py::arg("n"), py::arg("spectrum"), py::arg("x"), "f(x) = sum of F(k) over k <= x.");

  m.def("reconstruct",
        [](const std::string& alg, std::size_t n, const Spectrum& spectrum, std::size_t d, double tau,
           std::uint64_t seed) {
          PolynomialOracle oracle(to_poly(n, spectrum));
          return run(parse_algorithm(alg), oracle, d, tau, seed);
        },
        py::arg("algorithm"), py::arg("n"), py::arg("spectrum"), py::arg("d"), py::arg("tau") = kDefaultTau,
        py::arg("seed") = 0,
        "Recover the spectrum through evaluation queries. Returns {spectrum, queries, rounds}.");

  m.def("reconstruct_function",
        [](const std::string& alg, std::size_t n, std::function<double(const std::string&)> fn, std::size_t d,
           double tau, std::uint64_t seed) {
          FunctionOracle oracle(n, [&](const BitVector& x) { return fn(x.to_string()); });
          return run(parse_algorithm(alg), oracle, d, tau, seed);
        },
        py::arg("algorithm"), py::arg("n"), py::arg("f"), py::arg("d"), py::arg("tau") = kDefaultTau,
        py::arg("seed") = 0, "Like reconstruct, querying a Python callable on bit strings.");

  m.def("brute_force_learn",
        [](std::size_t n, const Spectrum& spectrum, double tau) {
          PolynomialOracle oracle(to_poly(n, spectrum));
          CountingOracle f(oracle);
          return from_poly(brute_force_learn(f, tau));
        },
        py::arg("n"), py::arg("spectrum"), py::arg("tau") = kDefaultTau);

  m.def("zeta_transform",
        [](std::size_t n, std::vector<double> values) {
          return zeta_transform(DenseTable::from_values(n, std::move(values))).values;
        },
        py::arg("n"), py::arg("values"));
  m.def("mobius_transform",
        [](std::size_t n, std::vector<double> values) {
          return mobius_transform(DenseTable::from_values(n, std::move(values))).values;
        },
        py::arg("n"), py::arg("values"));

  m.def("check_subset_sum_independence",
        [](const std::vector<double>& values, double tau) { return check_subset_sum_independence(values, tau); },
        py::arg("values"), py::arg("tau") = kDefaultTau);

  m.def("lower_bound", &lower_bound, py::arg("n"), py::arg("s"), py::arg("d"));
  m.def("optimality_ratio", &optimality_ratio, py::arg("q"), py::arg("n"), py::arg("s"), py::arg("d"));

  m.def("gbsa_run",
        [](const std::string& hidden, std::size_t d) {
          const auto k = BitVector::from_string(hidden);
          const auto r = gbsa_run([&](const BitVector& h) { return h.intersects(k); }, k.size(), d);
          return py::make_tuple(r.k.to_string(), r.tests_used);
        },
        py::arg("hidden"), py::arg("d"), "Binary splitting against a hidden vector. Returns (k, tests_used).");
  m.def("gbsa_test_budget", &gbsa_test_budget, py::arg("n"), py::arg("d"));

  m.def("construct_disjunct", [](std::size_t n, std::size_t d) { return columns(construct_disjunct(n, d)); },
        py::arg("n"), py::arg("d"), "Columns of a d-disjunct design as bit strings.");
  m.def("verify_disjunct",
        [](std::size_t n, const std::vector<std::string>& cols, std::size_t d) {
          return verify_disjunct(from_columns(n, cols), d);
        },
        py::arg("n"), py::arg("columns"), py::arg("d"));
  m.def("decode_disjunct",
        [](std::size_t n, const std::vector<std::string>& cols, const std::string& label, std::size_t d) {
          return decode_disjunct(from_columns(n, cols), Label::from_string(label), d).to_string();
        },
        py::arg("n"), py::arg("columns"), py::arg("label"), py::arg("d"));

  m.def("run_benchmark",
        [](const std::vector<std::tuple<std::string, std::size_t, std::size_t, std::size_t, std::uint64_t>>& grid) {
          std::vector<BenchCell> cells;
          for (const auto& [alg, n, s, d, seed] : grid) cells.push_back({parse_algorithm(alg), n, s, d, seed});
          py::list out;
          for (const auto& r : run_benchmark(cells)) {
            py::dict row;
            row["algorithm"] = r.algorithm;
            row["n"] = r.n;
            row["s_requested"] = r.s_requested;
            row["s_actual"] = r.s_actual;
            row["d"] = r.d;
            row["seed"] = r.seed;
            row["queries"] = r.queries;
            row["rounds"] = r.rounds;
            row["runtime_ms"] = r.runtime_ms;
            row["exact"] = r.exact;
            row["lower_bound"] = r.lower_bound;
            row["optimality_ratio"] = r.optimality_ratio;
            row["error"] = r.error;
            out.append(row);
          }
          return out;
        },
        py::arg("grid"), "Run (algorithm, n, s, d, seed) cells; one dict per cell.");
}
