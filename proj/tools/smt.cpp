// Command-line front end: instance generation, reconstruction, brute-force
// verification, benchmark sweeps and the lower bound.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "smt/error.hpp"
#include "smt/harness.hpp"
#include "smt/io.hpp"
#include "smt/reference.hpp"

namespace {

enum Exit { kOk = 0, kValidation = 1, kAlgorithm = 2, kMismatch = 3 };

smt::io::InputFormat parse_format(const std::string& name) {
  if (name == "auto") return smt::io::InputFormat::Auto;
  if (name == "polynomial") return smt::io::InputFormat::Polynomial;
  if (name == "hypergraph") return smt::io::InputFormat::Hypergraph;
  throw smt::ValidationError("unknown input format '" + name + "'");
}

// Integral spectra can be pruned exactly.
double pick_tau(const std::optional<double>& tau, const smt::SparsePolynomial& p) {
  if (tau) {
    if (!(*tau >= 0)) throw smt::ParameterError("--tau must be nonnegative");
    return *tau;
  }
  return p.is_integral() ? 0.0 : smt::kDefaultTau;
}

struct RunArgs {
  std::string alg = "fasmt";
  std::string input;
  std::string format = "auto";
  std::size_t d = 0;
  std::optional<double> tau;
  std::uint64_t seed = 0;
};

void add_run_options(CLI::App* cmd, RunArgs& a) {
  cmd->add_option("--alg", a.alg, "fasmt, pasmt or hybrid")->required()->check(CLI::IsMember({"fasmt", "pasmt", "hybrid"}));
  cmd->add_option("--input", a.input, "polynomial or hypergraph file")->required();
  cmd->add_option("--d", a.d, "degree bound")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--tau", a.tau, "zero threshold (0 for integral inputs, else 1e-9)");
  cmd->add_option("--seed", a.seed, "seed of the hybrid list design");
  cmd->add_option("--format", a.format, "auto, polynomial or hypergraph")
      ->check(CLI::IsMember({"auto", "polynomial", "hypergraph"}));
}

int cmd_gen(std::size_t n, std::size_t s, std::size_t d, std::uint64_t seed, double wlo, double whi,
            const std::string& out) {
  smt::io::save_polynomial(out, smt::generate_synthetic(n, s, d, seed, wlo, whi));
  return kOk;
}

int cmd_reconstruct(const RunArgs& a, const std::string& out, const std::string& transcript_path) {
  const auto truth = smt::io::load_spectrum(a.input, parse_format(a.format));
  smt::PolynomialOracle oracle(truth);
  smt::CountingOracle f(oracle);

  std::ofstream transcript_file;
  std::optional<smt::Transcript> transcript;
  if (!transcript_path.empty()) {
    transcript_file.open(transcript_path);
    if (!transcript_file) throw smt::ValidationError("cannot write " + transcript_path);
    transcript.emplace(transcript_file);
  }
  smt::ReconstructOptions options;
  options.tau = pick_tau(a.tau, truth);
  options.seed = a.seed;
  options.transcript = transcript ? &*transcript : nullptr;
  const auto recovered = smt::reconstruct(smt::parse_algorithm(a.alg), f, a.d, options);
  smt::io::save_polynomial(out, recovered);
  std::fprintf(stderr, "%s: %zu coefficients, %llu queries, %llu rounds\n", a.alg.c_str(), recovered.size(),
               static_cast<unsigned long long>(f.query_count()), static_cast<unsigned long long>(f.round_count()));
  return kOk;
}

int cmd_verify(const RunArgs& a) {
  const auto truth = smt::io::load_spectrum(a.input, parse_format(a.format));
  if (truth.n() > 12) throw smt::CapacityError("verify supports n <= 12, got n = " + std::to_string(truth.n()));
  const double tau = pick_tau(a.tau, truth);

  smt::PolynomialOracle oracle(truth);
  smt::CountingOracle f(oracle);
  smt::ReconstructOptions options;
  options.tau = tau;
  options.seed = a.seed;
  const auto recovered = smt::reconstruct(smt::parse_algorithm(a.alg), f, a.d, options);

  smt::CountingOracle g(oracle);
  const auto expected = smt::brute_force_learn(g, tau);
  const bool ok = smt::spectra_match(recovered, expected, std::max(tau, 1e-6));
  std::printf("%s: %s (%zu coefficients, %llu queries vs %llu brute force)\n", a.alg.c_str(),
              ok ? "match" : "MISMATCH", recovered.size(), static_cast<unsigned long long>(f.query_count()),
              static_cast<unsigned long long>(g.query_count()));
  return ok ? kOk : kMismatch;
}

int cmd_bench(const std::string& grid_path, const std::string& out) {
  std::ifstream in(grid_path);
  if (!in) throw smt::ValidationError("cannot open " + grid_path);
  const auto grid = smt::read_grid(in);
  const auto records = smt::run_benchmark(grid);
  std::ofstream csv(out);
  if (!csv) throw smt::ValidationError("cannot write " + out);
  smt::write_csv(csv, records);
  int failures = 0;
  for (const auto& r : records) {
    if (!r.exact) {
      ++failures;
      std::fprintf(stderr, "%s n=%zu s=%zu d=%zu seed=%llu: not exact%s%s\n", r.algorithm.c_str(), r.n,
                   r.s_requested, r.d, static_cast<unsigned long long>(r.seed), r.error.empty() ? "" : ": ",
                   r.error.c_str());
    }
  }
  return failures ? kAlgorithm : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse Möbius transform toolkit"};
  app.require_subcommand(1);

  std::size_t n = 0, s = 0, d = 0;
  std::uint64_t seed = 0;
  double wlo = 1.0, whi = 2.0;
  std::string out, transcript, grid;
  RunArgs run;

  auto* gen = app.add_subcommand("gen", "write a synthetic polynomial");
  gen->add_option("--n", n)->required();
  gen->add_option("--s", s)->required();
  gen->add_option("--d", d)->required();
  gen->add_option("--seed", seed)->required();
  gen->add_option("--wlo", wlo);
  gen->add_option("--whi", whi);
  gen->add_option("--out", out)->required();

  auto* rec = app.add_subcommand("reconstruct", "recover the spectrum of a polynomial or hypergraph");
  add_run_options(rec, run);
  rec->add_option("--out", out, "coefficient file")->required();
  rec->add_option("--transcript", transcript, "tab-separated query log");

  auto* ver = app.add_subcommand("verify", "compare against brute force (n <= 12)");
  add_run_options(ver, run);

  auto* bench = app.add_subcommand("bench", "run a benchmark grid");
  bench->add_option("--grid", grid, "one `alg n s d seed` per line")->required();
  bench->add_option("--out", out, "CSV output")->required();

  auto* bound = app.add_subcommand("bound", "print the query lower bound");
  bound->add_option("--n", n)->required();
  bound->add_option("--s", s)->required();
  bound->add_option("--d", d)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kValidation;
  }

  try {
    if (*gen) return cmd_gen(n, s, d, seed, wlo, whi, out);
    if (*rec) return cmd_reconstruct(run, out, transcript);
    if (*ver) return cmd_verify(run);
    if (*bench) return cmd_bench(grid, out);
    if (*bound) {
      std::printf("%s\n", smt::io::format_real(smt::lower_bound(n, s, d)).c_str());
      return kOk;
    }
  } catch (const smt::AlgorithmError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kAlgorithm;
  } catch (const smt::DecodeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kAlgorithm;
  } catch (const smt::InfeasiblePrefixError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kAlgorithm;
  } catch (const smt::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kValidation;
  }
  return kOk;
}
