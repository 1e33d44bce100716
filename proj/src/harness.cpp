#include "smt/harness.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "smt/error.hpp"
#include "smt/fasmt.hpp"
#include "smt/grouptest.hpp"
#include "smt/hybrid.hpp"
#include "smt/io.hpp"
#include "smt/pasmt.hpp"
#include "smt/random.hpp"

namespace smt {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    // r·(n−i) is divisible by i+1 since r = C(n, i).
    r = r * (n - i) / (i + 1);
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw ParameterError("C(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(r);
}

BitVector unrank_subset(std::size_t n, std::size_t c, std::uint64_t rank) {
  if (c > n) throw ParameterError("subset size exceeds n");
  if (rank >= binomial(n, c)) throw ParameterError("subset rank out of range");
  BitVector out(n);
  std::size_t next = 0;
  for (std::size_t j = 0; j < c; ++j) {
    for (;; ++next) {
      const auto block = binomial(n - 1 - next, c - 1 - j);
      if (rank < block) break;
      rank -= block;
    }
    out.set(next++);
  }
  return out;
}

SparsePolynomial generate_synthetic(std::size_t n, std::size_t s, std::size_t d, std::uint64_t seed,
                                    double weight_lo, double weight_hi) {
  if (n == 0 || d < 1 || d > n) {
    throw ParameterError("generator needs 1 <= d <= n, got n = " + std::to_string(n) + ", d = " + std::to_string(d));
  }
  if (!(weight_lo > 0) || !(weight_hi >= weight_lo) || !std::isfinite(weight_hi)) {
    throw ParameterError("weight interval must satisfy 0 < lo <= hi");
  }
  for (std::size_t c = 1; c <= d; ++c) binomial(n, c);

  Rng rng(seed);
  std::vector<BitVector> supports;
  SparsePolynomial p(n);
  for (std::size_t i = 0; i < s; ++i) {
    const std::size_t c = 1 + rng.uniform_index(d);
    auto k = unrank_subset(n, c, rng.uniform_index(binomial(n, c)));
    if (p.contains(k)) continue;
    p.set(k, 1.0);
    supports.push_back(std::move(k));
  }
  for (const auto& k : supports) p.set(k, rng.uniform_real(weight_lo, weight_hi));
  return p;
}

namespace {

void require_bound_params(std::size_t n, std::size_t s, std::size_t d) {
  if (s < 2 || d < 1 || n <= d) {
    throw ParameterError("bound needs s >= 2 and n > d >= 1, got n = " + std::to_string(n) + ", s = " +
                         std::to_string(s) + ", d = " + std::to_string(d));
  }
}

}  // namespace

double lower_bound(std::size_t n, std::size_t s, std::size_t d) {
  require_bound_params(n, s, d);
  const double sd = static_cast<double>(s) * static_cast<double>(d);
  return sd * std::log2(static_cast<double>(n) / static_cast<double>(d)) /
         (2.0 * std::log2(static_cast<double>(s)) + 1.0);
}

double optimality_ratio(double q, std::size_t n, std::size_t s, std::size_t d) {
  require_bound_params(n, s, d);
  if (!(q >= 0)) throw ParameterError("query count must be nonnegative");
  const double sd = static_cast<double>(s) * static_cast<double>(d);
  return q * std::log2(static_cast<double>(s)) / (sd * std::log2(static_cast<double>(n) / static_cast<double>(d)));
}

std::string_view algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Fasmt:
      return "fasmt";
    case Algorithm::Pasmt:
      return "pasmt";
    case Algorithm::Hybrid:
      return "hybrid";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  if (name == "fasmt") return Algorithm::Fasmt;
  if (name == "pasmt") return Algorithm::Pasmt;
  if (name == "hybrid") return Algorithm::Hybrid;
  throw ValidationError("unknown algorithm '" + std::string(name) + "' (expected fasmt, pasmt or hybrid)");
}

SparsePolynomial reconstruct(Algorithm algorithm, CountingOracle& f, std::size_t d, const ReconstructOptions& options) {
  switch (algorithm) {
    case Algorithm::Fasmt: {
      FasmtOptions o;
      o.tau = options.tau;
      o.transcript = options.transcript;
      return fasmt_run(f, d, o);
    }
    case Algorithm::Pasmt: {
      PasmtOptions o;
      o.tau = options.tau;
      o.transcript = options.transcript;
      if (options.design) return pasmt_run(f, *options.design, d, o);
      return pasmt_run(f, default_disjunct_design(f.n(), d), d, o);
    }
    case Algorithm::Hybrid: {
      HybridOptions o;
      o.tau = options.tau;
      o.transcript = options.transcript;
      return hybrid_run(f, d, options.seed, o);
    }
  }
  throw ParameterError("unknown algorithm");
}

std::vector<BenchRecord> run_benchmark(std::span<const BenchCell> grid, const BenchOptions& options) {
  std::map<std::pair<std::size_t, std::size_t>, TestMatrix> designs;
  std::vector<BenchRecord> out;
  out.reserve(grid.size());
  for (const auto& cell : grid) {
    BenchRecord r;
    r.algorithm = std::string(algorithm_name(cell.algorithm));
    r.n = cell.n;
    r.s_requested = cell.s;
    r.d = cell.d;
    r.seed = cell.seed;
    r.lower_bound = std::numeric_limits<double>::quiet_NaN();
    r.optimality_ratio = std::numeric_limits<double>::quiet_NaN();
    try {
      const auto truth = generate_synthetic(cell.n, cell.s, cell.d, cell.seed, options.weight_lo, options.weight_hi);
      r.s_actual = truth.size();
      PolynomialOracle oracle(truth);
      CountingOracle f(oracle);
      ReconstructOptions ro;
      ro.tau = options.tau;
      ro.seed = cell.seed;
      if (cell.algorithm == Algorithm::Pasmt) {
        auto key = std::make_pair(cell.n, cell.d);
        auto it = designs.find(key);
        if (it == designs.end()) it = designs.emplace(key, default_disjunct_design(cell.n, cell.d)).first;
        ro.design = &it->second;
      }
      const auto start = std::chrono::steady_clock::now();
      const auto recovered = reconstruct(cell.algorithm, f, cell.d, ro);
      const auto stop = std::chrono::steady_clock::now();
      r.runtime_ms = std::chrono::duration<double, std::milli>(stop - start).count();
      r.queries = f.query_count();
      r.rounds = f.round_count();
      r.exact = spectra_match(recovered, truth, std::max(options.tau, 1e-9));
    } catch (const std::exception& e) {
      r.exact = false;
      r.error = e.what();
    }
    if (r.s_actual >= 2 && r.n > r.d && r.d >= 1) {
      r.lower_bound = lower_bound(r.n, r.s_actual, r.d);
      r.optimality_ratio = optimality_ratio(static_cast<double>(r.queries), r.n, r.s_actual, r.d);
    }
    out.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  return io::format_real(v);
}

std::vector<std::string> split_commas(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_field(const std::string& text, std::size_t line, const char* what) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ValidationError("line " + std::to_string(line) + ": bad " + what + " '" + text + "'");
  }
  return v;
}

double parse_double_field(const std::string& text, std::size_t line, const char* what) {
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  return parse_field<double>(text, line, what);
}

}  // namespace

std::string csv_row(const BenchRecord& r) {
  std::string s;
  s += r.algorithm;
  for (auto v : {r.n, r.s_requested, r.s_actual, r.d}) s += ',' + std::to_string(v);
  s += ',' + std::to_string(r.seed);
  s += ',' + std::to_string(r.queries);
  s += ',' + std::to_string(r.rounds);
  s += ',' + format_double(r.runtime_ms);
  s += r.exact ? ",true" : ",false";
  s += ',' + format_double(r.lower_bound);
  s += ',' + format_double(r.optimality_ratio);
  return s;
}

void write_csv(std::ostream& out, std::span<const BenchRecord> records) {
  out << "# prng=" << Rng::kAlgorithm << '\n' << kCsvHeader << '\n';
  for (const auto& r : records) out << csv_row(r) << '\n';
}

std::vector<BenchRecord> read_csv(std::istream& in) {
  std::vector<BenchRecord> out;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.starts_with('#')) continue;
    if (!header) {
      if (line != kCsvHeader) throw ValidationError("line " + std::to_string(number) + ": unexpected CSV header");
      header = true;
      continue;
    }
    const auto f = split_commas(line);
    if (f.size() != 12) {
      throw ValidationError("line " + std::to_string(number) + ": expected 12 fields, found " +
                            std::to_string(f.size()));
    }
    BenchRecord r;
    r.algorithm = f[0];
    r.n = parse_field<std::size_t>(f[1], number, "n");
    r.s_requested = parse_field<std::size_t>(f[2], number, "s_requested");
    r.s_actual = parse_field<std::size_t>(f[3], number, "s_actual");
    r.d = parse_field<std::size_t>(f[4], number, "d");
    r.seed = parse_field<std::uint64_t>(f[5], number, "seed");
    r.queries = parse_field<std::uint64_t>(f[6], number, "queries");
    r.rounds = parse_field<std::uint64_t>(f[7], number, "rounds");
    r.runtime_ms = parse_double_field(f[8], number, "runtime_ms");
    if (f[9] != "true" && f[9] != "false") {
      throw ValidationError("line " + std::to_string(number) + ": exact must be true or false");
    }
    r.exact = f[9] == "true";
    r.lower_bound = parse_double_field(f[10], number, "lower_bound");
    r.optimality_ratio = parse_double_field(f[11], number, "optimality_ratio");
    out.push_back(std::move(r));
  }
  if (!header) throw ValidationError("missing CSV header");
  return out;
}

std::vector<BenchCell> read_grid(std::istream& in) {
  std::vector<BenchCell> cells;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream ss(line);
    std::vector<std::string> tok;
    for (std::string t; ss >> t;) tok.push_back(t);
    if (tok.empty() || tok.front().starts_with('#')) continue;
    if (tok.size() != 5) {
      throw ValidationError("line " + std::to_string(number) + ": expected `alg n s d seed`");
    }
    BenchCell c;
    try {
      c.algorithm = parse_algorithm(tok[0]);
    } catch (const ValidationError& e) {
      throw ValidationError("line " + std::to_string(number) + ": " + e.what());
    }
    c.n = parse_field<std::size_t>(tok[1], number, "n");
    c.s = parse_field<std::size_t>(tok[2], number, "s");
    c.d = parse_field<std::size_t>(tok[3], number, "d");
    c.seed = parse_field<std::uint64_t>(tok[4], number, "seed");
    cells.push_back(c);
  }
  return cells;
}

}  // namespace smt
