#pragma once

// Synthetic instances, the information-theoretic lower bound, and seeded
// benchmark sweeps with CSV output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "smt/core.hpp"
#include "smt/oracle.hpp"

namespace smt {

/// C(n, k); throws ParameterError if it does not fit in 64 bits.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// The rank-th c-subset of {0..n-1} in lex order of sorted index lists.
BitVector unrank_subset(std::size_t n, std::size_t c, std::uint64_t rank);

/// s supports with cardinality uniform on 1..d and uniform within that
/// cardinality, duplicates dropped, weights uniform on [lo, hi] in order of
/// first appearance.
SparsePolynomial generate_synthetic(std::size_t n, std::size_t s, std::size_t d, std::uint64_t seed,
                                    double weight_lo = 1.0, double weight_hi = 2.0);

/// s·d·log₂(n/d) / (2·log₂ s + 1). Needs s ≥ 2 and n > d ≥ 1.
double lower_bound(std::size_t n, std::size_t s, std::size_t d);

/// q·log₂ s / (s·d·log₂(n/d)). Needs s ≥ 2 and n > d ≥ 1.
double optimality_ratio(double q, std::size_t n, std::size_t s, std::size_t d);

enum class Algorithm { Fasmt, Pasmt, Hybrid };

std::string_view algorithm_name(Algorithm a);
/// Accepts "fasmt", "pasmt", "hybrid"; throws ValidationError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct ReconstructOptions {
  double tau = kDefaultTau;
  /// Seed of the hybrid's random list design.
  std::uint64_t seed = 0;
  Transcript* transcript = nullptr;
  /// PASMT design; default_disjunct_design(n, d) when absent.
  const TestMatrix* design = nullptr;
};

/// Runs one algorithm against f with degree bound d.
SparsePolynomial reconstruct(Algorithm algorithm, CountingOracle& f, std::size_t d,
                             const ReconstructOptions& options = {});

struct BenchCell {
  Algorithm algorithm = Algorithm::Fasmt;
  std::size_t n = 0;
  std::size_t s = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
};

struct BenchRecord {
  std::string algorithm;
  std::size_t n = 0;
  std::size_t s_requested = 0;
  std::size_t s_actual = 0;
  std::size_t d = 0;
  std::uint64_t seed = 0;
  std::uint64_t queries = 0;
  std::uint64_t rounds = 0;
  double runtime_ms = 0.0;
  bool exact = false;
  /// NaN when undefined (s_actual < 2 or n ≤ d).
  double lower_bound = 0.0;
  double optimality_ratio = 0.0;
  /// Failure message of the cell; not part of the CSV.
  std::string error;
};

struct BenchOptions {
  double tau = kDefaultTau;
  double weight_lo = 1.0;
  double weight_hi = 2.0;
};

/// Runs every cell on its own generated instance. Errors inside a cell are
/// recorded with exact = false.
std::vector<BenchRecord> run_benchmark(std::span<const BenchCell> grid, const BenchOptions& options = {});

inline constexpr std::string_view kCsvHeader =
    "algorithm,n,s_requested,s_actual,d,seed,queries,rounds,runtime_ms,exact,lower_bound,optimality_ratio";

void write_csv(std::ostream& out, std::span<const BenchRecord> records);
/// Parses what write_csv produces, including the `# prng=` line.
std::vector<BenchRecord> read_csv(std::istream& in);
/// The CSV row of a record without the trailing newline.
std::string csv_row(const BenchRecord& r);

/// Grid file: one `alg n s d seed` cell per line, '#' comments allowed.
std::vector<BenchCell> read_grid(std::istream& in);

}  // namespace smt
