#pragma once

// Additive evaluation oracles f(x) = Σ_{k ≤ x} F(k), query/round accounting,
// and the residual function used for peeling.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "smt/core.hpp"

namespace smt {

/// Default zero-test tolerance for real-valued coefficients. Integer mode uses 0.
inline constexpr double kDefaultTau = 1e-9;

inline bool is_zero(double v, double tau) { return std::abs(v) <= tau; }

// Möbius spectrum: support k ↦ nonzero coefficient F(k).
class SparsePolynomial {
 public:
  using Map = std::map<BitVector, double>;

  SparsePolynomial() = default;
  explicit SparsePolynomial(std::size_t n, std::optional<std::size_t> degree_bound = std::nullopt);

  std::size_t n() const noexcept { return n_; }
  std::optional<std::size_t> degree_bound() const noexcept { return degree_bound_; }

  /// Inserts or overwrites; a value of exactly zero erases the entry.
  void set(const BitVector& k, double value);
  /// Adds to an existing coefficient (or inserts), erasing on exact cancellation.
  void add(const BitVector& k, double value);
  double coefficient(const BitVector& k) const;
  bool contains(const BitVector& k) const { return entries_.contains(k); }

  std::size_t size() const noexcept { return entries_.size(); }
  bool empty() const noexcept { return entries_.empty(); }
  /// Largest support size, 0 for the empty polynomial.
  std::size_t degree() const;
  const Map& entries() const noexcept { return entries_; }
  std::vector<double> values() const;

  /// True when all coefficients are integers (the polynomial can run with τ = 0).
  bool is_integral() const;

  friend bool operator==(const SparsePolynomial&, const SparsePolynomial&) = default;

 private:
  std::size_t n_ = 0;
  std::optional<std::size_t> degree_bound_;
  Map entries_;
};

/// Σ_{k ≤ x} F(k).
double eval_sparse(const SparsePolynomial& p, const BitVector& x);

/// Supports equal and every value within `tol`.
bool spectra_match(const SparsePolynomial& a, const SparsePolynomial& b, double tol);

struct Hyperedge {
  BitVector vertices;
  double weight = 1.0;
};

class Hypergraph {
 public:
  explicit Hypergraph(std::size_t n) : n_(n) {}

  std::size_t n() const noexcept { return n_; }
  /// Throws ValidationError on duplicate vertex sets, zero weights or wrong length.
  void add_edge(BitVector vertices, double weight = 1.0);
  const std::vector<Hyperedge>& edges() const noexcept { return edges_; }

 private:
  std::size_t n_;
  std::vector<Hyperedge> edges_;
};

/// F(e) = weight(e); evaluating the result counts (or sums the weights of)
/// the edges induced by the queried vertex subset.
SparsePolynomial hypergraph_to_polynomial(const Hypergraph& g);

class QueryOracle {
 public:
  virtual ~QueryOracle() = default;
  virtual std::size_t n() const = 0;
  virtual double eval(const BitVector& x) const = 0;
};

class PolynomialOracle final : public QueryOracle {
 public:
  explicit PolynomialOracle(SparsePolynomial p);
  std::size_t n() const override { return poly_.n(); }
  double eval(const BitVector& x) const override;
  const SparsePolynomial& polynomial() const noexcept { return poly_; }

 private:
  SparsePolynomial poly_;
  // Support lists make evaluation O(s·d) instead of O(s·n/64).
  std::vector<std::pair<std::vector<std::uint32_t>, double>> terms_;
};

class FunctionOracle final : public QueryOracle {
 public:
  FunctionOracle(std::size_t n, std::function<double(const BitVector&)> fn)
      : n_(n), fn_(std::move(fn)) {}
  std::size_t n() const override { return n_; }
  double eval(const BitVector& x) const override;

 private:
  std::size_t n_;
  std::function<double(const BitVector&)> fn_;
};

// Wraps an oracle and counts queries and adaptive rounds. Reconstruction
// algorithms route every evaluation through one of these.
class CountingOracle {
 public:
  explicit CountingOracle(const QueryOracle& inner) : inner_(inner) {}
  CountingOracle(const CountingOracle&) = delete;
  CountingOracle& operator=(const CountingOracle&) = delete;

  std::size_t n() const { return inner_.n(); }

  /// One query, no round boundary.
  double eval(const BitVector& x);
  /// A round of mutually independent queries: queries += |xs|, rounds += 1.
  /// An empty batch changes nothing.
  std::vector<double> batch_eval(std::span<const BitVector> xs);
  /// A round consisting of a single query.
  double eval_round(const BitVector& x);

  std::uint64_t query_count() const noexcept { return queries_.load(); }
  std::uint64_t round_count() const noexcept { return rounds_.load(); }

 private:
  void check(const BitVector& x) const;

  const QueryOracle& inner_;
  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::uint64_t> rounds_{0};
};

std::vector<double> batch_eval(CountingOracle& c, std::span<const BitVector> xs);

/// f(x) − Σ_{k ≤ x} T(k); the f(x) query is counted as its own round.
double residual_eval(CountingOracle& f, const SparsePolynomial& discovered, const BitVector& x);

// Coefficients recovered so far, with support lists for O(s·d) residuals.
class PeeledCoefficients {
 public:
  explicit PeeledCoefficients(std::size_t n) : found_(n) {}

  /// Throws AlgorithmError if k was already recovered.
  void add(const BitVector& k, double value);
  /// Σ_{k ≤ x} T(k).
  double contained_sum(const BitVector& x) const;
  const SparsePolynomial& polynomial() const noexcept { return found_; }
  std::size_t size() const noexcept { return found_.size(); }

 private:
  SparsePolynomial found_;
  std::vector<std::pair<std::vector<std::uint32_t>, double>> terms_;
};

// Query log, one line per query: label, query vector, oracle response,
// separated by tabs. Values are written with 17 significant digits.
class Transcript {
 public:
  explicit Transcript(std::ostream& out) : out_(&out) {}
  void record(const Label& label, const BitVector& x, double value);

 private:
  std::ostream* out_;
};

}  // namespace smt
