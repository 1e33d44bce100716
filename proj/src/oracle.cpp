#include "smt/oracle.hpp"

#include <cstdio>
#include <ostream>

#include "smt/error.hpp"

namespace smt {

namespace {

bool contains_all(const BitVector& x, const std::vector<std::uint32_t>& support) {
  for (auto i : support) {
    if (!x.test(i)) return false;
  }
  return true;
}

void require_length(const BitVector& x, std::size_t n) {
  if (x.size() != n) {
    throw DimensionError("query of length " + std::to_string(x.size()) + " on a function of " +
                         std::to_string(n) + " variables");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// SparsePolynomial

SparsePolynomial::SparsePolynomial(std::size_t n, std::optional<std::size_t> degree_bound)
    : n_(n), degree_bound_(degree_bound) {}

void SparsePolynomial::set(const BitVector& k, double value) {
  if (k.size() != n_) {
    throw DimensionError("support of length " + std::to_string(k.size()) +
                         " in a polynomial over " + std::to_string(n_) + " variables");
  }
  if (degree_bound_ && k.count() > *degree_bound_) {
    throw ValidationError("support " + k.to_string() + " exceeds degree bound " +
                          std::to_string(*degree_bound_));
  }
  if (value == 0.0) {
    entries_.erase(k);
  } else {
    entries_[k] = value;
  }
}

void SparsePolynomial::add(const BitVector& k, double value) {
  set(k, coefficient(k) + value);
}

double SparsePolynomial::coefficient(const BitVector& k) const {
  auto it = entries_.find(k);
  return it == entries_.end() ? 0.0 : it->second;
}

std::size_t SparsePolynomial::degree() const {
  std::size_t d = 0;
  for (const auto& [k, v] : entries_) d = std::max(d, k.count());
  return d;
}

std::vector<double> SparsePolynomial::values() const {
  std::vector<double> out;
  out.reserve(entries_.size());
  for (const auto& [k, v] : entries_) out.push_back(v);
  return out;
}

bool SparsePolynomial::is_integral() const {
  for (const auto& [k, v] : entries_) {
    if (v != std::nearbyint(v)) return false;
  }
  return true;
}

double eval_sparse(const SparsePolynomial& p, const BitVector& x) {
  require_length(x, p.n());
  double sum = 0.0;
  for (const auto& [k, v] : p.entries()) {
    if (k.is_subset_of(x)) sum += v;
  }
  return sum;
}

bool spectra_match(const SparsePolynomial& a, const SparsePolynomial& b, double tol) {
  if (a.n() != b.n() || a.size() != b.size()) return false;
  auto ia = a.entries().begin();
  auto ib = b.entries().begin();
  for (; ia != a.entries().end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (std::abs(ia->second - ib->second) > tol) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hypergraph

void Hypergraph::add_edge(BitVector vertices, double weight) {
  if (vertices.size() != n_) {
    throw ValidationError("hyperedge of length " + std::to_string(vertices.size()) +
                          " in a hypergraph on " + std::to_string(n_) + " vertices");
  }
  if (weight == 0.0) throw ValidationError("hyperedge " + vertices.to_string() + " has zero weight");
  for (const auto& e : edges_) {
    if (e.vertices == vertices) {
      throw ValidationError("duplicate hyperedge " + vertices.to_string());
    }
  }
  edges_.push_back({std::move(vertices), weight});
}

SparsePolynomial hypergraph_to_polynomial(const Hypergraph& g) {
  SparsePolynomial p(g.n());
  for (const auto& e : g.edges()) {
    if (p.contains(e.vertices)) throw ValidationError("duplicate hyperedge " + e.vertices.to_string());
    p.set(e.vertices, e.weight);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Oracles

PolynomialOracle::PolynomialOracle(SparsePolynomial p) : poly_(std::move(p)) {
  terms_.reserve(poly_.size());
  for (const auto& [k, v] : poly_.entries()) terms_.emplace_back(k.indices(), v);
}

double PolynomialOracle::eval(const BitVector& x) const {
  require_length(x, poly_.n());
  double sum = 0.0;
  for (const auto& [support, v] : terms_) {
    if (contains_all(x, support)) sum += v;
  }
  return sum;
}

double FunctionOracle::eval(const BitVector& x) const {
  require_length(x, n_);
  return fn_(x);
}

void CountingOracle::check(const BitVector& x) const { require_length(x, inner_.n()); }

double CountingOracle::eval(const BitVector& x) {
  check(x);
  queries_.fetch_add(1);
  return inner_.eval(x);
}

std::vector<double> CountingOracle::batch_eval(std::span<const BitVector> xs) {
  std::vector<double> out;
  if (xs.empty()) return out;
  for (const auto& x : xs) check(x);
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(inner_.eval(x));
  queries_.fetch_add(xs.size());
  rounds_.fetch_add(1);
  return out;
}

double CountingOracle::eval_round(const BitVector& x) {
  return batch_eval(std::span<const BitVector>(&x, 1)).front();
}

std::vector<double> batch_eval(CountingOracle& c, std::span<const BitVector> xs) {
  return c.batch_eval(xs);
}

double residual_eval(CountingOracle& f, const SparsePolynomial& discovered, const BitVector& x) {
  require_length(x, f.n());
  if (discovered.n() != f.n()) throw DimensionError("discovered spectrum has the wrong length");
  const double raw = f.eval_round(x);
  return raw - eval_sparse(discovered, x);
}

// ---------------------------------------------------------------------------
// PeeledCoefficients

void PeeledCoefficients::add(const BitVector& k, double value) {
  if (found_.contains(k)) {
    throw AlgorithmError("coefficient " + k.to_string() + " recovered twice");
  }
  found_.set(k, value);
  if (value != 0.0) terms_.emplace_back(k.indices(), value);
}

double PeeledCoefficients::contained_sum(const BitVector& x) const {
  double sum = 0.0;
  for (const auto& [support, v] : terms_) {
    if (contains_all(x, support)) sum += v;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Transcript

void Transcript::record(const Label& label, const BitVector& x, double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  *out_ << label.to_string() << '\t' << x.to_string() << '\t' << buf << '\n';
}

}  // namespace smt
