#include "smt/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "smt/error.hpp"

namespace smt::io {

namespace {

struct Line {
  std::size_t number = 0;
  std::vector<std::string> tokens;
};

// Non-blank, non-comment lines split on whitespace.
std::vector<Line> tokenize(std::istream& in) {
  std::vector<Line> lines;
  std::string text;
  std::size_t number = 0;
  while (std::getline(in, text)) {
    ++number;
    std::istringstream ss(text);
    Line line{number, {}};
    std::string tok;
    while (ss >> tok) line.tokens.push_back(tok);
    if (line.tokens.empty() || line.tokens.front().starts_with('#')) continue;
    lines.push_back(std::move(line));
  }
  return lines;
}

[[noreturn]] void fail(std::size_t line, const std::string& msg) {
  throw ValidationError("line " + std::to_string(line) + ": " + msg);
}

std::size_t parse_count(const std::string& tok, std::size_t line, const char* what) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    fail(line, std::string("expected a nonnegative integer for ") + what + ", got '" + tok + "'");
  }
  return v;
}

double parse_real(const std::string& tok, std::size_t line) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(v)) {
    fail(line, "expected a real number, got '" + tok + "'");
  }
  return v;
}

std::pair<std::size_t, std::size_t> parse_header(const std::vector<Line>& lines, const char* second) {
  if (lines.empty()) throw ValidationError("line 1: empty input");
  const auto& h = lines.front();
  if (h.tokens.size() != 2) fail(h.number, std::string("header must be `n ") + second + "`");
  const auto n = parse_count(h.tokens[0], h.number, "n");
  const auto m = parse_count(h.tokens[1], h.number, second);
  if (n == 0) fail(h.number, "n must be positive");
  if (lines.size() - 1 != m) {
    const std::size_t where = lines.size() - 1 < m ? lines.back().number + 1 : lines[m + 1].number;
    fail(where, "header announces " + std::to_string(m) + " entries, found " +
                    std::to_string(lines.size() - 1));
  }
  return {n, m};
}

BitVector parse_bits(const std::string& tok, std::size_t n, std::size_t line) {
  if (tok.size() != n) {
    fail(line, "bit string of length " + std::to_string(tok.size()) + ", expected " +
                   std::to_string(n));
  }
  try {
    return BitVector::from_string(tok);
  } catch (const ValidationError& e) {
    fail(line, e.what());
  }
}

bool looks_like_polynomial(const std::vector<Line>& lines) {
  if (lines.empty() || lines.front().tokens.size() != 2) return false;
  std::size_t n = 0;
  const auto& t0 = lines.front().tokens[0];
  if (std::from_chars(t0.data(), t0.data() + t0.size(), n).ec != std::errc()) return false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& toks = lines[i].tokens;
    if (toks.size() != 2 || toks[1].size() != n) return false;
    if (toks[1].find_first_not_of("01") != std::string::npos) return false;
  }
  return true;
}

SparsePolynomial polynomial_from_lines(const std::vector<Line>& lines) {
  const auto [n, s] = parse_header(lines, "s");
  SparsePolynomial p(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens.size() != 2) fail(l.number, "expected `value bitstring`");
    const double v = parse_real(l.tokens[0], l.number);
    auto k = parse_bits(l.tokens[1], n, l.number);
    if (v == 0.0) fail(l.number, "coefficient is zero");
    if (p.contains(k)) fail(l.number, "duplicate support " + l.tokens[1]);
    p.set(k, v);
  }
  return p;
}

Hypergraph hypergraph_from_lines(const std::vector<Line>& lines) {
  const auto [n, m] = parse_header(lines, "m");
  Hypergraph g(n);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& l = lines[i];
    if (l.tokens.size() < 2) fail(l.number, "expected `w v1 ... vk` with at least one vertex");
    const double w = parse_real(l.tokens[0], l.number);
    BitVector e(n);
    for (std::size_t j = 1; j < l.tokens.size(); ++j) {
      const auto v = parse_count(l.tokens[j], l.number, "vertex id");
      if (v < 1 || v > n) fail(l.number, "vertex id " + l.tokens[j] + " outside 1.." + std::to_string(n));
      if (e.test(v - 1)) fail(l.number, "vertex " + l.tokens[j] + " repeated");
      e.set(v - 1);
    }
    try {
      g.add_edge(std::move(e), w);
    } catch (const ValidationError& err) {
      fail(l.number, err.what());
    }
  }
  return g;
}

}  // namespace

std::string format_real(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

SparsePolynomial read_polynomial(std::istream& in) { return polynomial_from_lines(tokenize(in)); }

void write_polynomial(std::ostream& out, const SparsePolynomial& p) {
  out << p.n() << ' ' << p.size() << '\n';
  for (const auto& [k, v] : p.entries()) out << format_real(v) << ' ' << k.to_string() << '\n';
}

Hypergraph read_hypergraph(std::istream& in) { return hypergraph_from_lines(tokenize(in)); }

void write_hypergraph(std::ostream& out, const Hypergraph& g) {
  out << g.n() << ' ' << g.edges().size() << '\n';
  for (const auto& e : g.edges()) {
    out << format_real(e.weight);
    for (auto v : e.vertices.indices()) out << ' ' << v + 1;
    out << '\n';
  }
}

TestMatrix read_test_matrix(std::istream& in) {
  const auto lines = tokenize(in);
  if (lines.empty()) throw ValidationError("line 1: empty input");
  const auto& h = lines.front();
  if (h.tokens.size() != 2) fail(h.number, "header must be `n b`");
  const auto n = parse_count(h.tokens[0], h.number, "n");
  const auto b = parse_count(h.tokens[1], h.number, "b");
  if (lines.size() - 1 != n) {
    fail(lines.back().number, "expected " + std::to_string(n) + " rows, found " +
                                  std::to_string(lines.size() - 1));
  }
  std::vector<BitVector> cols(b, BitVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    const auto& l = lines[i + 1];
    if (l.tokens.size() != 1) fail(l.number, "expected one row string");
    const auto row = parse_bits(l.tokens[0], b, l.number);
    for (auto t : row.indices()) cols[t].set(i);
  }
  return TestMatrix(n, std::move(cols));
}

void write_test_matrix(std::ostream& out, const TestMatrix& h) {
  out << h.rows() << ' ' << h.cols() << '\n';
  for (const auto& r : h.row_vectors()) out << r.to_string() << '\n';
}

SparsePolynomial load_spectrum(const std::filesystem::path& path, InputFormat format) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  const auto lines = tokenize(in);
  if (format == InputFormat::Auto) {
    format = looks_like_polynomial(lines) ? InputFormat::Polynomial : InputFormat::Hypergraph;
  }
  if (format == InputFormat::Polynomial) return polynomial_from_lines(lines);
  return hypergraph_to_polynomial(hypergraph_from_lines(lines));
}

void save_polynomial(const std::filesystem::path& path, const SparsePolynomial& p) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  write_polynomial(out, p);
}

}  // namespace smt::io
