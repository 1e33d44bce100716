#pragma once

// Text formats. All readers reject malformed input with a ValidationError
// whose message starts with "line N:".
//
//   polynomial   line 1 `n s`, then s lines `value bitstring`
//   hypergraph   line 1 `n m`, then m lines `w v1 v2 ... vk` (1-based ids)
//   test matrix  line 1 `n b`, then n lines of b-character row strings

#include <filesystem>
#include <iosfwd>

#include "smt/core.hpp"
#include "smt/oracle.hpp"

namespace smt::io {

SparsePolynomial read_polynomial(std::istream& in);
void write_polynomial(std::ostream& out, const SparsePolynomial& p);

Hypergraph read_hypergraph(std::istream& in);
void write_hypergraph(std::ostream& out, const Hypergraph& g);

TestMatrix read_test_matrix(std::istream& in);
void write_test_matrix(std::ostream& out, const TestMatrix& h);

enum class InputFormat { Auto, Polynomial, Hypergraph };

/// Loads either format into a spectrum. Auto treats the file as a polynomial
/// when every data line is `value bitstring` with a length-n bit string.
SparsePolynomial load_spectrum(const std::filesystem::path& path,
                               InputFormat format = InputFormat::Auto);

void save_polynomial(const std::filesystem::path& path, const SparsePolynomial& p);

/// Shortest decimal text that reads back to the same double.
std::string format_real(double v);

}  // namespace smt::io
