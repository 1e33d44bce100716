#pragma once

// Bit-vector algebra over the Boolean semiring.
//
// Coordinates are numbered 1..n in text and error messages and 0..n-1 in the
// C++ API. Text form always writes coordinate 1 first, so "0011" with n = 4
// has coordinates 3 and 4 set.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace smt {

class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n);

  static BitVector ones(std::size_t n);
  /// Parses a '0'/'1' string, coordinate 1 first.
  static BitVector from_string(std::string_view text);
  /// Builds the indicator of a set of 0-based coordinates.
  static BitVector from_indices(std::size_t n, std::span<const std::uint32_t> indices);

  std::size_t size() const noexcept { return size_; }
  bool test(std::size_t i) const;
  void set(std::size_t i, bool value = true);

  std::size_t count() const noexcept;
  bool any() const noexcept;
  bool none() const noexcept { return !any(); }
  std::vector<std::uint32_t> indices() const;

  BitVector& operator|=(const BitVector& other);
  BitVector& operator&=(const BitVector& other);
  BitVector operator~() const;
  friend BitVector operator|(BitVector a, const BitVector& b) { return a |= b; }
  friend BitVector operator&(BitVector a, const BitVector& b) { return a &= b; }

  /// Boolean inner product aᵀb: true iff the supports intersect.
  bool intersects(const BitVector& other) const;
  /// Componentwise a ≤ b.
  bool is_subset_of(const BitVector& other) const;

  std::string to_string() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const BitVector&, const BitVector&) = default;
  /// Orders by length, then by the text form ('0' < '1', coordinate 1 first).
  friend std::strong_ordering operator<=>(const BitVector& a, const BitVector& b);

 private:
  void require_same_size(const BitVector& other, const char* what) const;
  void mask_tail() noexcept;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

// Outcome string naming a bin. The empty label is the root.
class Label {
 public:
  static constexpr std::size_t kMaxLength = std::size_t{1} << 16;

  Label() = default;
  static Label from_string(std::string_view text);
  static Label from_bits(const BitVector& bits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool operator[](std::size_t i) const;

  void push_back(bool bit);
  Label child(bool bit) const;
  /// Outcomes from position `offset` onwards.
  Label suffix(std::size_t offset) const;
  bool is_prefix_of(const Label& other) const;

  /// Componentwise ≤ on labels of equal length.
  bool leq(const Label& other) const;

  BitVector to_bits() const;
  std::string to_string() const;
  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const Label&, const Label&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

enum class Ordering { Less, Equal, Greater };

/// Lexicographic order: a proper prefix precedes its extensions, otherwise the
/// first differing outcome decides.
Ordering lex_compare(const Label& a, const Label& b);

struct LexLess {
  bool operator()(const Label& a, const Label& b) const {
    return lex_compare(a, b) == Ordering::Less;
  }
};

/// Componentwise a ≤ b; throws DimensionError on length mismatch.
bool boolean_leq(const BitVector& a, const BitVector& b);

// n×b binary design, stored column-major. Column t is the test vector h_t.
class TestMatrix {
 public:
  TestMatrix() = default;
  explicit TestMatrix(std::size_t n) : rows_(n) {}
  TestMatrix(std::size_t n, std::vector<BitVector> columns);

  static TestMatrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return columns_.size(); }

  const BitVector& column(std::size_t t) const;
  const std::vector<BitVector>& columns() const noexcept { return columns_; }
  void add_column(BitVector h);

  /// First t columns.
  TestMatrix prefix(std::size_t t) const;
  /// Row i as a length-b vector (the syndrome of item i alone).
  BitVector row(std::size_t i) const;
  std::vector<BitVector> row_vectors() const;

  friend bool operator==(const TestMatrix&, const TestMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::vector<BitVector> columns_;
};

/// H·v (length n) when `transpose` is false, Hᵀv (length b) otherwise, with
/// OR as addition and AND as multiplication.
BitVector semiring_apply(const TestMatrix& h, const BitVector& v, bool transpose);

/// Syndrome Hᵀk as a label.
Label syndrome(const TestMatrix& h, const BitVector& k);

/// x = ¬(H·¬ℓ): the all-ones vector minus every column whose outcome is 0.
BitVector build_query_vector(const TestMatrix& h, const Label& label);

}  // namespace smt

template <>
struct std::hash<smt::BitVector> {
  std::size_t operator()(const smt::BitVector& v) const noexcept;
};
