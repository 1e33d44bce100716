#include "smt/core.hpp"

#include <algorithm>
#include <bit>

#include "smt/error.hpp"

namespace smt {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

std::uint64_t tail_mask(std::size_t bits) {
  const std::size_t r = bits % kWordBits;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

// Index of the first position < len where the two packed strings differ, or
// len when they agree on the whole range.
std::size_t first_difference(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b,
                             std::size_t len) {
  const std::size_t words = word_count(len);
  for (std::size_t w = 0; w < words; ++w) {
    std::uint64_t diff = a[w] ^ b[w];
    if (w + 1 == words) diff &= tail_mask(len);
    if (diff != 0) return w * kWordBits + static_cast<std::size_t>(std::countr_zero(diff));
  }
  return len;
}

}  // namespace

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t n) : size_(n), words_(word_count(n), 0) {}

BitVector BitVector::ones(std::size_t n) {
  BitVector v(n);
  std::fill(v.words_.begin(), v.words_.end(), ~std::uint64_t{0});
  v.mask_tail();
  return v;
}

BitVector BitVector::from_string(std::string_view text) {
  BitVector v(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1') {
      v.set(i);
    } else if (text[i] != '0') {
      throw ValidationError("bit string has invalid character '" + std::string(1, text[i]) +
                            "' at coordinate " + std::to_string(i + 1));
    }
  }
  return v;
}

BitVector BitVector::from_indices(std::size_t n, std::span<const std::uint32_t> indices) {
  BitVector v(n);
  for (auto i : indices) v.set(i);
  return v;
}

bool BitVector::test(std::size_t i) const {
  if (i >= size_) {
    throw DimensionError("coordinate " + std::to_string(i + 1) + " out of range 1.." +
                         std::to_string(size_));
  }
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
  if (i >= size_) {
    throw DimensionError("coordinate " + std::to_string(i + 1) + " out of range 1.." +
                         std::to_string(size_));
  }
  const std::uint64_t m = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= m;
  } else {
    words_[i / kWordBits] &= ~m;
  }
}

std::size_t BitVector::count() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVector::any() const noexcept {
  return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::vector<std::uint32_t> BitVector::indices() const {
  std::vector<std::uint32_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(static_cast<std::uint32_t>(w * kWordBits + std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

BitVector& BitVector::operator|=(const BitVector& other) {
  require_same_size(other, "OR");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  return *this;
}

BitVector& BitVector::operator&=(const BitVector& other) {
  require_same_size(other, "AND");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  return *this;
}

BitVector BitVector::operator~() const {
  BitVector out(*this);
  for (auto& w : out.words_) w = ~w;
  out.mask_tail();
  return out;
}

bool BitVector::intersects(const BitVector& other) const {
  require_same_size(other, "inner product");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & other.words_[w]) != 0) return true;
  }
  return false;
}

bool BitVector::is_subset_of(const BitVector& other) const {
  require_same_size(other, "comparison");
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

std::string BitVector::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((words_[i / kWordBits] >> (i % kWordBits)) & 1U) s[i] = '1';
  }
  return s;
}

std::strong_ordering operator<=>(const BitVector& a, const BitVector& b) {
  if (a.size_ != b.size_) return a.size_ <=> b.size_;
  const std::size_t i = first_difference(a.words_, b.words_, a.size_);
  if (i == a.size_) return std::strong_ordering::equal;
  return a.test(i) ? std::strong_ordering::greater : std::strong_ordering::less;
}

void BitVector::require_same_size(const BitVector& other, const char* what) const {
  if (size_ != other.size_) {
    throw DimensionError(std::string("bit vector ") + what + " on lengths " +
                         std::to_string(size_) + " and " + std::to_string(other.size_));
  }
}

void BitVector::mask_tail() noexcept {
  if (!words_.empty()) words_.back() &= tail_mask(size_);
}

bool boolean_leq(const BitVector& a, const BitVector& b) { return a.is_subset_of(b); }

// ---------------------------------------------------------------------------
// Label

Label Label::from_string(std::string_view text) {
  Label l;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '0' && text[i] != '1') {
      throw ValidationError("label has invalid character at position " + std::to_string(i + 1));
    }
    l.push_back(text[i] == '1');
  }
  return l;
}

Label Label::from_bits(const BitVector& bits) {
  if (bits.size() > kMaxLength) throw CapacityError("label longer than 65536 outcomes");
  Label l;
  l.size_ = bits.size();
  l.words_.assign(bits.words().begin(), bits.words().end());
  return l;
}

bool Label::operator[](std::size_t i) const {
  if (i >= size_) throw DimensionError("label position out of range");
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void Label::push_back(bool bit) {
  if (size_ == kMaxLength) throw CapacityError("label longer than 65536 outcomes");
  if (size_ % kWordBits == 0) words_.push_back(0);
  if (bit) words_.back() |= std::uint64_t{1} << (size_ % kWordBits);
  ++size_;
}

Label Label::child(bool bit) const {
  Label c(*this);
  c.push_back(bit);
  return c;
}

Label Label::suffix(std::size_t offset) const {
  Label out;
  for (std::size_t i = offset; i < size_; ++i) out.push_back((*this)[i]);
  return out;
}

bool Label::is_prefix_of(const Label& other) const {
  return size_ <= other.size_ && first_difference(words_, other.words_, size_) == size_;
}

bool Label::leq(const Label& other) const {
  if (size_ != other.size_) {
    throw DimensionError("componentwise label comparison on lengths " + std::to_string(size_) +
                         " and " + std::to_string(other.size_));
  }
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if ((words_[w] & ~other.words_[w]) != 0) return false;
  }
  return true;
}

BitVector Label::to_bits() const {
  BitVector v(size_);
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) v.set(i);
  }
  return v;
}

std::string Label::to_string() const {
  std::string s(size_, '0');
  for (std::size_t i = 0; i < size_; ++i) {
    if ((*this)[i]) s[i] = '1';
  }
  return s;
}

Ordering lex_compare(const Label& a, const Label& b) {
  const std::size_t common = std::min(a.size(), b.size());
  const std::size_t i = first_difference(a.words(), b.words(), common);
  if (i < common) return a[i] ? Ordering::Greater : Ordering::Less;
  if (a.size() == b.size()) return Ordering::Equal;
  return a.size() < b.size() ? Ordering::Less : Ordering::Greater;
}

// ---------------------------------------------------------------------------
// TestMatrix

TestMatrix::TestMatrix(std::size_t n, std::vector<BitVector> columns) : rows_(n) {
  columns_.reserve(columns.size());
  for (auto& c : columns) add_column(std::move(c));
}

TestMatrix TestMatrix::identity(std::size_t n) {
  TestMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    BitVector e(n);
    e.set(i);
    m.add_column(std::move(e));
  }
  return m;
}

const BitVector& TestMatrix::column(std::size_t t) const {
  if (t >= columns_.size()) throw DimensionError("test matrix column out of range");
  return columns_[t];
}

void TestMatrix::add_column(BitVector h) {
  if (h.size() != rows_) {
    throw DimensionError("test vector of length " + std::to_string(h.size()) +
                         " added to matrix with " + std::to_string(rows_) + " rows");
  }
  columns_.push_back(std::move(h));
}

TestMatrix TestMatrix::prefix(std::size_t t) const {
  if (t > columns_.size()) throw DimensionError("prefix wider than the matrix");
  TestMatrix m(rows_);
  m.columns_.assign(columns_.begin(), columns_.begin() + static_cast<std::ptrdiff_t>(t));
  return m;
}

BitVector TestMatrix::row(std::size_t i) const {
  BitVector r(columns_.size());
  for (std::size_t t = 0; t < columns_.size(); ++t) {
    if (columns_[t].test(i)) r.set(t);
  }
  return r;
}

std::vector<BitVector> TestMatrix::row_vectors() const {
  std::vector<BitVector> rows(rows_, BitVector(columns_.size()));
  for (std::size_t t = 0; t < columns_.size(); ++t) {
    for (auto i : columns_[t].indices()) rows[i].set(t);
  }
  return rows;
}

BitVector semiring_apply(const TestMatrix& h, const BitVector& v, bool transpose) {
  if (!transpose) {
    if (v.size() != h.cols()) {
      throw DimensionError("H·v needs v of length " + std::to_string(h.cols()) + ", got " +
                           std::to_string(v.size()));
    }
    BitVector out(h.rows());
    for (auto t : v.indices()) out |= h.column(t);
    return out;
  }
  if (v.size() != h.rows()) {
    throw DimensionError("Hᵀv needs v of length " + std::to_string(h.rows()) + ", got " +
                         std::to_string(v.size()));
  }
  BitVector out(h.cols());
  for (std::size_t t = 0; t < h.cols(); ++t) {
    if (h.column(t).intersects(v)) out.set(t);
  }
  return out;
}

Label syndrome(const TestMatrix& h, const BitVector& k) {
  return Label::from_bits(semiring_apply(h, k, true));
}

BitVector build_query_vector(const TestMatrix& h, const Label& label) {
  if (label.size() != h.cols()) {
    throw DimensionError("label of length " + std::to_string(label.size()) +
                         " does not match " + std::to_string(h.cols()) + " test columns");
  }
  BitVector blocked(h.rows());
  for (std::size_t t = 0; t < h.cols(); ++t) {
    if (!label[t]) blocked |= h.column(t);
  }
  return ~blocked;
}

}  // namespace smt

std::size_t std::hash<smt::BitVector>::operator()(const smt::BitVector& v) const noexcept {
  std::size_t seed = v.size();
  for (auto w : v.words()) {
    seed ^= std::hash<std::uint64_t>{}(w) + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
  }
  return seed;
}
