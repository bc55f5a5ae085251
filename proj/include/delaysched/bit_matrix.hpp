#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace delaysched {

/// Binary |L| x T matrix stored column-major in a fixed 256-bit buffer.
///
/// Bit (row, col) lives at position col * rows + row. Ordering compares
/// positions from 0 upward with the first differing position deciding, so
/// every column reads as a binary number whose most significant bit is
/// link 0 and earlier columns dominate later ones.
class BitMatrix {
 public:
  static constexpr std::size_t kMaxBits = 256;
  static constexpr std::size_t kWords = kMaxBits / 64;

  BitMatrix() = default;
  BitMatrix(std::size_t rows, std::size_t cols);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return rows_ * cols_; }

  bool get(std::size_t row, std::size_t col) const { return test(col * rows_ + row); }
  void set(std::size_t row, std::size_t col, bool value = true) { assign(col * rows_ + row, value); }

  bool test(std::size_t pos) const { return (words_[pos >> 6] >> (pos & 63)) & 1U; }
  void assign(std::size_t pos, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (pos & 63);
    if (value) {
      words_[pos >> 6] |= bit;
    } else {
      words_[pos >> 6] &= ~bit;
    }
  }

  std::size_t count() const;
  std::size_t row_count(std::size_t row) const;
  bool none() const;

  /// Component-wise >= ; both operands must have identical dimensions.
  bool dominates(const BitMatrix& other) const;
  /// True iff every set bit of `mask` is set here.
  bool contains(const BitMatrix& mask) const { return dominates(mask); }

  BitMatrix operator&(const BitMatrix& other) const;
  BitMatrix operator|(const BitMatrix& other) const;
  BitMatrix& operator&=(const BitMatrix& other);
  BitMatrix& operator|=(const BitMatrix& other);

  /// [this | right], an rows x (cols + right.cols) matrix.
  BitMatrix juxtapose(const BitMatrix& right) const;
  /// Columns [first, first + count).
  BitMatrix columns(std::size_t first, std::size_t count) const;

  /// One string of '0'/'1' per row, column 0 leftmost.
  std::vector<std::string> to_rows() const;
  static BitMatrix from_rows(const std::vector<std::string>& rows);
  /// Compact form used in diagnostics: columns separated by '|'.
  std::string to_string() const;

  /// Calls fn(pos) for every set position in increasing order.
  template <typename Fn>
  void for_each_set(Fn&& fn) const {
    for (std::size_t w = 0; w < kWords; ++w) {
      std::uint64_t word = words_[w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        fn(w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }

  std::size_t hash() const;

  friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.words_ == b.words_;
  }
  friend bool operator<(const BitMatrix& a, const BitMatrix& b);
  friend bool operator!=(const BitMatrix& a, const BitMatrix& b) { return !(a == b); }
  friend bool operator>(const BitMatrix& a, const BitMatrix& b) { return b < a; }
  friend bool operator<=(const BitMatrix& a, const BitMatrix& b) { return !(b < a); }
  friend bool operator>=(const BitMatrix& a, const BitMatrix& b) { return !(a < b); }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::array<std::uint64_t, kWords> words_{};
};

using Block = BitMatrix;

struct BitMatrixHash {
  std::size_t operator()(const BitMatrix& m) const { return m.hash(); }
};

}  // namespace delaysched
