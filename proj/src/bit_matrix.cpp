#include "delaysched/bit_matrix.hpp"

#include <stdexcept>

namespace delaysched {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows * cols > kMaxBits) {
    throw std::length_error("BitMatrix: " + std::to_string(rows) + "x" + std::to_string(cols) +
                            " exceeds " + std::to_string(kMaxBits) + " bits");
  }
}

std::size_t BitMatrix::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

std::size_t BitMatrix::row_count(std::size_t row) const {
  std::size_t n = 0;
  for (std::size_t c = 0; c < cols_; ++c) n += get(row, c) ? 1 : 0;
  return n;
}

bool BitMatrix::none() const {
  for (auto w : words_) {
    if (w != 0) return false;
  }
  return true;
}

bool BitMatrix::dominates(const BitMatrix& other) const {
  for (std::size_t w = 0; w < kWords; ++w) {
    if ((other.words_[w] & ~words_[w]) != 0) return false;
  }
  return true;
}

BitMatrix BitMatrix::operator&(const BitMatrix& other) const {
  BitMatrix out = *this;
  out &= other;
  return out;
}

BitMatrix BitMatrix::operator|(const BitMatrix& other) const {
  BitMatrix out = *this;
  out |= other;
  return out;
}

BitMatrix& BitMatrix::operator&=(const BitMatrix& other) {
  for (std::size_t w = 0; w < kWords; ++w) words_[w] &= other.words_[w];
  return *this;
}

BitMatrix& BitMatrix::operator|=(const BitMatrix& other) {
  for (std::size_t w = 0; w < kWords; ++w) words_[w] |= other.words_[w];
  return *this;
}

BitMatrix BitMatrix::juxtapose(const BitMatrix& right) const {
  if (right.rows_ != rows_) throw std::invalid_argument("juxtapose: row count mismatch");
  BitMatrix out(rows_, cols_ + right.cols_);
  out.words_ = words_;
  const std::size_t offset = size();
  right.for_each_set([&](std::size_t pos) { out.assign(pos + offset, true); });
  return out;
}

BitMatrix BitMatrix::columns(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw std::out_of_range("columns: range exceeds matrix");
  BitMatrix out(rows_, count);
  const std::size_t lo = first * rows_;
  const std::size_t hi = lo + count * rows_;
  for_each_set([&](std::size_t pos) {
    if (pos >= lo && pos < hi) out.assign(pos - lo, true);
  });
  return out;
}

std::vector<std::string> BitMatrix::to_rows() const {
  std::vector<std::string> out(rows_, std::string(cols_, '0'));
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) {
      if (get(r, c)) out[r][c] = '1';
    }
  }
  return out;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::string>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  BitMatrix out(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("from_rows: ragged rows");
    for (std::size_t c = 0; c < cols; ++c) {
      const char ch = rows[r][c];
      if (ch != '0' && ch != '1') throw std::invalid_argument("from_rows: expected '0' or '1'");
      out.set(r, c, ch == '1');
    }
  }
  return out;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (std::size_t c = 0; c < cols_; ++c) {
    if (c > 0) s += '|';
    for (std::size_t r = 0; r < rows_; ++r) s += get(r, c) ? '1' : '0';
  }
  return s;
}

std::size_t BitMatrix::hash() const {
  std::uint64_t h = 1469598103934665603ULL ^ (rows_ * 1315423911ULL) ^ (cols_ << 32);
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

bool operator<(const BitMatrix& a, const BitMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
  for (std::size_t w = 0; w < BitMatrix::kWords; ++w) {
    const std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff != 0) {
      const int bit = std::countr_zero(diff);
      // The operand holding the earliest differing bit is the larger one.
      return ((a.words_[w] >> bit) & 1U) == 0;
    }
  }
  return false;
}

}  // namespace delaysched
