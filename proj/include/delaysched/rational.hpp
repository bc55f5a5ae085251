#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <vector>

namespace delaysched {

using Rational = mpq_class;

/// Lowest-terms "p/q" form; integers keep an explicit "/1".
std::string to_fraction_string(const Rational& value);
/// Accepts "p/q" or an integer "p".
Rational parse_fraction(std::string_view text);

/// Exact per-link rates.
class RateVector {
 public:
  RateVector() = default;
  explicit RateVector(std::size_t links) : rates_(links, Rational(0)) {}
  explicit RateVector(std::vector<Rational> rates) : rates_(std::move(rates)) {}

  std::size_t size() const { return rates_.size(); }
  const Rational& operator[](std::size_t i) const { return rates_[i]; }
  Rational& operator[](std::size_t i) { return rates_[i]; }
  const std::vector<Rational>& values() const { return rates_; }

  /// Component-wise >=.
  bool dominates(const RateVector& other) const;
  /// >= everywhere and > somewhere.
  bool strictly_dominates(const RateVector& other) const;

  std::vector<std::string> to_strings() const;
  static RateVector parse(std::string_view comma_separated);

  friend bool operator==(const RateVector& a, const RateVector& b) { return a.rates_ == b.rates_; }
  friend bool operator<(const RateVector& a, const RateVector& b) { return a.rates_ < b.rates_; }

 private:
  std::vector<Rational> rates_;
};

}  // namespace delaysched
