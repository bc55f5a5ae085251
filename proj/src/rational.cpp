#include "delaysched/rational.hpp"

#include <stdexcept>

namespace delaysched {

std::string to_fraction_string(const Rational& value) {
  Rational v = value;
  v.canonicalize();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

Rational parse_fraction(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (ch != ' ' && ch != '\t') s += ch;
  }
  if (s.empty()) throw std::invalid_argument("empty rational");
  for (char ch : s) {
    if (!(ch == '-' || ch == '/' || (ch >= '0' && ch <= '9'))) {
      throw std::invalid_argument("malformed rational '" + s + "'");
    }
  }
  Rational out;
  if (out.set_str(s, 10) != 0) throw std::invalid_argument("malformed rational '" + s + "'");
  if (out.get_den() == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
  out.canonicalize();
  return out;
}

bool RateVector::dominates(const RateVector& other) const {
  if (other.size() != size()) throw std::invalid_argument("RateVector: dimension mismatch");
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    if (rates_[i] < other.rates_[i]) return false;
  }
  return true;
}

bool RateVector::strictly_dominates(const RateVector& other) const {
  return dominates(other) && rates_ != other.rates_;
}

std::vector<std::string> RateVector::to_strings() const {
  std::vector<std::string> out;
  out.reserve(rates_.size());
  for (const auto& r : rates_) out.push_back(to_fraction_string(r));
  return out;
}

RateVector RateVector::parse(std::string_view comma_separated) {
  std::vector<Rational> rates;
  std::size_t start = 0;
  while (start <= comma_separated.size()) {
    const auto end = comma_separated.find(',', start);
    const auto piece = comma_separated.substr(start, end == std::string_view::npos ? end : end - start);
    rates.push_back(parse_fraction(piece));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return RateVector(std::move(rates));
}

}  // namespace delaysched
