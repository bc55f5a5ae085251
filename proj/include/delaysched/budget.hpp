#pragma once

#include <chrono>
#include <optional>

namespace delaysched {

/// Wall-clock allowance checked cooperatively by enumerations. Once the
/// deadline passes expired() stays true.
class Budget {
 public:
  Budget() = default;
  static Budget unlimited() { return {}; }
  static Budget seconds(double s) {
    Budget b;
    b.deadline_ = std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
    return b;
  }

  bool limited() const { return deadline_.has_value(); }
  bool expired() const {
    if (!deadline_) return false;
    if (!hit_ && std::chrono::steady_clock::now() >= *deadline_) hit_ = true;
    return hit_;
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> deadline_;
  mutable bool hit_ = false;
};

}  // namespace delaysched
