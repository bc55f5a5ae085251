#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/network.hpp"
#include "delaysched/rational.hpp"

namespace delaysched {

class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Schedule of period P over all integer time: S(l, t) = bits(l, t mod P).
class PeriodicSchedule {
 public:
  PeriodicSchedule(std::size_t links, std::size_t period);
  /// Period = number of columns of `pattern`.
  static PeriodicSchedule from_matrix(const BitMatrix& pattern);

  std::size_t link_count() const { return links_; }
  std::size_t period() const { return period_; }

  bool active(LinkIndex l, std::int64_t t) const { return bits_[l * period_ + wrap(t)] != 0; }
  void set(LinkIndex l, std::int64_t t, bool value = true) { bits_[l * period_ + wrap(t)] = value ? 1 : 0; }
  std::size_t active_count(LinkIndex l) const;

  /// S[T, k]: columns kT .. kT + T - 1, read modulo the period.
  BitMatrix slab(std::size_t T, std::int64_t k) const;

  friend bool operator==(const PeriodicSchedule&, const PeriodicSchedule&) = default;

 private:
  std::size_t wrap(std::int64_t t) const {
    const auto p = static_cast<std::int64_t>(period_);
    return static_cast<std::size_t>(((t % p) + p) % p);
  }

  std::size_t links_;
  std::size_t period_;
  std::vector<std::uint8_t> bits_;
};

/// True iff every phi in I(l) has some l' with S(l', t + D_L(l,l')) = 0.
bool is_collision_free_at(const Network& network, const PeriodicSchedule& s, LinkIndex l, std::int64_t t);

struct CollisionReport {
  LinkIndex link = 0;
  std::size_t time = 0;  ///< within [0, period)
  CollisionSubset subset;  ///< first phi found fully active
};

/// Active slots of one period that suffer a collision.
std::vector<CollisionReport> find_collisions(const Network& network, const PeriodicSchedule& s);

bool verify(const Network& network, const PeriodicSchedule& s);

/// Exact limit of the per-link collision-free activation frequency.
RateVector rate_vector(const Network& network, const PeriodicSchedule& s);

/// Independence in the static (delay-free) collision structure (L, I).
bool is_static_independent(const Network& network, const std::vector<LinkIndex>& links);

struct Frame {
  std::vector<LinkIndex> links;
  std::size_t repeat = 1;
};

/// Frames of length T_F; listed links are active in the first T_F - D*
/// slots of each frame and every link is silent in the last D*. Requires
/// T_F >= 2D* + 1 for binary profiles and 3D* + 1 otherwise.
PeriodicSchedule build_framed_schedule(const Network& network, const std::vector<Frame>& frames,
                                       std::size_t frame_length);

/// Closed path (A_0, ..., A_k = A_0) of |L| x T blocks -> period kT
/// schedule whose i-th slab is A_i.
PeriodicSchedule schedule_from_closed_path(const std::vector<BitMatrix>& path, std::size_t T);

}  // namespace delaysched
