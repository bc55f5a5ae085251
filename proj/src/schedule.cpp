#include "delaysched/schedule.hpp"

#include <algorithm>
#include <string>

namespace delaysched {

PeriodicSchedule::PeriodicSchedule(std::size_t links, std::size_t period)
    : links_(links), period_(period), bits_(links * period, 0) {
  if (period == 0) throw ScheduleError("schedule period must be at least 1");
}

PeriodicSchedule PeriodicSchedule::from_matrix(const BitMatrix& pattern) {
  PeriodicSchedule s(pattern.rows(), pattern.cols());
  for (std::size_t l = 0; l < pattern.rows(); ++l) {
    for (std::size_t t = 0; t < pattern.cols(); ++t) s.set(l, static_cast<std::int64_t>(t), pattern.get(l, t));
  }
  return s;
}

std::size_t PeriodicSchedule::active_count(LinkIndex l) const {
  return static_cast<std::size_t>(
      std::count(bits_.begin() + static_cast<std::ptrdiff_t>(l * period_),
                 bits_.begin() + static_cast<std::ptrdiff_t>((l + 1) * period_), std::uint8_t{1}));
}

BitMatrix PeriodicSchedule::slab(std::size_t T, std::int64_t k) const {
  BitMatrix out(links_, T);
  const std::int64_t first = k * static_cast<std::int64_t>(T);
  for (std::size_t c = 0; c < T; ++c) {
    for (std::size_t l = 0; l < links_; ++l) {
      if (active(l, first + static_cast<std::int64_t>(c))) out.set(l, c);
    }
  }
  return out;
}

namespace {

void check_links(const Network& network, const PeriodicSchedule& s) {
  if (s.link_count() != network.link_count()) {
    throw ScheduleError("schedule has " + std::to_string(s.link_count()) + " rows for " +
                        std::to_string(network.link_count()) + " links");
  }
}

const CollisionSubset* colliding_subset(const Network& network, const PeriodicSchedule& s, LinkIndex l,
                                        std::int64_t t) {
  for (const auto& phi : network.collisions[l]) {
    const bool all_active = std::all_of(phi.begin(), phi.end(), [&](LinkIndex other) {
      return s.active(other, t + network.delay_at(l, other));
    });
    if (all_active) return &phi;
  }
  return nullptr;
}

}  // namespace

bool is_collision_free_at(const Network& network, const PeriodicSchedule& s, LinkIndex l, std::int64_t t) {
  check_links(network, s);
  if (l >= network.link_count()) throw ScheduleError("link index out of range");
  return colliding_subset(network, s, l, t) == nullptr;
}

std::vector<CollisionReport> find_collisions(const Network& network, const PeriodicSchedule& s) {
  check_links(network, s);
  std::vector<CollisionReport> out;
  for (LinkIndex l = 0; l < network.link_count(); ++l) {
    for (std::size_t t = 0; t < s.period(); ++t) {
      const auto when = static_cast<std::int64_t>(t);
      if (!s.active(l, when)) continue;
      if (const auto* phi = colliding_subset(network, s, l, when)) out.push_back({l, t, *phi});
    }
  }
  return out;
}

bool verify(const Network& network, const PeriodicSchedule& s) { return find_collisions(network, s).empty(); }

RateVector rate_vector(const Network& network, const PeriodicSchedule& s) {
  check_links(network, s);
  RateVector out(network.link_count());
  for (LinkIndex l = 0; l < network.link_count(); ++l) {
    std::size_t good = 0;
    for (std::size_t t = 0; t < s.period(); ++t) {
      const auto when = static_cast<std::int64_t>(t);
      if (s.active(l, when) && colliding_subset(network, s, l, when) == nullptr) ++good;
    }
    out[l] = Rational(static_cast<long>(good), static_cast<long>(s.period()));
    out[l].canonicalize();
  }
  return out;
}

bool is_static_independent(const Network& network, const std::vector<LinkIndex>& links) {
  std::vector<bool> in(network.link_count(), false);
  for (LinkIndex l : links) {
    if (l >= network.link_count()) throw ScheduleError("link index out of range");
    in[l] = true;
  }
  for (LinkIndex l : links) {
    for (const auto& phi : network.collisions[l]) {
      if (std::all_of(phi.begin(), phi.end(), [&](LinkIndex other) { return in[other]; })) return false;
    }
  }
  return true;
}

PeriodicSchedule build_framed_schedule(const Network& network, const std::vector<Frame>& frames,
                                       std::size_t frame_length) {
  validate(network);
  if (frames.empty()) throw ScheduleError("framed schedule needs at least one frame");
  const auto d_star = static_cast<std::size_t>(character(network));
  const std::size_t minimum = (is_binary(network) ? 2 : 3) * d_star + 1;
  if (frame_length < minimum) {
    throw ScheduleError("frame length " + std::to_string(frame_length) + " is below the required " +
                        std::to_string(minimum));
  }
  std::size_t total = 0;
  for (const auto& frame : frames) {
    if (frame.repeat == 0) throw ScheduleError("frame repeat count must be positive");
    if (!is_static_independent(network, frame.links)) {
      std::string names;
      for (LinkIndex l : frame.links) names += (names.empty() ? "" : ",") + network.links[l];
      throw ScheduleError("frame link set {" + names + "} is not independent in the collision graph");
    }
    total += frame.repeat;
  }
  PeriodicSchedule s(network.link_count(), frame_length * total);
  std::size_t index = 0;
  for (const auto& frame : frames) {
    for (std::size_t r = 0; r < frame.repeat; ++r, ++index) {
      const std::size_t start = index * frame_length;
      for (LinkIndex l : frame.links) {
        for (std::size_t i = 0; i + d_star < frame_length; ++i) s.set(l, static_cast<std::int64_t>(start + i));
      }
    }
  }
  return s;
}

PeriodicSchedule schedule_from_closed_path(const std::vector<BitMatrix>& path, std::size_t T) {
  if (path.size() < 2) throw ScheduleError("closed path needs at least one edge");
  if (path.front() != path.back()) throw ScheduleError("path is not closed");
  const std::size_t links = path.front().rows();
  for (const auto& block : path) {
    if (block.rows() != links || block.cols() != T) throw ScheduleError("block dimensions do not match |L| x T");
  }
  const std::size_t k = path.size() - 1;
  PeriodicSchedule s(links, k * T);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t l = 0; l < links; ++l) {
      for (std::size_t c = 0; c < T; ++c) {
        if (path[i].get(l, c)) s.set(l, static_cast<std::int64_t>(i * T + c));
      }
    }
  }
  return s;
}

}  // namespace delaysched
