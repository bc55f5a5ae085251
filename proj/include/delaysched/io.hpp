#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/cycles.hpp"
#include "delaysched/network.hpp"
#include "delaysched/rate_region.hpp"
#include "delaysched/schedule.hpp"

namespace delaysched {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent JSON input.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads {links, collisions, delays} or {links, collisions, node_delays,
/// link_endpoints}; the result is validated.
Network network_from_json(const Json& doc);
/// Canonical link-wise form: delays sorted by (from, to).
Json network_to_json(const Network& network);

/// {period, active: {link: [t, ...]}}; links absent from `active` stay idle.
PeriodicSchedule schedule_from_json(const Json& doc, const Network& network);
Json schedule_to_json(const PeriodicSchedule& s, const Network& network);

/// One "0101" string per link row.
Json block_to_json(const Block& block);
Block block_from_json(const Json& doc);
Json cycle_to_json(const Cycle& cycle);
Cycle cycle_from_json(const Json& doc);

Json rate_to_json(const RateVector& rate);
RateVector rate_from_json(const Json& doc);

Json region_to_json(const RegionDescription& region, const std::vector<std::string>& links);
RegionDescription region_from_json(const Json& doc);

/// 16 hex digits of FNV-1a over the canonical network JSON.
std::string fingerprint(const Network& network);

Json parse_json(const std::string& text, const std::string& what);

}  // namespace delaysched
