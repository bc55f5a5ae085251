#include "delaysched/io.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <set>

namespace delaysched {

namespace {

template <typename T>
T get_as(const Json& doc, const char* what) {
  try {
    return doc.get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw InputError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

LinkIndex link_named(const Network& network, const Json& doc) {
  const auto name = get_as<std::string>(doc, "link name");
  try {
    return network.index_of(name);
  } catch (const ModelError& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Network network_from_json(const Json& doc) {
  if (!doc.is_object()) throw InputError("network document must be a JSON object");
  Network network;
  network.links = get_as<std::vector<std::string>>(field(doc, "links"), "links");
  network.collisions.assign(network.link_count(), {});
  std::set<std::string> names(network.links.begin(), network.links.end());
  if (names.size() != network.links.size()) throw InputError("duplicate link identifier");

  if (doc.contains("collisions")) {
    const Json& collisions = doc.at("collisions");
    if (!collisions.is_object()) throw InputError("'collisions' must map link names to arrays of link arrays");
    for (const auto& [name, subsets] : collisions.items()) {
      const LinkIndex l = link_named(network, Json(name));
      if (!subsets.is_array()) throw InputError("collision set of " + name + " must be an array");
      for (const auto& phi_doc : subsets) {
        if (!phi_doc.is_array()) throw InputError("collision subset of " + name + " must be an array");
        CollisionSubset phi;
        for (const auto& member : phi_doc) phi.push_back(link_named(network, member));
        std::sort(phi.begin(), phi.end());
        phi.erase(std::unique(phi.begin(), phi.end()), phi.end());
        network.collisions[l].push_back(std::move(phi));
      }
    }
  }

  const bool by_nodes = doc.contains("node_delays") || doc.contains("link_endpoints");
  if (by_nodes) {
    if (doc.contains("delays")) throw InputError("give either 'delays' or 'node_delays' with 'link_endpoints'");
    const auto matrix = get_as<std::vector<std::vector<std::int64_t>>>(field(doc, "node_delays"), "node_delays");
    const Json& endpoints_doc = field(doc, "link_endpoints");
    std::vector<std::pair<std::size_t, std::size_t>> endpoints(network.link_count());
    std::vector<bool> seen(network.link_count(), false);
    for (const auto& [name, pair] : endpoints_doc.items()) {
      const LinkIndex l = link_named(network, Json(name));
      const auto sr = get_as<std::vector<std::size_t>>(pair, "link_endpoints entry");
      if (sr.size() != 2) throw InputError("link_endpoints entry for " + name + " must be [s, r]");
      endpoints[l] = {sr[0], sr[1]};
      seen[l] = true;
    }
    for (LinkIndex l = 0; l < network.link_count(); ++l) {
      if (!seen[l]) throw InputError("link_endpoints lacks link " + network.links[l]);
    }
    try {
      network = network_from_node_delays(network.links, network.collisions, matrix, endpoints);
    } catch (const ModelError& e) {
      throw InputError(e.what());
    }
  } else if (doc.contains("delays")) {
    const Json& delays = doc.at("delays");
    if (!delays.is_array()) throw InputError("'delays' must be an array of [from, to, delay] triples");
    for (const auto& triple : delays) {
      if (!triple.is_array() || triple.size() != 3) throw InputError("delay entry must be [from, to, delay]");
      const LinkIndex from = link_named(network, triple[0]);
      const LinkIndex to = link_named(network, triple[1]);
      const auto value = get_as<std::int64_t>(triple[2], "delay value");
      if (!network.delays.emplace(std::make_pair(from, to), value).second) {
        throw InputError("duplicate delay entry " + network.links[from] + " -> " + network.links[to]);
      }
    }
  }

  try {
    validate(network);
  } catch (const ModelError& e) {
    throw InputError(e.what());
  }
  return network;
}

Json network_to_json(const Network& network) {
  Json doc;
  doc["links"] = network.links;
  Json collisions = Json::object();
  for (LinkIndex l = 0; l < network.link_count(); ++l) {
    Json subsets = Json::array();
    for (const auto& phi : network.collisions[l]) {
      Json names = Json::array();
      for (LinkIndex other : phi) names.push_back(network.links[other]);
      subsets.push_back(std::move(names));
    }
    collisions[network.links[l]] = std::move(subsets);
  }
  doc["collisions"] = std::move(collisions);
  Json delays = Json::array();
  for (const auto& [pair, value] : network.delays) {
    delays.push_back(Json::array({network.links[pair.first], network.links[pair.second], value}));
  }
  doc["delays"] = std::move(delays);
  return doc;
}

PeriodicSchedule schedule_from_json(const Json& doc, const Network& network) {
  const auto period = get_as<std::int64_t>(field(doc, "period"), "period");
  if (period <= 0) throw InputError("schedule period must be positive");
  PeriodicSchedule s(network.link_count(), static_cast<std::size_t>(period));
  const Json& active = field(doc, "active");
  if (!active.is_object()) throw InputError("'active' must map link names to timeslot arrays");
  for (const auto& [name, slots] : active.items()) {
    const LinkIndex l = link_named(network, Json(name));
    for (const auto t : get_as<std::vector<std::int64_t>>(slots, "active timeslots")) {
      if (t < 0 || t >= period) throw InputError("timeslot " + std::to_string(t) + " outside [0, period)");
      s.set(l, t);
    }
  }
  return s;
}

Json schedule_to_json(const PeriodicSchedule& s, const Network& network) {
  Json doc;
  doc["period"] = s.period();
  Json active = Json::object();
  for (LinkIndex l = 0; l < network.link_count(); ++l) {
    Json slots = Json::array();
    for (std::size_t t = 0; t < s.period(); ++t) {
      if (s.active(l, static_cast<std::int64_t>(t))) slots.push_back(t);
    }
    active[network.links[l]] = std::move(slots);
  }
  doc["active"] = std::move(active);
  return doc;
}

Json block_to_json(const Block& block) { return Json(block.to_rows()); }

Block block_from_json(const Json& doc) {
  const auto rows = get_as<std::vector<std::string>>(doc, "block rows");
  try {
    return BitMatrix::from_rows(rows);
  } catch (const std::exception& e) {
    throw InputError(std::string("block: ") + e.what());
  }
}

Json cycle_to_json(const Cycle& cycle) {
  Json blocks = Json::array();
  for (const auto& b : cycle.blocks()) blocks.push_back(block_to_json(b));
  return blocks;
}

Cycle cycle_from_json(const Json& doc) {
  if (!doc.is_array() || doc.empty()) throw InputError("cycle must be a non-empty array of blocks");
  std::vector<Block> blocks;
  for (const auto& b : doc) blocks.push_back(block_from_json(b));
  return Cycle(std::move(blocks));
}

Json rate_to_json(const RateVector& rate) { return Json(rate.to_strings()); }

RateVector rate_from_json(const Json& doc) {
  std::vector<Rational> values;
  for (const auto& s : get_as<std::vector<std::string>>(doc, "rate vector")) {
    try {
      values.push_back(parse_fraction(s));
    } catch (const std::exception& e) {
      throw InputError(std::string("rate vector: ") + e.what());
    }
  }
  return RateVector(std::move(values));
}

Json region_to_json(const RegionDescription& region, const std::vector<std::string>& links) {
  Json doc;
  doc["links"] = links;
  Json generators = Json::array();
  for (std::size_t i = 0; i < region.generators.size(); ++i) {
    Json g;
    g["rate"] = rate_to_json(region.generators[i]);
    if (i < region.witnesses.size()) g["witness"] = cycle_to_json(region.witnesses[i]);
    generators.push_back(std::move(g));
  }
  doc["generators"] = std::move(generators);
  const auto& p = region.provenance;
  doc["provenance"] = {{"algorithm", p.algorithm},
                       {"T", p.T},
                       {"max_length", p.max_length},
                       {"complete", p.complete},
                       {"regime", p.regime}};
  return doc;
}

RegionDescription region_from_json(const Json& doc) {
  RegionDescription region;
  const Json& generators = field(doc, "generators");
  if (!generators.is_array()) throw InputError("'generators' must be an array");
  for (const auto& g : generators) {
    region.generators.push_back(rate_from_json(g.is_object() ? field(g, "rate") : g));
    if (g.is_object() && g.contains("witness")) region.witnesses.push_back(cycle_from_json(g.at("witness")));
  }
  if (!region.witnesses.empty() && region.witnesses.size() != region.generators.size()) {
    throw InputError("either every generator or none carries a witness");
  }
  const std::size_t dim = region.dimension();
  for (const auto& g : region.generators) {
    if (g.size() != dim) throw InputError("generators differ in dimension");
  }
  if (doc.contains("provenance")) {
    const Json& p = doc.at("provenance");
    region.provenance.algorithm = get_as<std::string>(p.value("algorithm", Json("")), "algorithm");
    region.provenance.T = get_as<std::size_t>(p.value("T", Json(0)), "T");
    region.provenance.max_length = get_as<std::size_t>(p.value("max_length", Json(0)), "max_length");
    region.provenance.complete = get_as<bool>(p.value("complete", Json(true)), "complete");
    region.provenance.regime = get_as<std::string>(p.value("regime", Json("")), "regime");
  }
  return region;
}

std::string fingerprint(const Network& network) {
  const std::string text = network_to_json(network).dump();
  std::uint64_t hash = 14695981039346656037ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("malformed JSON in " + what + ": " + e.what());
  }
}

}  // namespace delaysched
