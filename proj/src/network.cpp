#include "delaysched/network.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <set>

namespace delaysched {

std::optional<std::int64_t> Network::delay(LinkIndex l, LinkIndex other) const {
  const auto it = delays.find({l, other});
  if (it == delays.end()) return std::nullopt;
  return it->second;
}

std::int64_t Network::delay_at(LinkIndex l, LinkIndex other) const {
  const auto it = delays.find({l, other});
  if (it == delays.end()) {
    const auto name = [&](LinkIndex i) { return i < links.size() ? links[i] : "#" + std::to_string(i); };
    throw ModelError("missing delay: D_L(" + name(l) + ", " + name(other) + ") is unspecified");
  }
  return it->second;
}

LinkIndex Network::index_of(std::string_view name) const {
  const auto it = std::find(links.begin(), links.end(), name);
  if (it == links.end()) throw ModelError("unknown link '" + std::string(name) + "'");
  return static_cast<LinkIndex>(it - links.begin());
}

void validate(const Network& network) {
  const std::size_t n = network.link_count();
  std::set<std::string> seen;
  for (const auto& name : network.links) {
    if (name.empty()) throw ModelError("empty link identifier");
    if (!seen.insert(name).second) throw ModelError("duplicate link identifier '" + name + "'");
  }
  if (network.collisions.size() != n) {
    throw ModelError("collision profile has " + std::to_string(network.collisions.size()) +
                     " entries for " + std::to_string(n) + " links");
  }
  for (LinkIndex l = 0; l < n; ++l) {
    for (const auto& phi : network.collisions[l]) {
      if (phi.empty()) throw ModelError("empty collision subset in I(" + network.links[l] + ")");
      for (LinkIndex other : phi) {
        if (other >= n) {
          throw ModelError("unknown link #" + std::to_string(other) + " in I(" + network.links[l] + ")");
        }
        if (!network.delay(l, other)) {
          throw ModelError("missing delay: D_L(" + network.links[l] + ", " + network.links[other] +
                           ") is unspecified but " + network.links[other] + " appears in I(" +
                           network.links[l] + ")");
        }
      }
    }
  }
  for (const auto& [key, value] : network.delays) {
    if (key.first >= n || key.second >= n) throw ModelError("delay entry references unknown link");
  }
}

bool is_binary(const Network& network) {
  for (const auto& sets : network.collisions) {
    for (const auto& phi : sets) {
      if (phi.size() != 1) return false;
    }
  }
  return true;
}

std::int64_t character(const Network& network) {
  std::int64_t best = 0;
  for (LinkIndex l = 0; l < network.link_count(); ++l) {
    for (const auto& phi : network.collisions[l]) {
      for (LinkIndex other : phi) best = std::max(best, std::abs(network.delay_at(l, other)));
    }
  }
  return best;
}

Network apply_vertex_assignment(const Network& network, const VertexAssignment& b) {
  if (b.size() != network.link_count()) {
    throw ModelError("vertex assignment has " + std::to_string(b.size()) + " entries for " +
                     std::to_string(network.link_count()) + " links");
  }
  Network out = network;
  for (auto& [key, value] : out.delays) value += b[key.first] - b[key.second];
  return out;
}

std::vector<std::vector<LinkIndex>> collision_support(const Network& network) {
  std::vector<std::vector<LinkIndex>> support(network.link_count());
  for (LinkIndex l = 0; l < network.link_count(); ++l) {
    std::set<LinkIndex> merged;
    for (const auto& phi : network.collisions[l]) merged.insert(phi.begin(), phi.end());
    support[l].assign(merged.begin(), merged.end());
  }
  return support;
}

GcdReduction gcd_reduce(const Network& network) {
  const auto support = collision_support(network);
  std::int64_t g = 0;
  for (LinkIndex l = 0; l < support.size(); ++l) {
    for (LinkIndex other : support[l]) g = std::gcd(g, std::abs(network.delay_at(l, other)));
  }
  if (g <= 1) return {network, 1};
  Network out = network;
  out.delays.clear();
  for (LinkIndex l = 0; l < support.size(); ++l) {
    for (LinkIndex other : support[l]) out.delays[{l, other}] = network.delay_at(l, other) / g;
  }
  return {std::move(out), g};
}

Network make_line_network(std::size_t L, std::size_t K) {
  if (L == 0) throw ModelError("line network needs at least one link");
  Network net;
  net.collisions.resize(L);
  for (std::size_t i = 0; i < L; ++i) net.links.push_back("l" + std::to_string(i + 1));
  for (std::size_t i = 0; i < L; ++i) {
    for (std::size_t j = 0; j < L; ++j) {
      if (i == j) continue;
      const auto hop = std::abs(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i) - 1);
      if (hop <= static_cast<std::int64_t>(K)) {
        net.collisions[i].push_back({j});
        net.delays[{i, j}] = 1 - hop;
      }
    }
  }
  return net;
}

Network static_network(const Network& network) {
  Network out = network;
  out.delays.clear();
  const auto support = collision_support(network);
  for (LinkIndex l = 0; l < support.size(); ++l) {
    for (LinkIndex other : support[l]) out.delays[{l, other}] = 0;
  }
  return out;
}

Network network_from_node_delays(std::vector<std::string> links,
                                 std::vector<std::vector<CollisionSubset>> collisions,
                                 const std::vector<std::vector<std::int64_t>>& node_delays,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& endpoints) {
  const std::size_t nodes = node_delays.size();
  for (const auto& row : node_delays) {
    if (row.size() != nodes) throw ModelError("node delay matrix is not square");
  }
  if (endpoints.size() != links.size()) throw ModelError("every link needs endpoints");
  for (const auto& [s, r] : endpoints) {
    if (s >= nodes || r >= nodes) throw ModelError("link endpoint outside the node delay matrix");
    if (s == r) throw ModelError("link endpoints must differ");
  }
  Network net;
  net.links = std::move(links);
  net.collisions = std::move(collisions);
  if (net.collisions.size() != net.links.size()) throw ModelError("collision profile size mismatch");
  const auto support = collision_support(net);
  for (LinkIndex l = 0; l < support.size(); ++l) {
    const auto [s, r] = endpoints[l];
    for (LinkIndex other : support[l]) {
      if (other >= endpoints.size()) throw ModelError("unknown link in collision profile");
      net.delays[{l, other}] = node_delays[s][r] - node_delays[endpoints[other].first][r];
    }
  }
  return net;
}

}  // namespace delaysched
