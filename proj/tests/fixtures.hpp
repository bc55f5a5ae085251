#pragma once

#include <array>
#include <string>
#include <vector>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/network.hpp"
#include "delaysched/rational.hpp"

namespace fixtures {

using delaysched::Block;
using delaysched::Network;

inline Network line41() { return delaysched::make_line_network(4, 1); }

/// Four links; l2 collides when l1 and l3 arrive together, l3 when l2 and
/// l4 do. Offsets -1 and +1.
inline Network hyper4() {
  Network n;
  n.links = {"l1", "l2", "l3", "l4"};
  n.collisions = {{}, {{0, 2}}, {{1, 3}}, {}};
  n.delays = {{{1, 0}, -1}, {{1, 2}, 1}, {{2, 1}, -1}, {{2, 3}, 1}};
  return n;
}

/// Binary network of character 4 that a shift of (4,3,2,1) brings down to 1.
inline Network shifted4() {
  Network n;
  n.links = {"l1", "l2", "l3", "l4"};
  n.collisions = {{{1}, {2}, {3}}, {{0}, {2}, {3}}, {{1}, {3}}, {{2}}};
  n.delays = {{{0, 1}, 0},  {{0, 2}, -2}, {{0, 3}, -4}, {{1, 0}, 0}, {{1, 2}, 0},
              {{1, 3}, -2}, {{2, 1}, 0},  {{2, 3}, 0},  {{3, 2}, 0}};
  return n;
}

/// Chain whose shifted delays share the factor 3.
inline Network chain9() {
  Network n;
  n.links = {"l1", "l2", "l3", "l4"};
  n.collisions = {{{1}, {2}}, {{2}, {3}}, {{3}}, {}};
  n.delays = {{{0, 1}, 1}, {{0, 2}, 2}, {{1, 2}, 1}, {{1, 3}, 5}, {{2, 3}, 1}};
  return n;
}

inline Network empty_profile(std::size_t links) {
  Network n;
  for (std::size_t l = 0; l < links; ++l) n.links.push_back("l" + std::to_string(l + 1));
  n.collisions.assign(links, {});
  return n;
}

/// Every link collides with every other link at offset 0.
inline Network single_domain(std::size_t links) {
  Network n = empty_profile(links);
  for (std::size_t l = 0; l < links; ++l) {
    for (std::size_t o = 0; o < links; ++o) {
      if (o == l) continue;
      n.collisions[l].push_back({o});
      n.delays[{l, o}] = 0;
    }
  }
  return n;
}

/// Column vector from a top-to-bottom string such as "1001".
inline Block column(const std::string& bits) {
  std::vector<std::string> rows;
  for (char c : bits) rows.emplace_back(1, c);
  return Block::from_rows(rows);
}

/// Multi-column block from column strings.
inline Block columns(const std::vector<std::string>& cols) {
  Block out(cols.front().size(), cols.size());
  for (std::size_t t = 0; t < cols.size(); ++t) {
    for (std::size_t l = 0; l < cols[t].size(); ++l) out.set(l, t, cols[t][l] == '1');
  }
  return out;
}

/// The nine single-slot vertices of the four-link line network, v0..v8.
inline const std::array<std::string, 9>& v_names() {
  static const std::array<std::string, 9> names = {"0000", "1000", "0100", "0010", "0001",
                                                   "1001", "1100", "0110", "0011"};
  return names;
}
inline Block v(std::size_t i) { return column(v_names().at(i)); }

inline delaysched::RateVector rates(const std::string& text) { return delaysched::RateVector::parse(text); }

}  // namespace fixtures
