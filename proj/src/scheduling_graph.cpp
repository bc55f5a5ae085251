#include "delaysched/scheduling_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace delaysched {

EdgeOracle::EdgeOracle(const Network& network, std::size_t T) : single_(network, T), pair_(network, 2 * T) {}

bool EdgeOracle::is_vertex(const Block& a) const { return single_.is_independent(a); }

bool EdgeOracle::has_edge(const Block& a, const Block& b) const {
  if (a.cols() != T() || b.cols() != T()) throw std::invalid_argument("has_edge: block width differs from T");
  return pair_.is_independent(a.juxtapose(b));
}

bool is_vertex(const Network& network, const Block& a) { return EdgeOracle(network, a.cols()).is_vertex(a); }

bool has_edge(const Network& network, const Block& a, const Block& b) {
  if (a.cols() != b.cols() || a.rows() != b.rows()) throw std::invalid_argument("has_edge: block dimensions differ");
  return EdgeOracle(network, a.cols()).has_edge(a, b);
}

std::size_t SchedulingGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& s : successors) n += s.size();
  return n;
}

std::size_t SchedulingGraph::index_of(const Block& block) const {
  const auto it = std::lower_bound(vertices.begin(), vertices.end(), block);
  if (it == vertices.end() || *it != block) throw std::out_of_range("block is not a vertex: " + block.to_string());
  return static_cast<std::size_t>(it - vertices.begin());
}

bool SchedulingGraph::has_edge(std::size_t from, std::size_t to) const {
  const auto& s = successors.at(from);
  return std::binary_search(s.begin(), s.end(), to);
}

SchedulingGraph build_scheduling_graph(const Network& network, std::size_t T, std::size_t cap_bits) {
  EdgeOracle oracle(network, T);
  SchedulingGraph g;
  g.T = T;
  g.vertices = enumerate_independent_sets(oracle.window(), cap_bits);
  std::sort(g.vertices.begin(), g.vertices.end());
  g.successors.resize(g.vertices.size());
  for (std::size_t i = 0; i < g.vertices.size(); ++i) {
    for (std::size_t j = 0; j < g.vertices.size(); ++j) {
      if (oracle.has_edge(g.vertices[i], g.vertices[j])) g.successors[i].push_back(j);
    }
  }
  return g;
}

std::vector<Block> MaximalEdgeGraph::vertices() const {
  std::vector<Block> out = left;
  out.insert(out.end(), right.begin(), right.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

MaximalEdgeGraph build_maximal(const Network& network, std::size_t T, const Budget& budget) {
  const WindowGraph pair = build_window(network, 2 * T);
  const auto maximal = enumerate_maximal_independent_sets(pair, budget);
  MaximalEdgeGraph g;
  g.T = T;
  g.complete = maximal.complete;
  std::set<Block> left;
  std::set<Block> right;
  for (const auto& set : maximal.sets) {
    Block a = set.columns(0, T);
    Block b = set.columns(T, T);
    left.insert(a);
    right.insert(b);
    g.edges.emplace_back(std::move(a), std::move(b));
  }
  std::sort(g.edges.begin(), g.edges.end());
  g.left.assign(left.begin(), left.end());
  g.right.assign(right.begin(), right.end());
  return g;
}

bool schedule_is_path(const Network& network, const PeriodicSchedule& s, std::size_t T) {
  if (T == 0) throw std::invalid_argument("T must be positive");
  if (s.link_count() != network.link_count()) throw ScheduleError("schedule/network link count mismatch");
  EdgeOracle oracle(network, T);
  const std::size_t slabs = std::lcm(s.period(), T) / T;
  Block current = s.slab(T, 0);
  for (std::size_t k = 0; k < slabs; ++k) {
    Block next = s.slab(T, static_cast<std::int64_t>(k + 1));
    if (!oracle.has_edge(current, next)) return false;
    current = std::move(next);
  }
  return true;
}

}  // namespace delaysched
