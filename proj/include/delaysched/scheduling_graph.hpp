#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/budget.hpp"
#include "delaysched/network.hpp"
#include "delaysched/periodic_graph.hpp"
#include "delaysched/schedule.hpp"

namespace delaysched {

/// Membership tests for the scheduling graph (M_T, E_T).
///
/// A block is a vertex iff it is independent in N^T, and (A, B) is an edge
/// iff [A | B] is independent in N^{2T}: padding with zeros outside the
/// window yields a collision-free schedule because a collision needs every
/// link of some phi active.
class EdgeOracle {
 public:
  EdgeOracle(const Network& network, std::size_t T);

  std::size_t T() const { return single_.T(); }
  std::size_t link_count() const { return single_.link_count(); }
  const WindowGraph& window() const { return single_; }
  const WindowGraph& pair_window() const { return pair_; }

  bool is_vertex(const Block& a) const;
  bool has_edge(const Block& a, const Block& b) const;

 private:
  WindowGraph single_;
  WindowGraph pair_;
};

bool is_vertex(const Network& network, const Block& a);
bool has_edge(const Network& network, const Block& a, const Block& b);

/// Explicit (M_T, E_T). Vertices are sorted; successors hold vertex indices.
struct SchedulingGraph {
  std::size_t T = 0;
  std::vector<Block> vertices;
  std::vector<std::vector<std::size_t>> successors;

  std::size_t edge_count() const;
  /// Index of `block` in `vertices`; throws std::out_of_range if absent.
  std::size_t index_of(const Block& block) const;
  bool has_edge(std::size_t from, std::size_t to) const;
};

SchedulingGraph build_scheduling_graph(const Network& network, std::size_t T,
                                       std::size_t cap_bits = default_cap_bits());

/// (M_L*, E*, M_R*): dominance-maximal edges of E_T, i.e. the maximal
/// independent sets of N^{2T} split into left and right halves.
struct MaximalEdgeGraph {
  std::size_t T = 0;
  std::vector<Block> left;
  std::vector<Block> right;
  std::vector<std::pair<Block, Block>> edges;
  bool complete = true;

  /// M_L* union M_R*, sorted.
  std::vector<Block> vertices() const;
};

MaximalEdgeGraph build_maximal(const Network& network, std::size_t T, const Budget& budget = {});

/// Whether consecutive slabs S[T,k], S[T,k+1] are all edges of E_T, checked
/// over lcm(P, T) / T slabs (one full repetition).
bool schedule_is_path(const Network& network, const PeriodicSchedule& s, std::size_t T);

}  // namespace delaysched
