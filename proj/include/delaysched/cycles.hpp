#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/budget.hpp"
#include "delaysched/network.hpp"
#include "delaysched/rational.hpp"
#include "delaysched/scheduling_graph.hpp"

namespace delaysched {

/// Sequence of blocks (A_0, ..., A_k).
using BlockPath = std::vector<Block>;

/// Component-wise >= on the juxtaposed blocks. Throws std::invalid_argument
/// on a length mismatch.
bool dominates(const BlockPath& a, const BlockPath& b);

/// Elementary cycle (A_0, ..., A_{k-1}, A_0) kept without the closing
/// block, rotated so the smallest block comes first.
class Cycle {
 public:
  Cycle() = default;
  /// Rotates into canonical form; blocks must be pairwise distinct.
  explicit Cycle(std::vector<Block> blocks);

  std::size_t length() const { return blocks_.size(); }
  const std::vector<Block>& blocks() const { return blocks_; }
  /// (A_0, ..., A_{k-1}, A_0).
  BlockPath closed_path() const;

  /// Some rotation of this cycle dominates `other` block by block.
  bool dominates(const Cycle& other) const;

  friend bool operator==(const Cycle& a, const Cycle& b) { return a.blocks_ == b.blocks_; }
  /// Shorter cycles first, then lexicographic on blocks.
  friend bool operator<(const Cycle& a, const Cycle& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.blocks_ < b.blocks_;
  }

 private:
  std::vector<Block> blocks_;
};

struct CycleSet {
  std::vector<Cycle> cycles;  ///< sorted by (length, blocks)
  bool complete = true;
};

/// Elementary cycles of a materialized scheduling graph. Without a length
/// bound this is Johnson's algorithm; with one it is a bounded backtracking
/// search rooted at the smallest vertex of each cycle. `visit` returning
/// false stops the enumeration (reported as incomplete).
bool for_each_johnson_cycle(const SchedulingGraph& graph, std::optional<std::size_t> max_len,
                            const Budget& budget, const std::function<bool(const Cycle&)>& visit);

CycleSet johnson_cycles(const SchedulingGraph& graph, std::optional<std::size_t> max_len = std::nullopt,
                        const Budget& budget = {});

/// Path2Cycles: cycles of length k dominated by the length-k path
/// (B_0, ..., B_k), obtained by splitting repeated blocks bit by bit.
std::vector<Cycle> path_to_cycles(const BlockPath& path);

/// G_k: layer 0 is M_L*, layer k is M_R*; edges[i] joins layer i to i+1.
/// For k >= 2, edges[0..k-2] are U_0..U_{k-2} and edges[k-1] is U'_{k-1}.
struct LayeredGraph {
  std::size_t k = 0;
  std::vector<Block> left;
  std::vector<Block> right;
  std::vector<std::vector<std::pair<Block, Block>>> edges;

  /// Number of length-k paths from M_L* to M_R*.
  std::uint64_t path_count() const;
  /// Every such path in lexicographic order; `visit` returning false stops.
  bool for_each_path(const std::function<bool(const BlockPath&)>& visit) const;
};

/// Incremental builder: step() turns G_k into G_{k+1} by extending the
/// last layer with E* and pruning middles that are strictly dominated
/// within the same outer pair.
class LayeredBuilder {
 public:
  explicit LayeredBuilder(MaximalEdgeGraph maximal);

  const LayeredGraph& current() const { return graph_; }
  const MaximalEdgeGraph& maximal() const { return maximal_; }
  void step();

 private:
  MaximalEdgeGraph maximal_;
  LayeredGraph graph_;
};

LayeredGraph build_layered(const Network& network, std::size_t T, std::size_t k);

/// Number of walks with k edges in (M_L* u M_R*, E*).
std::uint64_t maximal_walk_count(const MaximalEdgeGraph& maximal, std::size_t k);
/// Walks with k edges in (M_L* u M_R*, E*), lexicographic order.
bool for_each_maximal_walk(const MaximalEdgeGraph& maximal, std::size_t k,
                           const std::function<bool(const BlockPath&)>& visit);

struct SearchOptions {
  std::size_t k_max = 1;
  Budget budget;
  std::size_t threads = 1;
};

struct LengthStats {
  std::size_t k = 0;
  std::uint64_t paths = 0;   ///< paths handed to Path2Cycles
  std::size_t cycles = 0;    ///< distinct k-cycles kept after pruning
};

struct SearchResult {
  std::vector<Cycle> cycles;  ///< dominance-maximal within each length
  std::vector<LengthStats> stats;
  bool complete = true;
};

/// Paths of G_k for k = 1..k_max through Path2Cycles.
SearchResult algorithm_A(const Network& network, std::size_t T, const SearchOptions& options);
/// Walks of (M_L* u M_R*, E*) up to length k_max through Path2Cycles.
SearchResult algorithm_B(const Network& network, std::size_t T, const SearchOptions& options);

/// Drops cycles strictly dominated (under some rotation) by another cycle
/// of the same length; output sorted.
std::vector<Cycle> maximal_cycles(std::vector<Cycle> cycles);

/// Per-slot rate R_P / T of a closed path (A_0, ..., A_k = A_0) of |L| x T
/// blocks.
RateVector rate_of_closed_path(const BlockPath& path, std::size_t T);
RateVector rate_of_cycle(const Cycle& cycle);

/// Cycles whose rate vectors are not strictly dominated by another cycle's
/// rate. Equal rate vectors are all kept; output sorted.
std::vector<Cycle> pareto_filter(const std::vector<Cycle>& cycles);

}  // namespace delaysched
