#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <vector>

#include "delaysched/bit_matrix.hpp"
#include "delaysched/budget.hpp"
#include "delaysched/network.hpp"

namespace delaysched {

/// Brute-force enumeration refused because |L| * T is above the cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 24 unless DELAYSCHED_CAP_BITS holds a positive integer.
std::size_t default_cap_bits();

struct WindowVertex {
  LinkIndex link = 0;
  std::size_t time = 0;
  friend bool operator==(const WindowVertex&, const WindowVertex&) = default;
  friend auto operator<=>(const WindowVertex&, const WindowVertex&) = default;
};

/// Edge (l,t) -> {(l_i, t + D_L(l, l_i))} of the periodic hypergraph with
/// every endpoint inside the window. `mask` is the union of source and
/// targets: an assignment violates the edge iff it contains the mask.
struct Hyperedge {
  WindowVertex source;
  std::vector<WindowVertex> targets;
  BitMatrix mask;
};

/// Induced subgraph N^T of the periodic hypergraph on L x {0..T-1}.
/// Edges that leave the window are dropped, never truncated.
class WindowGraph {
 public:
  WindowGraph(const Network& network, std::size_t T);

  std::size_t link_count() const { return links_; }
  std::size_t T() const { return T_; }
  std::size_t bits() const { return links_ * T_; }
  const std::vector<Hyperedge>& hyperedges() const { return edges_; }
  /// Distinct violation masks.
  const std::vector<BitMatrix>& masks() const { return masks_; }
  /// Every mask has at most two vertices.
  bool pairwise() const { return pairwise_; }

  bool is_independent(const BitMatrix& a) const;
  /// Masks whose highest set position is `pos`.
  const std::vector<std::size_t>& masks_closing_at(std::size_t pos) const { return closing_[pos]; }
  /// Masks containing `pos`.
  const std::vector<std::size_t>& masks_touching(std::size_t pos) const { return touching_[pos]; }

  BitMatrix empty_assignment() const { return BitMatrix(links_, T_); }

 private:
  std::size_t links_ = 0;
  std::size_t T_ = 0;
  std::vector<Hyperedge> edges_;
  std::vector<BitMatrix> masks_;
  std::vector<std::vector<std::size_t>> closing_;
  std::vector<std::vector<std::size_t>> touching_;
  bool pairwise_ = true;
};

WindowGraph build_window(const Network& network, std::size_t T);
bool is_independent(const WindowGraph& window, const BitMatrix& assignment);

/// Visits every independent assignment exactly once, in a fixed order
/// (depth-first over positions, the 0 branch first).
void for_each_independent_set(const WindowGraph& window, const std::function<void(const BitMatrix&)>& visit,
                              std::size_t cap_bits = default_cap_bits());
std::vector<BitMatrix> enumerate_independent_sets(const WindowGraph& window,
                                                  std::size_t cap_bits = default_cap_bits());

struct MaximalSets {
  std::vector<BitMatrix> sets;  ///< sorted ascending
  bool complete = true;         ///< false when the budget ran out
};

/// Inclusion-maximal independent assignments. Pairwise windows run pivoted
/// Bron-Kerbosch on the compatibility relation; general hypergraphs use
/// branch and bound with a maximality certificate at every leaf.
MaximalSets enumerate_maximal_independent_sets(const WindowGraph& window, const Budget& budget = {});

/// True iff `a` is independent and setting any 0 bit breaks independence.
bool is_maximal_independent(const WindowGraph& window, const BitMatrix& a);

}  // namespace delaysched
