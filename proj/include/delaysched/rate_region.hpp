#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "delaysched/budget.hpp"
#include "delaysched/cycles.hpp"
#include "delaysched/network.hpp"
#include "delaysched/rational.hpp"

namespace delaysched {

struct Provenance {
  std::string algorithm;  ///< "johnson", "incremental", "maximal-subgraph", "framed", ...
  std::size_t T = 0;
  std::size_t max_length = 0;  ///< 0 when unbounded or not applicable
  bool complete = true;
  /// "exact" when T reaches the threshold where cycle rates describe the
  /// true region, "outer-bound" below it, "framed" for the framed region.
  std::string regime;
};

/// V-representation: every generator is pairwise non-dominated and
/// irredundant in the convex hull. witnesses[i] realizes generators[i].
struct RegionDescription {
  std::vector<RateVector> generators;
  std::vector<Cycle> witnesses;
  Provenance provenance;

  std::size_t dimension() const { return generators.empty() ? 0 : generators.front().size(); }
};

/// "exact" iff T >= D* (binary profile) or T >= 2D* (general).
std::string regime_for(const Network& network, std::size_t T);

/// Pareto-maximal cycle rates reduced to the hull-irredundant subset.
RegionDescription region_from_cycles(const std::vector<Cycle>& cycles, std::size_t T);

/// Convex weights over the generators whose combination dominates `rate`,
/// or nullopt when no such combination exists.
std::optional<std::vector<Rational>> achieving_weights(const std::vector<RateVector>& generators,
                                                       const RateVector& rate);
bool is_achievable(const RegionDescription& region, const RateVector& rate);

/// Drops Pareto-dominated vectors and then every vector achievable from the
/// remaining ones. Output sorted; `keep[i]` receives the input index of
/// output i when non-null.
std::vector<RateVector> reduce_generators(const std::vector<RateVector>& vectors,
                                          std::vector<std::size_t>* keep = nullptr);

/// Indicator vectors of the maximal independent sets of the static
/// collision structure (L, I). Witnesses are the matching 1-cycles over a
/// single-column block.
RegionDescription framed_region(const Network& network);

/// Every inner generator is achievable in `outer`.
bool sandwich_check(const RegionDescription& inner, const RegionDescription& outer);

/// Largest a with (a, ..., a) in (T / (T + D*)) conv(rates of independent
/// sets of N^T).
Rational window_symmetric_rate(const Network& network, std::size_t T, std::size_t cap_bits = default_cap_bits());

struct CycleRegionOptions {
  std::string algorithm = "incremental";  ///< johnson | incremental | maximal-subgraph
  std::size_t T = 1;
  std::optional<std::size_t> max_length;
  Budget budget;
  std::size_t threads = 1;
  std::size_t cap_bits = default_cap_bits();
};

struct CycleSearch {
  std::vector<Cycle> cycles;
  std::vector<LengthStats> stats;
  bool complete = true;
};

/// Runs the requested enumeration; max_length is required for the two
/// maximal-structure algorithms.
CycleSearch find_cycles(const Network& network, const CycleRegionOptions& options);
RegionDescription cycle_region(const Network& network, const CycleRegionOptions& options);

}  // namespace delaysched
