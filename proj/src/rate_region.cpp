#include "delaysched/rate_region.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "delaysched/lp.hpp"
#include "delaysched/periodic_graph.hpp"
#include "delaysched/scheduling_graph.hpp"

namespace delaysched {

std::string regime_for(const Network& network, std::size_t T) {
  const auto d = static_cast<std::size_t>(character(network));
  const std::size_t threshold = is_binary(network) ? d : 2 * d;
  return T >= threshold ? "exact" : "outer-bound";
}

std::optional<std::vector<Rational>> achieving_weights(const std::vector<RateVector>& generators,
                                                       const RateVector& rate) {
  if (generators.empty()) return std::nullopt;
  const std::size_t dim = rate.size();
  for (const auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("rate vector dimension differs from the region");
  }
  LinearProgram lp;
  lp.variables = generators.size();
  lp.add(std::vector<Rational>(generators.size(), Rational(1)), Relation::Equal, Rational(1));
  for (std::size_t l = 0; l < dim; ++l) {
    std::vector<Rational> row;
    row.reserve(generators.size());
    for (const auto& g : generators) row.push_back(g[l]);
    lp.add(std::move(row), Relation::GreaterEqual, rate[l]);
  }
  LpSolution solution = solve(lp);
  if (solution.status != LpStatus::Optimal) return std::nullopt;
  return std::move(solution.x);
}

bool is_achievable(const RegionDescription& region, const RateVector& rate) {
  if (!region.generators.empty() && region.dimension() != rate.size()) {
    throw std::invalid_argument("rate vector has " + std::to_string(rate.size()) + " entries, region has " +
                                std::to_string(region.dimension()));
  }
  return achieving_weights(region.generators, rate).has_value();
}

std::vector<RateVector> reduce_generators(const std::vector<RateVector>& vectors, std::vector<std::size_t>* keep) {
  std::map<RateVector, std::size_t> distinct;
  for (std::size_t i = 0; i < vectors.size(); ++i) distinct.emplace(vectors[i], i);

  std::vector<std::pair<RateVector, std::size_t>> maximal;
  for (const auto& [v, index] : distinct) {
    const bool dominated =
        std::any_of(distinct.begin(), distinct.end(), [&](const auto& other) { return other.first.strictly_dominates(v); });
    if (!dominated) maximal.emplace_back(v, index);
  }

  for (std::size_t i = 0; i < maximal.size();) {
    std::vector<RateVector> others;
    for (std::size_t j = 0; j < maximal.size(); ++j) {
      if (j != i) others.push_back(maximal[j].first);
    }
    if (achieving_weights(others, maximal[i].first)) {
      maximal.erase(maximal.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }

  std::vector<RateVector> out;
  if (keep) keep->clear();
  for (auto& [v, index] : maximal) {
    out.push_back(v);
    if (keep) keep->push_back(index);
  }
  return out;
}

RegionDescription region_from_cycles(const std::vector<Cycle>& cycles, std::size_t T) {
  std::vector<Cycle> sorted = cycles;
  std::sort(sorted.begin(), sorted.end());
  std::vector<RateVector> rates;
  rates.reserve(sorted.size());
  for (const auto& c : sorted) {
    if (c.blocks().front().cols() != T) throw std::invalid_argument("cycle block width differs from T");
    rates.push_back(rate_of_cycle(c));
  }
  RegionDescription region;
  std::vector<std::size_t> keep;
  region.generators = reduce_generators(rates, &keep);
  for (std::size_t index : keep) region.witnesses.push_back(sorted[index]);
  region.provenance.T = T;
  return region;
}

RegionDescription framed_region(const Network& network) {
  const WindowGraph window = build_window(static_network(network), 1);
  const MaximalSets maximal = enumerate_maximal_independent_sets(window);
  std::vector<Cycle> cycles;
  for (const auto& set : maximal.sets) cycles.emplace_back(std::vector<Block>{set});
  RegionDescription region = region_from_cycles(cycles, 1);
  region.provenance.algorithm = "framed";
  region.provenance.T = 1;
  region.provenance.complete = maximal.complete;
  region.provenance.regime = "framed";
  return region;
}

bool sandwich_check(const RegionDescription& inner, const RegionDescription& outer) {
  return std::all_of(inner.generators.begin(), inner.generators.end(),
                     [&](const RateVector& g) { return is_achievable(outer, g); });
}

Rational window_symmetric_rate(const Network& network, std::size_t T, std::size_t cap_bits) {
  const WindowGraph window = build_window(network, T);
  const std::size_t links = network.link_count();
  std::set<std::vector<long>> sums;
  for_each_independent_set(
      window,
      [&](const BitMatrix& a) {
        std::vector<long> v(links);
        for (std::size_t l = 0; l < links; ++l) v[l] = static_cast<long>(a.row_count(l));
        sums.insert(std::move(v));
      },
      cap_bits);

  std::vector<RateVector> rates;
  for (const auto& v : sums) {
    RateVector r(links);
    for (std::size_t l = 0; l < links; ++l) r[l] = Rational(v[l], static_cast<long>(T));
    for (std::size_t l = 0; l < links; ++l) r[l].canonicalize();
    rates.push_back(std::move(r));
  }
  const std::vector<RateVector> generators = reduce_generators(rates);

  // Variables: weights, then the symmetric level a.
  LinearProgram lp;
  lp.variables = generators.size() + 1;
  std::vector<Rational> simplex(lp.variables, Rational(1));
  simplex.back() = 0;
  lp.add(std::move(simplex), Relation::Equal, Rational(1));
  for (std::size_t l = 0; l < links; ++l) {
    std::vector<Rational> row;
    for (const auto& g : generators) row.push_back(g[l]);
    row.emplace_back(-1);
    lp.add(std::move(row), Relation::GreaterEqual, Rational(0));
  }
  lp.objective.assign(lp.variables, Rational(0));
  lp.objective.back() = 1;
  const LpSolution solution = solve(lp);
  if (solution.status != LpStatus::Optimal) throw std::logic_error("window rate program has no optimum");
  const auto t = static_cast<long>(T);
  Rational scale(t, t + static_cast<long>(character(network)));
  scale.canonicalize();
  Rational out = solution.value * scale;
  out.canonicalize();
  return out;
}

CycleSearch find_cycles(const Network& network, const CycleRegionOptions& options) {
  CycleSearch out;
  if (options.algorithm == "johnson") {
    const SchedulingGraph graph = build_scheduling_graph(network, options.T, options.cap_bits);
    CycleSet set = johnson_cycles(graph, options.max_length, options.budget);
    out.cycles = std::move(set.cycles);
    out.complete = set.complete;
    return out;
  }
  if (!options.max_length) throw std::invalid_argument("algorithm '" + options.algorithm + "' needs a maximum length");
  SearchOptions search{*options.max_length, options.budget, options.threads};
  SearchResult result;
  if (options.algorithm == "incremental") {
    result = algorithm_A(network, options.T, search);
  } else if (options.algorithm == "maximal-subgraph") {
    result = algorithm_B(network, options.T, search);
  } else {
    throw std::invalid_argument("unknown algorithm '" + options.algorithm + "'");
  }
  out.cycles = std::move(result.cycles);
  out.stats = std::move(result.stats);
  out.complete = result.complete;
  return out;
}

RegionDescription cycle_region(const Network& network, const CycleRegionOptions& options) {
  const CycleSearch search = find_cycles(network, options);
  RegionDescription region = region_from_cycles(search.cycles, options.T);
  region.provenance.algorithm = options.algorithm;
  region.provenance.T = options.T;
  region.provenance.max_length = options.max_length.value_or(0);
  region.provenance.complete = search.complete;
  region.provenance.regime = regime_for(network, options.T);
  return region;
}

}  // namespace delaysched
