#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "delaysched/cycles.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"
#include "random_networks.hpp"

using namespace delaysched;
using fixtures::rates;
using fixtures::v;

namespace {

using Edge = std::pair<BitMatrix, BitMatrix>;

std::set<Edge> edges_from_rows(const std::vector<std::size_t>& sources, const std::vector<std::size_t>& targets,
                               const std::vector<std::string>& rows) {
  std::set<Edge> out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (rows[r][c] == '1') out.insert({v(sources[r]), v(targets[c])});
    }
  }
  return out;
}

std::set<Edge> as_set(const std::vector<Edge>& e) { return {e.begin(), e.end()}; }

const std::vector<std::size_t> kAll = {0, 1, 2, 3, 4, 5, 6, 7, 8};
const std::vector<std::size_t> kMaximal = {5, 6, 7, 8};

bool valid_cycle(const Network& n, const Cycle& c) {
  const BlockPath p = c.closed_path();
  for (std::size_t i = 0; i + 1 < p.size(); ++i) {
    if (!has_edge(n, p[i], p[i + 1])) return false;
  }
  const std::set<BitMatrix> distinct(c.blocks().begin(), c.blocks().end());
  return distinct.size() == c.length();
}

/// Maximal length-k paths of the full scheduling graph: walks where setting
/// any single 0 bit breaks some edge (the edge set is downward closed).
std::vector<BlockPath> maximal_paths(const Network& n, const oracle::Graph& g, std::size_t k) {
  std::vector<BlockPath> out;
  std::vector<std::size_t> walk;
  std::function<void(std::size_t)> extend = [&](std::size_t at) {
    if (walk.size() == k + 1) {
      BlockPath p;
      for (std::size_t i : walk) p.push_back(g.vertices[i]);
      bool maximal = true;
      for (std::size_t i = 0; i < p.size() && maximal; ++i) {
        for (std::size_t pos = 0; pos < p[i].size() && maximal; ++pos) {
          if (p[i].test(pos)) continue;
          BlockPath q = p;
          q[i].assign(pos, true);
          bool ok = oracle::zero_extended_collision_free(n, q[i]);
          for (std::size_t j = 0; j + 1 < q.size(); ++j) ok = ok && oracle::edge(n, q[j], q[j + 1]);
          if (ok) maximal = false;
        }
      }
      if (maximal) out.push_back(p);
      return;
    }
    for (std::size_t w : g.adj[at]) {
      walk.push_back(w);
      extend(w);
      walk.pop_back();
    }
  };
  for (std::size_t s = 0; s < g.vertices.size(); ++s) {
    walk.assign(1, s);
    extend(s);
  }
  return out;
}

}  // namespace

TEST_CASE("path dominance") {
  const BlockPath a = {v(5), v(8)};
  CHECK(dominates(a, a));
  CHECK(dominates(a, {v(1), v(4)}));
  CHECK_FALSE(dominates({v(1), v(4)}, {v(4), v(1)}));
  CHECK_FALSE(dominates({v(4), v(1)}, {v(1), v(4)}));
  CHECK_THROWS_AS(dominates(a, {v(5)}), std::invalid_argument);
}

TEST_CASE("cycle canonical form") {
  const Cycle c({v(8), v(7), v(6), v(5)});
  CHECK(c.blocks().front() == v(8));
  CHECK(c == Cycle({v(6), v(5), v(8), v(7)}));
  CHECK(c.closed_path().size() == 5);
  CHECK(c.closed_path().front() == c.closed_path().back());
  CHECK(c.dominates(Cycle({v(3), v(2), v(1), v(4)})));
  CHECK(c.dominates(c));
  CHECK_FALSE(Cycle({v(5), v(6)}).dominates(c));
  CHECK(Cycle({v(5)}) < Cycle({v(0), v(1)}));
}

TEST_CASE("Johnson enumeration matches brute force on the line network") {
  const Network n = fixtures::line41();
  const SchedulingGraph g = build_scheduling_graph(n, 1);
  const CycleSet all = johnson_cycles(g);
  CHECK(all.complete);
  const auto expected = oracle::simple_cycles(oracle::scheduling_graph(n, 1), 9);
  CHECK(all.cycles.size() == expected.size());
  CHECK(all.cycles.size() == 7653);
  std::set<std::vector<BitMatrix>> got;
  for (const auto& c : all.cycles) got.insert(c.blocks());
  CHECK(got == expected);

  const CycleSet short_ones = johnson_cycles(g, 3);
  CHECK(short_ones.cycles.size() == oracle::simple_cycles(oracle::scheduling_graph(n, 1), 3).size());
}

TEST_CASE("Johnson enumeration matches brute force on random graphs") {
  std::mt19937 rng(61);
  for (int i = 0; i < 25; ++i) {
    const Network n = corpus::random_network(rng, 3, i % 2 == 0, 1, 0.8);
    const SchedulingGraph g = build_scheduling_graph(n, 1);
    const oracle::Graph o = oracle::scheduling_graph(n, 1);
    for (std::size_t bound : {std::size_t{2}, std::size_t{4}}) {
      std::set<std::vector<BitMatrix>> got;
      for (const auto& c : johnson_cycles(g, bound).cycles) got.insert(c.blocks());
      CHECK(got == oracle::simple_cycles(o, bound));
    }
    if (g.vertices.size() <= 6) {
      std::set<std::vector<BitMatrix>> got;
      for (const auto& c : johnson_cycles(g).cycles) got.insert(c.blocks());
      CHECK(got == oracle::simple_cycles(o, g.vertices.size()));
    }
  }
}

TEST_CASE("Johnson edge cases") {
  SchedulingGraph loop;
  loop.T = 1;
  loop.vertices = {BitMatrix(1, 1)};
  loop.successors = {{0}};
  const CycleSet one = johnson_cycles(loop);
  REQUIRE(one.cycles.size() == 1);
  CHECK(one.cycles[0].length() == 1);

  const SchedulingGraph g = build_scheduling_graph(fixtures::line41(), 1);
  const CycleSet self = johnson_cycles(g, 1);
  std::set<BitMatrix> loops;
  for (const auto& c : self.cycles) loops.insert(c.blocks()[0]);
  CHECK(loops == std::set<BitMatrix>{v(0), v(1), v(2), v(3), v(4), v(5)});
  std::set<RateVector> best;
  for (const auto& c : pareto_filter(self.cycles)) best.insert(rate_of_cycle(c));
  CHECK(best == std::set<RateVector>{rates("0,1,0,0"), rates("0,0,1,0"), rates("1,0,0,1")});

  int seen = 0;
  const bool finished = for_each_johnson_cycle(g, std::nullopt, {}, [&](const Cycle&) { return ++seen < 10; });
  CHECK_FALSE(finished);
  CHECK(seen == 10);
  CHECK_FALSE(johnson_cycles(g, std::nullopt, Budget::seconds(0)).complete);
}

TEST_CASE("cycles dominated by a path") {
  const std::vector<Cycle> zero = path_to_cycles({v(5), v(0)});
  REQUIRE(zero.size() == 1);
  CHECK(zero[0] == Cycle({v(0)}));

  const std::vector<Cycle> four = path_to_cycles({v(8), v(7), v(6), v(5), v(8)});
  REQUIRE(four.size() == 1);
  CHECK(four[0] == Cycle({v(8), v(7), v(6), v(5)}));

  // Repeated middle blocks get split bit by bit.
  const std::vector<Cycle> split = path_to_cycles({v(5), v(5), v(5)});
  for (const auto& c : split) {
    CHECK(c.length() == 2);
    CHECK(Cycle({v(5), v(1)}).dominates(c) + Cycle({v(5), v(4)}).dominates(c) + Cycle({v(1), v(4)}).dominates(c) +
              Cycle({v(1), v(0)}).dominates(c) + Cycle({v(4), v(0)}).dominates(c) >= 1);
  }
  CHECK(std::find(split.begin(), split.end(), Cycle({v(5), v(1)})) != split.end());
  CHECK(std::find(split.begin(), split.end(), Cycle({v(5), v(4)})) != split.end());
}

TEST_CASE("path splitting finds every maximal dominated cycle") {
  const Network n = fixtures::line41();
  const oracle::Graph g = oracle::scheduling_graph(n, 1);
  std::mt19937 rng(67);
  std::uniform_int_distribution<std::size_t> start(0, g.vertices.size() - 1);
  for (int sample = 0; sample < 150; ++sample) {
    const std::size_t k = 1 + static_cast<std::size_t>(sample % 4);
    std::size_t at = start(rng);
    BlockPath path{g.vertices[at]};
    for (std::size_t step = 0; step < k; ++step) {
      std::uniform_int_distribution<std::size_t> pick(0, g.adj[at].size() - 1);
      at = g.adj[at][pick(rng)];
      path.push_back(g.vertices[at]);
    }
    const std::vector<Cycle> found = path_to_cycles(path);
    for (const auto& c : found) {
      CHECK(c.length() == k);
      CHECK(valid_cycle(n, c));
      bool under = false;
      BlockPath closed = path;
      closed.back() = path.front() & path.back();
      closed.front() = closed.back();
      for (std::size_t r = 0; r < k && !under; ++r) {
        std::vector<BitMatrix> rot(c.blocks().begin(), c.blocks().end());
        std::rotate(rot.begin(), rot.begin() + static_cast<std::ptrdiff_t>(r), rot.end());
        under = true;
        for (std::size_t i = 0; i < k; ++i) under = under && closed[i].dominates(rot[i]);
      }
      CHECK(under);
    }
    for (const auto& want : oracle::maximal_dominated_cycles(path)) {
      const Cycle target(want);
      CHECK(std::any_of(found.begin(), found.end(), [&](const Cycle& c) { return c.dominates(target); }));
    }
  }
}

TEST_CASE("layered graphs of the line network") {
  const Network n = fixtures::line41();
  const std::set<Edge> u0 = edges_from_rows(kMaximal, kAll, {"000001001", "000011000", "111000100", "010100110"});
  const std::set<Edge> u1p = edges_from_rows(kAll, kMaximal, {"0010", "0001", "0100", "0010", "0110", "1001", "1000", "0100", "0110"});
  const std::set<Edge> u2p = edges_from_rows(kAll, kMaximal, {"0011", "0001", "1100", "0010", "1111", "1001", "1000", "0100", "0110"});

  const LayeredGraph g1 = build_layered(n, 1, 1);
  REQUIRE(g1.edges.size() == 1);
  CHECK(g1.edges[0].size() == 6);
  CHECK(g1.path_count() == 6);

  const LayeredGraph g2 = build_layered(n, 1, 2);
  REQUIRE(g2.edges.size() == 2);
  CHECK(as_set(g2.edges[0]) == u0);
  CHECK(as_set(g2.edges[0]).size() == 12);
  CHECK(as_set(g2.edges[1]) == u1p);
  CHECK(g2.path_count() == 16);

  const LayeredGraph g3 = build_layered(n, 1, 3);
  REQUIRE(g3.edges.size() == 3);
  CHECK(as_set(g3.edges[0]) == u0);
  CHECK(as_set(g3.edges[2]) == u2p);
  CHECK(g3.path_count() == 64);

  LayeredBuilder builder(build_maximal(n, 1));
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(builder.current().k == k);
    std::uint64_t listed = 0;
    builder.current().for_each_path([&](const BlockPath& p) {
      CHECK(p.size() == k + 1);
      for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(has_edge(n, p[i], p[i + 1]));
      ++listed;
      return true;
    });
    CHECK(listed == builder.current().path_count());
    builder.step();
  }
}

TEST_CASE("later layers stay inside the two-step projections") {
  for (const Network& n : {fixtures::line41(), make_line_network(5, 1), fixtures::hyper4(), fixtures::shifted4()}) {
    const MaximalEdgeGraph m = build_maximal(n, 1);
    std::set<Edge> tilde_u_prime;
    for (const auto& [a, b] : m.edges) {
      for (const auto& [b2, c] : m.edges) tilde_u_prime.insert({b & b2, c});
    }
    std::set<Edge> tilde_u;
    for (const auto& [a, b] : tilde_u_prime) {
      for (const auto& [b2, c] : m.edges) tilde_u.insert({a, b & b2});
    }
    LayeredBuilder builder(m);
    builder.step();
    for (std::size_t k = 2; k <= 5; ++k) {
      const LayeredGraph& g = builder.current();
      for (const auto& e : g.edges.back()) CHECK(tilde_u_prime.count(e) == 1);
      for (std::size_t i = 1; i + 1 < g.edges.size(); ++i) {
        for (const auto& e : g.edges[i]) CHECK(tilde_u.count(e) == 1);
      }
      builder.step();
    }
  }
}

TEST_CASE("layered graphs hold every maximal path") {
  for (const Network& n : {fixtures::line41(), fixtures::hyper4()}) {
    const oracle::Graph full = oracle::scheduling_graph(n, 1);
    LayeredBuilder builder(build_maximal(n, 1));
    const std::size_t k_max = n == fixtures::line41() ? 4 : 3;
    for (std::size_t k = 1; k <= k_max; ++k) {
      std::set<BlockPath> in_layers;
      builder.current().for_each_path([&](const BlockPath& p) {
        in_layers.insert(p);
        return true;
      });
      const auto maximal = maximal_paths(n, full, k);
      if (k == 4 && n == fixtures::line41()) CHECK(maximal.size() == 81);
      for (const auto& p : maximal) CHECK(in_layers.count(p) == 1);
      builder.step();
    }
  }
}

TEST_CASE("walks of the maximal edge graph") {
  const MaximalEdgeGraph m = build_maximal(fixtures::line41(), 1);
  const std::vector<std::uint64_t> expected = {6, 9, 15, 25};
  oracle::Graph g;
  g.vertices = m.vertices();
  g.adj.resize(g.vertices.size());
  for (const auto& [a, b] : m.edges) {
    const auto from = static_cast<std::size_t>(std::find(g.vertices.begin(), g.vertices.end(), a) - g.vertices.begin());
    const auto to = static_cast<std::size_t>(std::find(g.vertices.begin(), g.vertices.end(), b) - g.vertices.begin());
    g.adj[from].push_back(to);
  }
  for (std::size_t k = 1; k <= 4; ++k) {
    CHECK(maximal_walk_count(m, k) == expected[k - 1]);
    CHECK(maximal_walk_count(m, k) == oracle::walk_count(g, k));
    std::uint64_t listed = 0;
    for_each_maximal_walk(m, k, [&](const BlockPath&) {
      ++listed;
      return true;
    });
    CHECK(listed == expected[k - 1]);
  }
}

TEST_CASE("search algorithms return valid cycles") {
  const Network n = fixtures::line41();
  for (auto* search : {&algorithm_A, &algorithm_B}) {
    SearchOptions options;
    options.k_max = 4;
    const SearchResult r = (*search)(n, 1, options);
    CHECK(r.complete);
    CHECK(r.stats.size() == 4);
    for (const auto& c : r.cycles) CHECK(valid_cycle(n, c));
    std::set<RateVector> best;
    for (const auto& c : pareto_filter(r.cycles)) best.insert(rate_of_cycle(c));
    CHECK(best.count(rates("1/2,1/2,1/2,1/2")) == 1);
    CHECK(best.count(rates("1,0,0,1")) == 1);

    options.k_max = 0;
    CHECK((*search)(n, 1, options).cycles.empty());
  }

  SearchOptions one;
  const SearchResult single = algorithm_A(fixtures::empty_profile(1), 1, one);
  REQUIRE(single.cycles.size() == 1);
  CHECK(single.cycles[0] == Cycle({fixtures::column("1")}));
}

TEST_CASE("incremental search dominates every short cycle") {
  std::vector<std::pair<Network, std::size_t>> cases = {{fixtures::line41(), 1}, {fixtures::hyper4(), 1},
                                                         {fixtures::shifted4(), 1}, {make_line_network(4, 2), 1}};
  for (const auto& [n, T] : cases) {
    SearchOptions options;
    options.k_max = 4;
    const SearchResult a = algorithm_A(n, T, options);
    for (const auto& c : johnson_cycles(build_scheduling_graph(n, T), 4).cycles) {
      CHECK(std::any_of(a.cycles.begin(), a.cycles.end(), [&](const Cycle& x) { return x.dominates(c); }));
    }
  }
}

TEST_CASE("sub-paths of found cycles stay paths") {
  std::mt19937 rng(71);
  const Network n = fixtures::hyper4();
  SearchOptions options;
  options.k_max = 3;
  const SearchResult r = algorithm_A(n, 2, options);
  std::bernoulli_distribution clear(0.3);
  for (const auto& c : r.cycles) {
    BlockPath p = c.closed_path();
    for (auto& block : p) {
      for (std::size_t pos = 0; pos < block.size(); ++pos) {
        if (clear(rng)) block.assign(pos, false);
      }
    }
    for (std::size_t i = 0; i + 1 < p.size(); ++i) CHECK(has_edge(n, p[i], p[i + 1]));
  }
}

TEST_CASE("threaded search matches serial search") {
  for (auto* search : {&algorithm_A, &algorithm_B}) {
    SearchOptions serial;
    serial.k_max = 4;
    SearchOptions parallel = serial;
    parallel.threads = 4;
    const SearchResult s = (*search)(make_line_network(5, 1), 1, serial);
    const SearchResult p = (*search)(make_line_network(5, 1), 1, parallel);
    CHECK(s.cycles == p.cycles);
  }
}

TEST_CASE("dominance pruning and rate filtering") {
  const std::vector<Cycle> pruned = maximal_cycles({Cycle({v(1)}), Cycle({v(5)}), Cycle({v(1), v(4)}), Cycle({v(5), v(8)})});
  CHECK(pruned == std::vector<Cycle>{Cycle({v(5)}), Cycle({v(5), v(8)})});

  CHECK(pareto_filter({Cycle({v(0)}), Cycle({v(2)})}) == std::vector<Cycle>{Cycle({v(2)})});
  const std::vector<Cycle> tied = pareto_filter({Cycle({v(5), v(1)}), Cycle({v(4), v(1)}), Cycle({v(5), v(4)})});
  CHECK(tied.size() == 2);
  const std::vector<Cycle> equal = pareto_filter({Cycle({v(1), v(4)}), Cycle({v(5), v(0)})});
  CHECK(equal.size() == 2);
  CHECK(rate_of_cycle(equal[0]) == rate_of_cycle(equal[1]));
}

TEST_CASE("rates of closed paths") {
  CHECK(rate_of_closed_path({v(5), v(5)}, 1) == rates("1,0,0,1"));
  CHECK(rate_of_cycle(Cycle({v(8), v(7), v(6), v(5)})) == rates("1/2,1/2,1/2,1/2"));
  CHECK(rate_of_closed_path({fixtures::columns({"1000", "0001"}), fixtures::columns({"1000", "0001"})}, 2) ==
        rates("1/2,0,0,1/2"));
  CHECK_THROWS(rate_of_closed_path({v(5), v(8)}, 1));
  CHECK_THROWS(rate_of_closed_path({v(5), v(5)}, 2));
}
