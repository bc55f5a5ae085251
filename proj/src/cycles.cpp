#include "delaysched/cycles.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

namespace delaysched {

bool dominates(const BlockPath& a, const BlockPath& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dominance needs paths of equal length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].dominates(b[i])) return false;
  }
  return true;
}

Cycle::Cycle(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  if (blocks_.empty()) throw std::invalid_argument("cycle needs at least one block");
  const auto smallest = std::min_element(blocks_.begin(), blocks_.end());
  std::rotate(blocks_.begin(), smallest, blocks_.end());
}

BlockPath Cycle::closed_path() const {
  BlockPath out = blocks_;
  out.push_back(blocks_.front());
  return out;
}

bool Cycle::dominates(const Cycle& other) const {
  const std::size_t k = length();
  if (k != other.length()) return false;
  for (std::size_t shift = 0; shift < k; ++shift) {
    bool all = true;
    for (std::size_t i = 0; i < k && all; ++i) all = blocks_[(i + shift) % k].dominates(other.blocks_[i]);
    if (all) return true;
  }
  return false;
}

namespace {

class Johnson {
 public:
  Johnson(const SchedulingGraph& graph, std::optional<std::size_t> max_len, const Budget& budget,
          const std::function<bool(const Cycle&)>& visit)
      : graph_(graph), max_len_(max_len), budget_(budget), visit_(visit) {}

  bool run() {
    const std::size_t n = graph_.vertices.size();
    in_scc_.assign(n, false);
    blocked_.assign(n, false);
    block_lists_.assign(n, {});
    for (start_ = 0; start_ < n && !stopped_; ++start_) {
      mark_component();
      if (!in_scc_[start_]) continue;
      if (max_len_) {
        bounded(start_);
      } else {
        for (std::size_t v = 0; v < n; ++v) {
          blocked_[v] = false;
          block_lists_[v].clear();
        }
        circuit(start_);
      }
    }
    return !stopped_;
  }

 private:
  // Strongly connected component of start_ within vertices >= start_.
  void mark_component() {
    const std::size_t n = graph_.vertices.size();
    std::vector<std::vector<std::size_t>> reverse(n);
    for (std::size_t v = start_; v < n; ++v) {
      for (std::size_t w : graph_.successors[v]) {
        if (w >= start_) reverse[w].push_back(v);
      }
    }
    auto reach = [&](auto&& next) {
      std::vector<bool> seen(n, false);
      std::vector<std::size_t> todo{start_};
      seen[start_] = true;
      while (!todo.empty()) {
        const std::size_t v = todo.back();
        todo.pop_back();
        for (std::size_t w : next(v)) {
          if (w >= start_ && !seen[w]) {
            seen[w] = true;
            todo.push_back(w);
          }
        }
      }
      return seen;
    };
    const auto forward = reach([&](std::size_t v) -> const std::vector<std::size_t>& { return graph_.successors[v]; });
    const auto backward = reach([&](std::size_t v) -> const std::vector<std::size_t>& { return reverse[v]; });
    bool nontrivial = graph_.has_edge(start_, start_);
    for (std::size_t v = 0; v < n; ++v) {
      in_scc_[v] = forward[v] && backward[v];
      if (v != start_ && in_scc_[v]) nontrivial = true;
    }
    if (!nontrivial) in_scc_[start_] = false;
  }

  void emit() {
    if (budget_.expired()) {
      stopped_ = true;
      return;
    }
    std::vector<Block> blocks;
    blocks.reserve(stack_.size());
    for (std::size_t v : stack_) blocks.push_back(graph_.vertices[v]);
    if (!visit_(Cycle(std::move(blocks)))) stopped_ = true;
  }

  void unblock(std::size_t u) {
    blocked_[u] = false;
    auto pending = std::move(block_lists_[u]);
    block_lists_[u].clear();
    for (std::size_t w : pending) {
      if (blocked_[w]) unblock(w);
    }
  }

  bool circuit(std::size_t v) {
    bool found = false;
    stack_.push_back(v);
    blocked_[v] = true;
    for (std::size_t w : graph_.successors[v]) {
      if (stopped_) break;
      if (!in_scc_[w]) continue;
      if (w == start_) {
        emit();
        found = true;
      } else if (!blocked_[w] && circuit(w)) {
        found = true;
      }
    }
    if (found) {
      unblock(v);
    } else {
      for (std::size_t w : graph_.successors[v]) {
        if (in_scc_[w] && std::find(block_lists_[w].begin(), block_lists_[w].end(), v) == block_lists_[w].end()) {
          block_lists_[w].push_back(v);
        }
      }
    }
    stack_.pop_back();
    return found;
  }

  void bounded(std::size_t v) {
    stack_.push_back(v);
    blocked_[v] = true;
    for (std::size_t w : graph_.successors[v]) {
      if (stopped_) break;
      if (!in_scc_[w]) continue;
      if (w == start_) {
        emit();
      } else if (!blocked_[w] && stack_.size() < *max_len_) {
        bounded(w);
      }
    }
    blocked_[v] = false;
    stack_.pop_back();
  }

  const SchedulingGraph& graph_;
  std::optional<std::size_t> max_len_;
  const Budget& budget_;
  const std::function<bool(const Cycle&)>& visit_;
  std::size_t start_ = 0;
  bool stopped_ = false;
  std::vector<bool> in_scc_;
  std::vector<bool> blocked_;
  std::vector<std::vector<std::size_t>> block_lists_;
  std::vector<std::size_t> stack_;
};

}  // namespace

bool for_each_johnson_cycle(const SchedulingGraph& graph, std::optional<std::size_t> max_len,
                            const Budget& budget, const std::function<bool(const Cycle&)>& visit) {
  if (max_len && *max_len == 0) return true;
  return Johnson(graph, max_len, budget, visit).run();
}

CycleSet johnson_cycles(const SchedulingGraph& graph, std::optional<std::size_t> max_len, const Budget& budget) {
  CycleSet out;
  out.complete = for_each_johnson_cycle(graph, max_len, budget, [&](const Cycle& c) {
    out.cycles.push_back(c);
    return true;
  });
  std::sort(out.cycles.begin(), out.cycles.end());
  return out;
}

namespace {

// DISTINCT of Path2Cycles. Blocks and flags are restored before returning,
// which gives each recursive call its own copy semantically.
void distinct(std::vector<Block>& blocks, std::vector<Block>& flags, std::set<Cycle>& out) {
  const std::size_t p = blocks.size();
  std::size_t i = 0;
  std::size_t j = 0;
  const auto find_duplicate = [&] {
    for (i = 1; i < p; ++i) {
      for (j = 0; j < i; ++j) {
        if (blocks[j] == blocks[i]) return true;
      }
    }
    return false;
  };
  if (!find_duplicate()) {
    out.insert(Cycle(blocks));
    return;
  }

  std::vector<std::pair<std::size_t, std::size_t>> open;  // (block index, position)
  for (std::size_t which : {j, i}) {
    blocks[which].for_each_set([&](std::size_t pos) {
      if (!flags[which].test(pos)) open.emplace_back(which, pos);
    });
  }
  for (const auto& [which, pos] : open) {
    blocks[which].assign(pos, false);
    distinct(blocks, flags, out);
    blocks[which].assign(pos, true);
    flags[which].assign(pos, true);
  }
  for (const auto& [which, pos] : open) flags[which].assign(pos, false);
}

}  // namespace

std::vector<Cycle> path_to_cycles(const BlockPath& path) {
  if (path.size() < 2) throw std::invalid_argument("Path2Cycles needs a path of length at least 1");
  const std::size_t k = path.size() - 1;
  std::vector<Block> blocks(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(k));
  blocks[0] = path.front() & path.back();
  std::vector<Block> flags(k, Block(path.front().rows(), path.front().cols()));
  std::set<Cycle> out;
  distinct(blocks, flags, out);
  return {out.begin(), out.end()};
}

namespace {

using Adjacency = std::map<Block, std::vector<Block>>;

Adjacency adjacency_of(const std::vector<std::pair<Block, Block>>& edges) {
  Adjacency adj;
  for (const auto& [a, b] : edges) adj[a].push_back(b);
  for (auto& [a, next] : adj) {
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
  }
  return adj;
}

}  // namespace

std::uint64_t LayeredGraph::path_count() const {
  std::map<Block, std::uint64_t> counts;
  for (const auto& a : left) counts[a] = 1;
  for (const auto& layer : edges) {
    std::map<Block, std::uint64_t> next;
    for (const auto& [a, b] : layer) {
      const auto it = counts.find(a);
      if (it != counts.end()) next[b] += it->second;
    }
    counts = std::move(next);
  }
  std::uint64_t total = 0;
  for (const auto& [b, n] : counts) {
    if (std::binary_search(right.begin(), right.end(), b)) total += n;
  }
  return total;
}

bool LayeredGraph::for_each_path(const std::function<bool(const BlockPath&)>& visit) const {
  std::vector<Adjacency> adj;
  adj.reserve(edges.size());
  for (const auto& layer : edges) adj.push_back(adjacency_of(layer));
  BlockPath path;
  bool stopped = false;
  std::function<void(std::size_t)> extend = [&](std::size_t depth) {
    if (stopped) return;
    if (depth == edges.size()) {
      if (std::binary_search(right.begin(), right.end(), path.back()) && !visit(path)) stopped = true;
      return;
    }
    const auto it = adj[depth].find(path.back());
    if (it == adj[depth].end()) return;
    for (const auto& b : it->second) {
      path.push_back(b);
      extend(depth + 1);
      path.pop_back();
      if (stopped) return;
    }
  };
  for (const auto& a : left) {
    path.assign(1, a);
    extend(0);
    if (stopped) break;
  }
  return !stopped;
}

LayeredBuilder::LayeredBuilder(MaximalEdgeGraph maximal) : maximal_(std::move(maximal)) {
  graph_.k = 1;
  graph_.left = maximal_.left;
  graph_.right = maximal_.right;
  graph_.edges.push_back(maximal_.edges);
}

void LayeredBuilder::step() {
  std::map<std::pair<Block, Block>, std::set<Block>> triples;  // (A, C) -> middles
  for (const auto& [a, b] : graph_.edges.back()) {
    for (const auto& [b2, c] : maximal_.edges) triples[{a, c}].insert(b & b2);
  }
  std::set<std::pair<Block, Block>> first;
  std::set<std::pair<Block, Block>> second;
  for (const auto& [outer, middles] : triples) {
    for (const auto& m : middles) {
      const bool dominated = std::any_of(middles.begin(), middles.end(),
                                         [&](const Block& other) { return other != m && other.dominates(m); });
      if (dominated) continue;
      first.emplace(outer.first, m);
      second.emplace(m, outer.second);
    }
  }
  graph_.edges.back().assign(first.begin(), first.end());
  graph_.edges.emplace_back(second.begin(), second.end());
  ++graph_.k;
}

LayeredGraph build_layered(const Network& network, std::size_t T, std::size_t k) {
  if (k == 0) throw std::invalid_argument("G_k needs k >= 1");
  LayeredBuilder builder(build_maximal(network, T));
  while (builder.current().k < k) builder.step();
  return builder.current();
}

namespace {

Adjacency maximal_adjacency(const MaximalEdgeGraph& maximal) {
  Adjacency adj = adjacency_of(maximal.edges);
  for (const auto& v : maximal.vertices()) adj.try_emplace(v);
  return adj;
}

}  // namespace

std::uint64_t maximal_walk_count(const MaximalEdgeGraph& maximal, std::size_t k) {
  const Adjacency adj = maximal_adjacency(maximal);
  std::map<Block, std::uint64_t> counts;
  for (const auto& [v, next] : adj) counts[v] = 1;
  for (std::size_t step = 0; step < k; ++step) {
    std::map<Block, std::uint64_t> updated;
    for (const auto& [v, next] : adj) {
      std::uint64_t n = 0;
      for (const auto& w : next) n += counts[w];
      updated[v] = n;
    }
    counts = std::move(updated);
  }
  std::uint64_t total = 0;
  for (const auto& [v, n] : counts) total += n;
  return total;
}

bool for_each_maximal_walk(const MaximalEdgeGraph& maximal, std::size_t k,
                           const std::function<bool(const BlockPath&)>& visit) {
  const Adjacency adj = maximal_adjacency(maximal);
  BlockPath path;
  bool stopped = false;
  std::function<void()> extend = [&]() {
    if (stopped) return;
    if (path.size() == k + 1) {
      if (!visit(path)) stopped = true;
      return;
    }
    for (const auto& w : adj.at(path.back())) {
      path.push_back(w);
      extend();
      path.pop_back();
      if (stopped) return;
    }
  };
  for (const auto& [v, next] : adj) {
    path.assign(1, v);
    extend();
    if (stopped) break;
  }
  return !stopped;
}

std::vector<Cycle> maximal_cycles(std::vector<Cycle> cycles) {
  std::sort(cycles.begin(), cycles.end());
  cycles.erase(std::unique(cycles.begin(), cycles.end()), cycles.end());

  // Scanned by decreasing bit count against the cycles kept so far.
  struct Entry {
    std::size_t index;
    std::size_t bits;
    Block all;
  };
  std::vector<Entry> entries;
  entries.reserve(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    Entry e{i, 0, cycles[i].blocks().front()};
    for (const auto& b : cycles[i].blocks()) {
      e.bits += b.count();
      e.all |= b;
    }
    entries.push_back(std::move(e));
  }
  std::stable_sort(entries.begin(), entries.end(), [&](const Entry& a, const Entry& b) {
    const std::size_t la = cycles[a.index].length();
    const std::size_t lb = cycles[b.index].length();
    return la != lb ? la < lb : a.bits > b.bits;
  });

  std::vector<const Entry*> kept;
  std::vector<std::size_t> out_index;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Entry& e = entries[i];
    if (i > 0 && cycles[entries[i - 1].index].length() != cycles[e.index].length()) kept.clear();
    const bool dominated = std::any_of(kept.begin(), kept.end(), [&](const Entry* k) {
      return k->bits > e.bits && k->all.dominates(e.all) && cycles[k->index].dominates(cycles[e.index]);
    });
    if (!dominated) {
      kept.push_back(&e);
      out_index.push_back(e.index);
    }
  }
  std::sort(out_index.begin(), out_index.end());
  std::vector<Cycle> out;
  out.reserve(out_index.size());
  for (std::size_t i : out_index) out.push_back(std::move(cycles[i]));
  return out;
}

namespace {

using PathSource = std::function<bool(const std::function<bool(const BlockPath&)>&)>;

// Feeds every path from `source` through Path2Cycles. With several threads
// the paths are first collected and then split into contiguous chunks; the
// union of per-chunk results does not depend on the split.
bool run_paths(const PathSource& source, const SearchOptions& options, std::set<Cycle>& found,
               std::uint64_t& paths) {
  if (options.threads <= 1) {
    const bool complete = source([&](const BlockPath& p) {
      if (options.budget.expired()) return false;
      ++paths;
      for (auto& c : path_to_cycles(p)) found.insert(std::move(c));
      return true;
    });
    return complete && !options.budget.expired();
  }

  std::vector<BlockPath> all;
  bool complete = source([&](const BlockPath& p) {
    if (options.budget.expired()) return false;
    all.push_back(p);
    return true;
  });
  const std::size_t workers = std::min<std::size_t>(options.threads, std::max<std::size_t>(all.size(), 1));
  std::vector<std::set<Cycle>> partial(workers);
  std::vector<std::uint64_t> counted(workers, 0);
  std::atomic<bool> truncated{false};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      Budget budget = options.budget;
      const std::size_t begin = all.size() * w / workers;
      const std::size_t end = all.size() * (w + 1) / workers;
      for (std::size_t i = begin; i < end; ++i) {
        if (budget.expired()) {
          truncated = true;
          return;
        }
        ++counted[w];
        for (auto& c : path_to_cycles(all[i])) partial[w].insert(std::move(c));
      }
    });
  }
  for (auto& t : pool) t.join();
  for (std::size_t w = 0; w < workers; ++w) {
    found.merge(partial[w]);
    paths += counted[w];
  }
  return complete && !truncated;
}

void finish(SearchResult& result, std::size_t k, std::uint64_t paths, const std::set<Cycle>& found) {
  std::vector<Cycle> kept = maximal_cycles({found.begin(), found.end()});
  result.stats.push_back({k, paths, kept.size()});
  result.cycles.insert(result.cycles.end(), kept.begin(), kept.end());
}

}  // namespace

SearchResult algorithm_A(const Network& network, std::size_t T, const SearchOptions& options) {
  SearchResult result;
  if (options.k_max == 0) return result;
  MaximalEdgeGraph maximal = build_maximal(network, T, options.budget);
  result.complete = maximal.complete;
  LayeredBuilder builder(std::move(maximal));
  for (std::size_t k = 1; k <= options.k_max && result.complete; ++k) {
    if (k > 1) builder.step();
    std::set<Cycle> found;
    std::uint64_t paths = 0;
    const LayeredGraph& g = builder.current();
    const bool complete = run_paths([&](const auto& visit) { return g.for_each_path(visit); }, options, found, paths);
    finish(result, k, paths, found);
    if (!complete) result.complete = false;
  }
  std::sort(result.cycles.begin(), result.cycles.end());
  return result;
}

SearchResult algorithm_B(const Network& network, std::size_t T, const SearchOptions& options) {
  SearchResult result;
  if (options.k_max == 0) return result;
  const MaximalEdgeGraph maximal = build_maximal(network, T, options.budget);
  result.complete = maximal.complete;
  for (std::size_t k = 1; k <= options.k_max && result.complete; ++k) {
    std::set<Cycle> found;
    std::uint64_t paths = 0;
    const bool complete = run_paths(
        [&](const auto& visit) { return for_each_maximal_walk(maximal, k, visit); }, options, found, paths);
    finish(result, k, paths, found);
    if (!complete) result.complete = false;
  }
  std::sort(result.cycles.begin(), result.cycles.end());
  return result;
}

RateVector rate_of_closed_path(const BlockPath& path, std::size_t T) {
  if (path.size() < 2) throw std::invalid_argument("closed path needs at least one edge");
  if (path.front() != path.back()) throw std::invalid_argument("path is not closed");
  const std::size_t links = path.front().rows();
  for (const auto& b : path) {
    if (b.rows() != links || b.cols() != T) throw std::invalid_argument("block dimensions do not match |L| x T");
  }
  const std::size_t k = path.size() - 1;
  RateVector out(links);
  for (std::size_t l = 0; l < links; ++l) {
    std::size_t active = 0;
    for (std::size_t i = 0; i < k; ++i) active += path[i].row_count(l);
    out[l] = Rational(static_cast<long>(active), static_cast<long>(k * T));
    out[l].canonicalize();
  }
  return out;
}

RateVector rate_of_cycle(const Cycle& cycle) {
  return rate_of_closed_path(cycle.closed_path(), cycle.blocks().front().cols());
}

std::vector<Cycle> pareto_filter(const std::vector<Cycle>& cycles) {
  std::map<RateVector, std::vector<const Cycle*>> by_rate;
  for (const auto& c : cycles) by_rate[rate_of_cycle(c)].push_back(&c);
  std::vector<Cycle> out;
  for (const auto& [rate, members] : by_rate) {
    const bool dominated = std::any_of(by_rate.begin(), by_rate.end(),
                                       [&](const auto& other) { return other.first.strictly_dominates(rate); });
    if (dominated) continue;
    for (const Cycle* c : members) out.push_back(*c);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace delaysched
