#include "delaysched/periodic_graph.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>
#include <string>

namespace delaysched {

std::size_t default_cap_bits() {
  if (const char* env = std::getenv("DELAYSCHED_CAP_BITS")) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return 24;
}

WindowGraph::WindowGraph(const Network& network, std::size_t T) : links_(network.link_count()), T_(T) {
  if (T == 0) throw std::invalid_argument("window length T must be positive");
  validate(network);
  (void)BitMatrix(links_, T_);  // dimension check

  std::set<std::pair<WindowVertex, std::vector<WindowVertex>>> seen;
  std::set<BitMatrix> seen_masks;
  const auto horizon = static_cast<std::int64_t>(T);
  for (LinkIndex l = 0; l < links_; ++l) {
    for (const auto& phi : network.collisions[l]) {
      for (std::size_t t = 0; t < T; ++t) {
        std::vector<WindowVertex> targets;
        bool inside = true;
        for (LinkIndex other : phi) {
          const std::int64_t when = static_cast<std::int64_t>(t) + network.delay_at(l, other);
          if (when < 0 || when >= horizon) {
            inside = false;
            break;
          }
          targets.push_back({other, static_cast<std::size_t>(when)});
        }
        if (!inside) continue;
        std::sort(targets.begin(), targets.end());
        WindowVertex source{l, t};
        if (!seen.insert({source, targets}).second) continue;

        BitMatrix mask(links_, T_);
        mask.set(source.link, source.time);
        for (const auto& v : targets) mask.set(v.link, v.time);
        edges_.push_back({source, std::move(targets), mask});
        if (seen_masks.insert(mask).second) masks_.push_back(mask);
      }
    }
  }

  closing_.assign(bits(), {});
  touching_.assign(bits(), {});
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    std::size_t highest = 0;
    std::size_t members = 0;
    masks_[i].for_each_set([&](std::size_t pos) {
      touching_[pos].push_back(i);
      highest = pos;
      ++members;
    });
    closing_[highest].push_back(i);
    if (members > 2) pairwise_ = false;
  }
}

bool WindowGraph::is_independent(const BitMatrix& a) const {
  if (a.rows() != links_ || a.cols() != T_) throw std::invalid_argument("assignment dimensions do not match window");
  for (const auto& mask : masks_) {
    if (a.contains(mask)) return false;
  }
  return true;
}

WindowGraph build_window(const Network& network, std::size_t T) { return WindowGraph(network, T); }

bool is_independent(const WindowGraph& window, const BitMatrix& assignment) {
  return window.is_independent(assignment);
}

namespace {

void check_cap(const WindowGraph& window, std::size_t cap_bits) {
  if (window.bits() > cap_bits) {
    throw CapExceeded("brute-force enumeration over " + std::to_string(window.bits()) + " bits exceeds cap of " +
                      std::to_string(cap_bits) + " (set DELAYSCHED_CAP_BITS to raise it)");
  }
}

void independent_dfs(const WindowGraph& window, BitMatrix& current, std::size_t pos,
                     const std::function<void(const BitMatrix&)>& visit) {
  if (pos == window.bits()) {
    visit(current);
    return;
  }
  independent_dfs(window, current, pos + 1, visit);
  current.assign(pos, true);
  bool ok = true;
  for (std::size_t m : window.masks_closing_at(pos)) {
    if (current.contains(window.masks()[m])) {
      ok = false;
      break;
    }
  }
  if (ok) independent_dfs(window, current, pos + 1, visit);
  current.assign(pos, false);
}

// Maximal cliques of the compatibility graph (vertices that never share a
// violation mask) are the maximal independent sets of a pairwise window.
class PivotBronKerbosch {
 public:
  PivotBronKerbosch(const WindowGraph& window, const Budget& budget, MaximalSets& out)
      : window_(window), budget_(budget), out_(out) {
    const std::size_t n = window.bits();
    BitMatrix allowed = window.empty_assignment();
    for (std::size_t v = 0; v < n; ++v) allowed.assign(v, true);
    std::vector<BitMatrix> conflict(n, window.empty_assignment());
    for (const auto& mask : window.masks()) {
      std::vector<std::size_t> members;
      mask.for_each_set([&](std::size_t pos) { members.push_back(pos); });
      if (members.size() == 1) {
        allowed.assign(members[0], false);
      } else {
        conflict[members[0]].assign(members[1], true);
        conflict[members[1]].assign(members[0], true);
      }
    }
    compatible_.assign(n, window.empty_assignment());
    for (std::size_t v = 0; v < n; ++v) {
      if (!allowed.test(v)) continue;
      BitMatrix c = allowed;
      c.assign(v, false);
      conflict[v].for_each_set([&](std::size_t u) { c.assign(u, false); });
      compatible_[v] = c;
    }
    candidates_ = allowed;
  }

  void run() {
    BitMatrix r = window_.empty_assignment();
    expand(r, candidates_, window_.empty_assignment());
  }

 private:
  void expand(BitMatrix& r, BitMatrix p, BitMatrix x) {
    if (budget_.expired()) {
      out_.complete = false;
      return;
    }
    if (p.none() && x.none()) {
      out_.sets.push_back(r);
      return;
    }
    std::size_t pivot = 0;
    std::size_t best = 0;
    bool have_pivot = false;
    (p | x).for_each_set([&](std::size_t u) {
      const std::size_t score = (p & compatible_[u]).count();
      if (!have_pivot || score > best) {
        pivot = u;
        best = score;
        have_pivot = true;
      }
    });
    BitMatrix branch = p;
    compatible_[pivot].for_each_set([&](std::size_t u) { branch.assign(u, false); });
    std::vector<std::size_t> order;
    branch.for_each_set([&](std::size_t v) { order.push_back(v); });
    for (std::size_t v : order) {
      r.assign(v, true);
      expand(r, p & compatible_[v], x & compatible_[v]);
      r.assign(v, false);
      p.assign(v, false);
      x.assign(v, true);
    }
  }

  const WindowGraph& window_;
  const Budget& budget_;
  MaximalSets& out_;
  std::vector<BitMatrix> compatible_;
  BitMatrix candidates_;
};

class HyperBranchAndBound {
 public:
  HyperBranchAndBound(const WindowGraph& window, const Budget& budget, MaximalSets& out)
      : window_(window), budget_(budget), out_(out), forbidden_(window.empty_assignment()) {
    for (const auto& mask : window.masks()) {
      if (mask.count() == 1) forbidden_ |= mask;
    }
  }

  void run() {
    BitMatrix current = window_.empty_assignment();
    decide(current, 0);
  }

 private:
  bool completes_edge(const BitMatrix& current, std::size_t v) const {
    BitMatrix with = current;
    with.assign(v, true);
    for (std::size_t m : window_.masks_touching(v)) {
      if (with.contains(window_.masks()[m])) return true;
    }
    return false;
  }

  // Can some mask through v still be filled by vertices included so far or
  // not yet decided (positions after `pos`)?
  bool blockable(const BitMatrix& current, std::size_t v, std::size_t pos) const {
    for (std::size_t m : window_.masks_touching(v)) {
      bool possible = true;
      window_.masks()[m].for_each_set([&](std::size_t u) {
        if (u != v && u <= pos && !current.test(u)) possible = false;
      });
      if (possible) return true;
    }
    return false;
  }

  void decide(BitMatrix& current, std::size_t pos) {
    if (budget_.expired()) {
      out_.complete = false;
      return;
    }
    if (pos == window_.bits()) {
      for (std::size_t v = 0; v < window_.bits(); ++v) {
        if (!current.test(v) && !completes_edge(current, v)) return;
      }
      out_.sets.push_back(current);
      return;
    }
    if (forbidden_.test(pos)) {
      decide(current, pos + 1);
      return;
    }
    const bool can_include = !completes_edge(current, pos);
    if (can_include) {
      current.assign(pos, true);
      decide(current, pos + 1);
      current.assign(pos, false);
    }
    if (!can_include || blockable(current, pos, pos)) decide(current, pos + 1);
  }

  const WindowGraph& window_;
  const Budget& budget_;
  MaximalSets& out_;
  BitMatrix forbidden_;
};

}  // namespace

void for_each_independent_set(const WindowGraph& window, const std::function<void(const BitMatrix&)>& visit,
                              std::size_t cap_bits) {
  check_cap(window, cap_bits);
  BitMatrix current = window.empty_assignment();
  independent_dfs(window, current, 0, visit);
}

std::vector<BitMatrix> enumerate_independent_sets(const WindowGraph& window, std::size_t cap_bits) {
  std::vector<BitMatrix> out;
  for_each_independent_set(window, [&](const BitMatrix& a) { out.push_back(a); }, cap_bits);
  return out;
}

MaximalSets enumerate_maximal_independent_sets(const WindowGraph& window, const Budget& budget) {
  MaximalSets out;
  if (window.pairwise()) {
    PivotBronKerbosch(window, budget, out).run();
  } else {
    HyperBranchAndBound(window, budget, out).run();
  }
  std::sort(out.sets.begin(), out.sets.end());
  out.sets.erase(std::unique(out.sets.begin(), out.sets.end()), out.sets.end());
  return out;
}

bool is_maximal_independent(const WindowGraph& window, const BitMatrix& a) {
  if (!window.is_independent(a)) return false;
  for (std::size_t v = 0; v < window.bits(); ++v) {
    if (a.test(v)) continue;
    BitMatrix with = a;
    with.assign(v, true);
    if (window.is_independent(with)) return false;
  }
  return true;
}

}  // namespace delaysched
