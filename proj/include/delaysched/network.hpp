#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace delaysched {

using LinkIndex = std::size_t;
/// One element phi of a collision set I(l): links whose joint arrival at r_l
/// destroys l's reception. Stored sorted and without repeats.
using CollisionSubset = std::vector<LinkIndex>;

/// Raised for malformed or inconsistent network descriptions.
class ModelError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Discrete network (L, I, D_L) in link-wise form.
///
/// Delay entries are partial: pairs outside the collision support are
/// normally left out ("*") and reading one through delay_at() is an error.
/// A link may appear in its own collision subsets; no implicit filtering
/// takes place.
struct Network {
  std::vector<std::string> links;
  std::vector<std::vector<CollisionSubset>> collisions;
  std::map<std::pair<LinkIndex, LinkIndex>, std::int64_t> delays;

  std::size_t link_count() const { return links.size(); }
  std::optional<std::int64_t> delay(LinkIndex l, LinkIndex other) const;
  std::int64_t delay_at(LinkIndex l, LinkIndex other) const;
  LinkIndex index_of(std::string_view name) const;

  friend bool operator==(const Network&, const Network&) = default;
};

/// Per-link integer shift b_l; must have one entry per link.
using VertexAssignment = std::vector<std::int64_t>;

struct GcdReduction {
  Network network;
  std::int64_t g = 1;
};

/// Throws ModelError naming the first violated invariant.
void validate(const Network& network);

bool is_binary(const Network& network);

/// D*: the largest |D_L(l,l')| over l, phi in I(l), l' in phi; 0 for an
/// empty profile.
std::int64_t character(const Network& network);

/// D_L^b(l,l') = D_L(l,l') + b_l - b_l' on every specified entry.
Network apply_vertex_assignment(const Network& network, const VertexAssignment& b);

/// I'(l): union of the subsets in I(l), sorted.
std::vector<std::vector<LinkIndex>> collision_support(const Network& network);

/// Divides every delay by the GCD of the nonzero |D_L(l,l')| over the
/// collision support. An all-zero or empty support gives g = 1.
GcdReduction gcd_reduce(const Network& network);

/// Multihop line network with L links under the K-hop binary model:
/// I(l_i) = {l_j : j != i, |j - i - 1| <= K}, D_L(l_i,l_j) = 1 - |j - i - 1|.
Network make_line_network(std::size_t L, std::size_t K);

/// Same links and profile with every support delay set to 0; its window
/// graph at T = 1 is the static collision (hyper)graph (L, I).
Network static_network(const Network& network);

/// Derives D_L(l,l') = D(s_l, r_l) - D(s_l', r_l) for the pairs in the
/// collision support. Node indices are 0-based.
Network network_from_node_delays(std::vector<std::string> links,
                                 std::vector<std::vector<CollisionSubset>> collisions,
                                 const std::vector<std::vector<std::int64_t>>& node_delays,
                                 const std::vector<std::pair<std::size_t, std::size_t>>& endpoints);

}  // namespace delaysched
