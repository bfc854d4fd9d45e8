#ifndef WSM_GROUP_HPP
#define WSM_GROUP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "wsm/perm.hpp"

namespace wsm
{

class GroupError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Raised when a lattice-free operation would exceed a configured size bound.
class BoundExceeded : public GroupError
{
public:
  using GroupError::GroupError;
};

/// A subgroup of some parent group, given by generators.
struct SubgroupRef
{
  std::uint64_t parent = 0;
  std::vector<Perm> generators;
  std::uint64_t order = 1;
};

/// A finite permutation group with a deterministic stabilizer chain.
///
/// Immutable after construction. Base points are chosen greedily as the
/// first point moved by the element that forces a new level.
class Group
{
public:
  /// Empty generator lists give the trivial group of the given degree.
  explicit Group(std::vector<Perm> generators, std::size_t degree = 0);

  static Group trivial(std::size_t degree) { return Group({}, degree); }

  std::size_t degree() const { return degree_; }
  std::vector<Perm> const &generators() const { return generators_; }
  std::uint64_t order() const { return order_; }
  std::uint64_t id() const { return id_; }

  std::vector<std::size_t> base() const;
  std::vector<Perm> strong_generators() const;

  /// Membership by sifting; throws PermError on degree mismatch.
  bool contains(Perm const &g) const;

  /// Element of the coset of g modulo this group that is canonical for the
  /// right coset (*this) * g: the one with lexicographically least base image.
  Perm canonical_right_coset_rep(Perm const &g) const;

  /// Every element, in no particular order. Throws BoundExceeded above limit.
  std::vector<Perm> elements(std::uint64_t limit) const;

  bool is_trivial() const { return order_ == 1; }

  SubgroupRef as_subgroup_of(Group const &parent) const;

private:
  struct Level
  {
    std::size_t base_point;
    std::vector<Perm> generators;
    std::vector<std::size_t> orbit;
    std::vector<std::int32_t> slot;  // point -> index into orbit / transversal, -1 if absent
    std::vector<Perm> transversal;   // transversal[k] maps base_point to orbit[k]
  };

  void schreier_sims();
  void rebuild_orbit(std::size_t level);
  std::pair<Perm, std::size_t> sift(Perm g, std::size_t from_level) const;

  std::size_t degree_ = 0;
  std::vector<Perm> generators_;
  std::vector<Level> chain_;
  std::uint64_t order_ = 1;
  std::uint64_t id_ = 0;
};

/// Stable hash of the sorted, deduplicated non-identity generators.
std::uint64_t generator_set_id(std::span<const Perm> generators, std::size_t degree);

/// Group generated by a subgroup's generators inside the parent's domain.
Group subgroup_group(Group const &parent, SubgroupRef const &h);

/// True iff every generator of h lies in g.
bool is_subgroup(Group const &g, Group const &h);

bool same_group(Group const &a, Group const &b);

/// <H, g> as a subgroup of G.
SubgroupRef closure(Group const &g, SubgroupRef const &h, Perm const &x);

/// Smallest normal subgroup of G containing the given elements.
Group normal_closure(Group const &g, std::span<const Perm> elements);

bool is_normal(Group const &g, Group const &h);

/// Intersection by enumerating the smaller group and testing membership in
/// the other. Throws BoundExceeded when the smaller group exceeds limit.
Group intersection(Group const &a, Group const &b, std::uint64_t limit = 20'000'000);

/// H^x = x^-1 H x.
Group conjugate_group(Group const &h, Perm const &x);

/// Largest normal subgroup of G inside H, by iterated intersection with
/// conjugates under the generators of G until stable.
SubgroupRef normal_core(Group const &g, SubgroupRef const &h);

Group derived_subgroup(Group const &g);

/// G, G', G'', ... down to the first repeated term.
std::vector<SubgroupRef> derived_series(Group const &g);

bool is_solvable(Group const &g);

/// G1 x G2 acting on the disjoint union of the two domains.
Group direct_product(Group const &a, Group const &b);

/// Canonical representatives of the right cosets H x of H in G.
std::vector<Perm> right_coset_reps(Group const &g, Group const &h, std::uint64_t index_bound);

/// One representative for each double coset H x H of H in G.
std::vector<Perm> double_coset_reps(Group const &g, Group const &h, std::uint64_t index_bound);

inline constexpr std::uint64_t kDefaultIndexBound = 100'000;

/// Maximality of a proper subgroup without a lattice: H is maximal iff
/// <H, x> = G for every x outside H. Since <H, x> = <H, h x h'>, one
/// representative per double coset suffices.
bool is_maximal_in(Group const &g, SubgroupRef const &h, std::uint64_t index_bound = kDefaultIndexBound);

} // namespace wsm

#endif // WSM_GROUP_HPP
