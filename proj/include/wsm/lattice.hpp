#ifndef WSM_LATTICE_HPP
#define WSM_LATTICE_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsm/element_table.hpp"
#include "wsm/group.hpp"

namespace wsm
{

/// Index of a subgroup inside a SubgroupLattice. Subgroups are sorted by
/// order and then by element set, so id 0 is the trivial group and the
/// last id is the whole group.
struct SubgroupId
{
  std::uint32_t value = 0;

  auto operator<=>(SubgroupId const &) const = default;
};

struct SubgroupClass
{
  SubgroupId representative;
  std::vector<SubgroupId> members;
};

inline constexpr std::uint64_t kDefaultLatticeBound = 500;
inline constexpr std::uint64_t kLatticeHardCap = 2000;

/// All subgroups of a small group, with conjugacy classes and the covering
/// relation of the inclusion order.
class SubgroupLattice
{
public:
  /// Layered cyclic extension: seed with the cyclic subgroups, then join
  /// every subgroup found so far with every cyclic subgroup until nothing
  /// new appears. Throws BoundExceeded if |G| exceeds bound.
  static SubgroupLattice enumerate(std::shared_ptr<const ElementTable> table,
                                   std::uint64_t bound = kDefaultLatticeBound);

  ElementTable const &table() const { return *table_; }
  std::shared_ptr<const ElementTable> const &table_ptr() const { return table_; }
  Group const &group() const { return table_->group(); }

  std::size_t size() const { return nodes_.size(); }
  SubgroupId trivial() const { return SubgroupId{0}; }
  SubgroupId whole() const { return SubgroupId{static_cast<std::uint32_t>(nodes_.size() - 1)}; }

  Bitset const &elements(SubgroupId h) const { return nodes_[h.value].elements; }
  std::uint64_t order(SubgroupId h) const { return nodes_[h.value].order; }
  std::vector<std::uint32_t> const &generators(SubgroupId h) const { return nodes_[h.value].generators; }

  SubgroupRef ref(SubgroupId h) const;
  std::optional<SubgroupId> find(Bitset const &elements) const;
  /// Throws GroupError if the generators do not lie in the parent.
  SubgroupId find(SubgroupRef const &h) const;
  SubgroupId generated_by(std::span<const std::uint32_t> gens) const;

  /// small <= big
  bool contains(SubgroupId big, SubgroupId small) const;

  /// Subgroups K in which h is a maximal subgroup.
  std::vector<SubgroupId> const &upper_covers(SubgroupId h) const { return nodes_[h.value].covers; }
  bool is_maximal_in(SubgroupId h, SubgroupId k) const;
  bool is_maximal(SubgroupId h) const { return is_maximal_in(h, whole()); }
  bool is_normal(SubgroupId h) const { return classes_[nodes_[h.value].cls].members.size() == 1; }

  std::size_t class_of(SubgroupId h) const { return nodes_[h.value].cls; }
  std::vector<SubgroupClass> const &classes() const { return classes_; }

  std::vector<SubgroupId> const &maximal_subgroups() const { return maximals_; }
  std::vector<SubgroupId> normal_subgroups() const;

  SubgroupId join(SubgroupId a, SubgroupId b) const;
  SubgroupId meet(SubgroupId a, SubgroupId b) const;

  /// Intersection of all conjugates, from the conjugacy class.
  SubgroupId core(SubgroupId h) const;

  /// Round trip through a plain description (used by the result cache).
  struct Node
  {
    Bitset elements;
    std::uint64_t order = 1;
    std::vector<std::uint32_t> generators;
    std::vector<SubgroupId> covers;
    std::size_t cls = 0;
  };
  static SubgroupLattice from_parts(std::shared_ptr<const ElementTable> table, std::vector<Node> nodes);
  std::vector<Node> const &nodes() const { return nodes_; }

private:
  void index_nodes();
  void compute_classes();

  std::shared_ptr<const ElementTable> table_;
  std::vector<Node> nodes_;
  std::vector<SubgroupClass> classes_;
  std::vector<SubgroupId> maximals_;
  std::unordered_map<Bitset, std::uint32_t, BitsetHash> lookup_;
};

/// Max(G, H): the maximal subgroups of G containing H. Throws if H = G.
std::vector<SubgroupId> max_over(SubgroupLattice const &lattice, SubgroupId h);

enum class ChainPosition
{
  maximal,
  second_maximal,
  weak_second_maximal_only,
  neither,
};

std::string to_string(ChainPosition position);

/// Position of a proper subgroup relative to Max(G, H). Maximal subgroups
/// report as maximal; otherwise second_maximal iff H is maximal in every
/// member of Max(G, H), weak_second_maximal_only iff in some but not all.
ChainPosition classify_chain_position(SubgroupLattice const &lattice, SubgroupId h);

SubgroupId frattini(SubgroupLattice const &lattice);

/// Largest normal p-subgroup.
SubgroupId largest_normal_p_subgroup(SubgroupLattice const &lattice, std::uint64_t p);

/// Join of O_p(G) over the primes dividing |G|.
SubgroupId fitting(SubgroupLattice const &lattice);

/// Nilpotent iff every Sylow subgroup of H is normal in H, i.e. unique.
bool is_nilpotent(SubgroupLattice const &lattice, SubgroupId h);

bool is_abelian(SubgroupLattice const &lattice, SubgroupId h);

struct ChiefFactor
{
  SubgroupId upper;
  SubgroupId lower;
  std::uint64_t order = 1;
  std::uint64_t prime = 0;      // 0 unless the order is a prime power
  std::uint32_t dimension = 0;  // exponent of prime in order
  bool elementary_abelian = false;
  bool non_frattini = false;
};

/// G = terms[0] > terms[1] > ... > terms.back() = 1; factors[i] is
/// terms[i] / terms[i+1].
struct ChiefSeries
{
  std::vector<SubgroupId> terms;
  std::vector<ChiefFactor> factors;
};

/// Built bottom-up by repeatedly taking the first (in lattice order) normal
/// subgroup minimal over the current term. Frattini labels are computed in
/// the quotient G/K from that quotient's own lattice.
ChiefSeries chief_series(SubgroupLattice const &lattice);

/// Same terms without Frattini labels.
ChiefSeries chief_series_unlabelled(SubgroupLattice const &lattice);

bool is_supersolvable(SubgroupLattice const &lattice);

/// Faithful permutation representation of G/N acting on the union of coset
/// spaces of a small set of overgroups of N whose cores meet in N.
struct Quotient
{
  Group group;
  std::vector<Perm> generator_images;  // one per generator of G, in order
  std::vector<Perm> element_images;    // indexed like the parent ElementTable

  Perm const &image(std::uint32_t element) const { return element_images[element]; }
  std::vector<Perm> image_generators(std::span<const std::uint32_t> elements) const;
};

/// Throws GroupError if N is not normal, or if the smallest faithful
/// representation found exceeds the permutation degree cap.
Quotient quotient_group(SubgroupLattice const &lattice, SubgroupId n);

} // namespace wsm

#endif // WSM_LATTICE_HPP
