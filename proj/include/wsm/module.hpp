#ifndef WSM_MODULE_HPP
#define WSM_MODULE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wsm/gfp.hpp"
#include "wsm/group.hpp"
#include "wsm/lattice.hpp"

namespace wsm
{

class ModuleError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Intertwiner search ran out of exhaustive budget and sampling found
/// nothing; the answer is unknown and must not be read as false.
class UndecidedIsomorphism : public ModuleError
{
public:
  using ModuleError::ModuleError;
};

inline constexpr std::uint64_t kDefaultVectorBound = 10'000;
inline constexpr std::uint64_t kModuleElementBound = 20'000;

/// Where a module came from, when it is a chief factor of a group.
struct ModuleProvenance
{
  std::size_t factor_index = 0;
  SubgroupId upper;
  SubgroupId lower;
};

/// A finite-dimensional GF(p)-module for a permutation group, acting on row
/// vectors from the right: v * rho(a) * rho(b) = v * rho(a b).
///
/// The constructor enumerates the acting group and checks that the
/// assignment of matrices to generators extends to a homomorphism.
class GModule
{
public:
  /// One matrix per generator of acting, in order.
  GModule(Group acting, std::uint64_t p, std::size_t dimension, std::vector<Matrix> generator_matrices);

  /// Matrices given for arbitrary generating elements; identity elements
  /// and duplicates are allowed and are checked for consistency.
  static GModule from_action(std::vector<std::pair<Perm, Matrix>> const &action, std::size_t degree,
                             std::uint64_t p, std::size_t dimension);

  PrimeField const &field() const { return field_; }
  std::uint64_t p() const { return field_.p(); }
  std::size_t dimension() const { return dimension_; }
  Group const &acting() const { return acting_; }
  std::vector<Matrix> const &generator_matrices() const { return matrices_; }

  /// Throws ModuleError if g is not in the acting group.
  Matrix const &matrix_of(Perm const &g) const;

  /// Elements acting as the identity.
  std::vector<Perm> kernel_elements() const;
  bool is_faithful() const;

  /// Number of vectors p^n, saturating at UINT64_MAX.
  std::uint64_t vector_count() const;

  std::optional<ModuleProvenance> const &provenance() const { return provenance_; }
  GModule with_provenance(ModuleProvenance provenance) const;

private:
  void build_element_map();

  Group acting_;
  PrimeField field_;
  std::size_t dimension_;
  std::vector<Matrix> matrices_;
  std::vector<Perm> elements_;
  std::vector<Matrix> element_matrices_;
  std::unordered_map<Perm, std::size_t, PermHash> element_index_;
  std::optional<ModuleProvenance> provenance_;
};

/// Smallest invariant subspace containing v. Throws ModuleError on zero.
Subspace spin(GModule const &m, Vector const &v);

/// Exhaustive: every normalized nonzero vector spins to the whole space.
/// Throws BoundExceeded if p^n exceeds bound.
bool is_irreducible(GModule const &m, std::uint64_t bound = kDefaultVectorBound);

/// The module restricted to the subgroup generated by the given elements.
GModule restrict_to(GModule const &m, std::vector<Perm> const &generators);

/// Action on an invariant subspace, in the coordinates of its echelon basis.
GModule submodule(GModule const &m, Subspace const &w);

/// Same module written in a new basis: rows of the invertible matrix P.
GModule change_basis(GModule const &m, Matrix const &basis);

/// Irreducible, and irreducible on restriction to every maximal subgroup of
/// the acting group. The lattice must be of the acting group.
bool is_strongly_irreducible(GModule const &m, SubgroupLattice const &lattice,
                             std::uint64_t bound = kDefaultVectorBound);

/// Basis of Hom_A(m1, m2): matrices T with rho1(g) T = T rho2(g).
std::vector<Matrix> intertwiners(GModule const &m1, GModule const &m2);

/// An invertible intertwiner exists. Exhaustive over the Hom-space when
/// p^d <= bound, otherwise random combinations; throws
/// UndecidedIsomorphism if sampling finds nothing.
bool module_isomorphic(GModule const &m1, GModule const &m2, std::uint64_t bound = kDefaultVectorBound);

/// Inclusion-minimal subspaces among the spins of all nonzero vectors,
/// i.e. the minimal submodules.
std::vector<Subspace> minimal_submodules(GModule const &m, std::uint64_t bound = kDefaultVectorBound);

/// Restriction to each normal subgroup of the acting group is homogeneous:
/// all minimal submodules are isomorphic.
bool is_quasi_primitive(GModule const &m, SubgroupLattice const &lattice,
                        std::uint64_t bound = kDefaultVectorBound);

/// Contragredient module, rho*(g) = (rho(g)^-1)^T.
GModule dual_module(GModule const &m);

/// The module viewed as a module of G/N for a normal subgroup N acting
/// trivially. The lattice must be of the acting group.
GModule restrict_and_lift(GModule const &m, SubgroupLattice const &lattice, SubgroupId n);

/// The kernel of the action as a subgroup of the acting group's lattice.
SubgroupId centralizer(GModule const &m, SubgroupLattice const &lattice);

/// Chief factor terms[i] / terms[i+1] with G acting by conjugation. Basis
/// vectors are coset representatives picked in element-index order.
/// Throws ModuleError if the factor is not elementary abelian.
GModule chief_factor_module(SubgroupLattice const &lattice, ChiefSeries const &series, std::size_t i);

} // namespace wsm

#endif // WSM_MODULE_HPP
