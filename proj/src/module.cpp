#include "wsm/module.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <random>

namespace wsm
{

namespace
{

std::uint64_t saturating_pow(std::uint64_t p, std::size_t n)
{
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p)
      return std::numeric_limits<std::uint64_t>::max();
    r *= p;
  }
  return r;
}

bool is_normalized(Vector const &v)
{
  for (auto x : v)
    if (x != 0)
      return x == 1;
  return false;
}

Vector normalized(PrimeField const &f, Vector v)
{
  for (auto x : v)
    if (x != 0) {
      std::uint32_t s = f.inv(x);
      for (auto &y : v)
        y = f.mul(y, s);
      break;
    }
  return v;
}

void require_vector_bound(std::uint64_t count, std::uint64_t bound)
{
  if (count > bound)
    throw BoundExceeded("module has " + std::to_string(count) + " vectors, above the enumeration bound " +
                        std::to_string(bound));
}

std::vector<Perm> subgroup_perms(SubgroupLattice const &lattice, SubgroupId h)
{
  return lattice.table().to_perms(lattice.generators(h));
}

void require_acting_lattice(GModule const &m, SubgroupLattice const &lattice)
{
  if (lattice.group().degree() != m.acting().degree() || !same_group(lattice.group(), m.acting()))
    throw ModuleError("lattice is not of the module's acting group");
}

} // namespace

GModule::GModule(Group acting, std::uint64_t p, std::size_t dimension, std::vector<Matrix> generator_matrices)
: acting_(std::move(acting))
, field_(p)
, dimension_(dimension)
, matrices_(std::move(generator_matrices))
{
  if (dimension_ == 0)
    throw ModuleError("module dimension must be at least 1");
  if (matrices_.size() != acting_.generators().size())
    throw ModuleError("need one matrix per generator of the acting group");
  for (auto &m : matrices_) {
    if (m.rows() != dimension_ || m.cols() != dimension_)
      throw ModuleError("generator matrix has the wrong shape");
    for (std::size_t r = 0; r < dimension_; ++r)
      for (std::size_t c = 0; c < dimension_; ++c)
        if (m.at(r, c) >= p)
          throw ModuleError("matrix entry outside GF(p)");
    if (determinant(field_, m) == 0)
      throw ModuleError("generator matrix is not invertible");
  }
  build_element_map();
}

void GModule::build_element_map()
{
  if (acting_.order() > kModuleElementBound)
    throw BoundExceeded("acting group too large for module enumeration");

  elements_.push_back(Perm(acting_.degree()));
  element_matrices_.push_back(Matrix::identity(dimension_));
  element_index_.emplace(elements_.front(), 0);

  auto const &gens = acting_.generators();
  for (std::size_t k = 0; k < elements_.size(); ++k)
    for (std::size_t s = 0; s < gens.size(); ++s) {
      Perm x = elements_[k] * gens[s];
      Matrix mx = multiply(field_, element_matrices_[k], matrices_[s]);
      auto it = element_index_.find(x);
      if (it == element_index_.end()) {
        element_index_.emplace(x, elements_.size());
        elements_.push_back(std::move(x));
        element_matrices_.push_back(std::move(mx));
      } else if (element_matrices_[it->second] != mx) {
        throw ModuleError("generator matrices do not define a homomorphism");
      }
    }
}

GModule GModule::from_action(std::vector<std::pair<Perm, Matrix>> const &action, std::size_t degree,
                             std::uint64_t p, std::size_t dimension)
{
  std::vector<Perm> perms;
  for (auto const &[g, m] : action)
    perms.push_back(g);
  Group group(perms, degree);

  std::vector<Matrix> mats;
  for (auto const &g : group.generators()) {
    auto it = std::find_if(action.begin(), action.end(), [&](auto const &a) { return a.first == g; });
    mats.push_back(it->second);
  }
  GModule m(std::move(group), p, dimension, std::move(mats));
  for (auto const &[g, mat] : action)
    if (m.matrix_of(g) != mat)
      throw ModuleError("inconsistent matrices for the element " + g.to_string());
  return m;
}

Matrix const &GModule::matrix_of(Perm const &g) const
{
  auto it = element_index_.find(g);
  if (it == element_index_.end())
    throw ModuleError("element " + g.to_string() + " is not in the acting group");
  return element_matrices_[it->second];
}

std::vector<Perm> GModule::kernel_elements() const
{
  std::vector<Perm> out;
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (element_matrices_[i].is_identity())
      out.push_back(elements_[i]);
  std::sort(out.begin(), out.end());
  return out;
}

bool GModule::is_faithful() const
{
  return kernel_elements().size() == 1;
}

std::uint64_t GModule::vector_count() const
{
  return saturating_pow(p(), dimension_);
}

GModule GModule::with_provenance(ModuleProvenance provenance) const
{
  GModule copy = *this;
  copy.provenance_ = provenance;
  return copy;
}

Subspace spin(GModule const &m, Vector const &v)
{
  auto const &f = m.field();
  if (v.size() != m.dimension())
    throw ModuleError("vector has the wrong length");
  Subspace w(m.dimension());
  if (!w.insert(f, v))
    throw ModuleError("cannot spin the zero vector");

  std::deque<Vector> queue{v};
  while (!queue.empty() && w.dimension() < m.dimension()) {
    Vector u = std::move(queue.front());
    queue.pop_front();
    for (auto const &g : m.generator_matrices()) {
      Vector x = row_times(f, u, g);
      if (w.insert(f, x))
        queue.push_back(std::move(x));
    }
  }
  return w;
}

bool is_irreducible(GModule const &m, std::uint64_t bound)
{
  std::uint64_t count = m.vector_count();
  require_vector_bound(count, bound);
  for (std::uint64_t code = 1; code < count; ++code) {
    Vector v = decode_vector(code, m.p(), m.dimension());
    if (!is_normalized(v))
      continue;
    if (spin(m, v).dimension() < m.dimension())
      return false;
  }
  return true;
}

GModule restrict_to(GModule const &m, std::vector<Perm> const &generators)
{
  std::vector<std::pair<Perm, Matrix>> action;
  for (auto const &g : generators)
    action.emplace_back(g, m.matrix_of(g));
  return GModule::from_action(action, m.acting().degree(), m.p(), m.dimension());
}

GModule submodule(GModule const &m, Subspace const &w)
{
  auto const &f = m.field();
  std::vector<Matrix> mats;
  for (auto const &g : m.generator_matrices()) {
    Matrix a(w.dimension(), w.dimension());
    for (std::size_t i = 0; i < w.dimension(); ++i) {
      Vector image = row_times(f, w.basis()[i], g);
      if (!w.contains(f, image))
        throw ModuleError("subspace is not invariant");
      Vector c = w.coordinates(image);
      for (std::size_t j = 0; j < c.size(); ++j)
        a.at(i, j) = c[j];
    }
    mats.push_back(std::move(a));
  }
  return GModule(m.acting(), m.p(), w.dimension(), std::move(mats));
}

GModule change_basis(GModule const &m, Matrix const &basis)
{
  auto const &f = m.field();
  auto inv = inverse(f, basis);
  if (!inv)
    throw ModuleError("change of basis matrix is singular");
  std::vector<Matrix> mats;
  for (auto const &g : m.generator_matrices())
    mats.push_back(multiply(f, multiply(f, basis, g), *inv));
  GModule out(m.acting(), m.p(), m.dimension(), std::move(mats));
  return m.provenance() ? out.with_provenance(*m.provenance()) : out;
}

bool is_strongly_irreducible(GModule const &m, SubgroupLattice const &lattice, std::uint64_t bound)
{
  require_acting_lattice(m, lattice);
  if (!is_irreducible(m, bound))
    return false;
  if (m.acting().is_trivial())
    return true;
  for (auto h : lattice.maximal_subgroups())
    if (!is_irreducible(restrict_to(m, subgroup_perms(lattice, h)), bound))
      return false;
  return true;
}

std::vector<Matrix> intertwiners(GModule const &m1, GModule const &m2)
{
  if (!same_group(m1.acting(), m2.acting()))
    throw ModuleError("modules have different acting groups");
  auto const &f = m1.field();
  std::size_t n1 = m1.dimension();
  std::size_t n2 = m2.dimension();
  auto const &gens = m1.acting().generators();

  Matrix system(gens.size() * n1 * n2, n1 * n2);
  for (std::size_t s = 0; s < gens.size(); ++s) {
    Matrix const &a = m1.generator_matrices()[s];
    Matrix const &b = m2.matrix_of(gens[s]);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t k = 0; k < n2; ++k) {
        std::size_t row = (s * n1 + i) * n2 + k;
        // (A T)_{ik} - (T B)_{ik}
        for (std::size_t j = 0; j < n1; ++j)
          system.at(row, j * n2 + k) = f.add(system.at(row, j * n2 + k), a.at(i, j));
        for (std::size_t j = 0; j < n2; ++j)
          system.at(row, i * n2 + j) = f.sub(system.at(row, i * n2 + j), b.at(j, k));
      }
  }

  std::vector<Matrix> basis;
  for (auto const &x : nullspace(f, system)) {
    Matrix t(n1, n2);
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        t.at(i, j) = x[i * n2 + j];
    basis.push_back(std::move(t));
  }
  return basis;
}

bool module_isomorphic(GModule const &m1, GModule const &m2, std::uint64_t bound)
{
  if (m1.p() != m2.p() || m1.dimension() != m2.dimension())
    return false;
  auto const &f = m1.field();
  auto basis = intertwiners(m1, m2);
  if (basis.empty())
    return false;
  for (auto const &t : basis)
    if (determinant(f, t) != 0)
      return true;

  std::size_t n = m1.dimension();
  auto combine = [&](Vector const &c) {
    Matrix t(n, n);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (c[k] == 0)
        continue;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          t.at(i, j) = f.add(t.at(i, j), f.mul(c[k], basis[k].at(i, j)));
    }
    return t;
  };

  std::uint64_t count = saturating_pow(m1.p(), basis.size());
  if (count <= bound) {
    for (std::uint64_t code = 1; code < count; ++code)
      if (determinant(f, combine(decode_vector(code, m1.p(), basis.size()))) != 0)
        return true;
    return false;
  }

  // A nonzero homomorphism out of an irreducible module of equal dimension
  // is injective.
  if (m1.vector_count() <= bound && is_irreducible(m1, bound))
    return true;

  std::mt19937_64 rng(0x5eed5eedULL);
  std::uniform_int_distribution<std::uint32_t> coeff(0, static_cast<std::uint32_t>(m1.p() - 1));
  for (int attempt = 0; attempt < 4096; ++attempt) {
    Vector c(basis.size());
    for (auto &x : c)
      x = coeff(rng);
    if (determinant(f, combine(c)) != 0)
      return true;
  }
  throw UndecidedIsomorphism("no invertible intertwiner found by sampling a Hom-space of dimension " +
                             std::to_string(basis.size()));
}

std::vector<Subspace> minimal_submodules(GModule const &m, std::uint64_t bound)
{
  auto const &f = m.field();
  std::uint64_t count = m.vector_count();
  require_vector_bound(count, bound);

  std::vector<Subspace> spins;
  std::vector<std::uint32_t> spin_of(count, 0);
  std::map<Subspace, std::uint32_t> ids;
  for (std::uint64_t code = 1; code < count; ++code) {
    Vector v = decode_vector(code, m.p(), m.dimension());
    if (!is_normalized(v))
      continue;
    Subspace w = spin(m, v);
    auto [it, inserted] = ids.emplace(w, static_cast<std::uint32_t>(spins.size()));
    if (inserted)
      spins.push_back(std::move(w));
    spin_of[code] = it->second;
  }

  std::vector<Subspace> minimal;
  for (auto const &[w, id] : ids) {
    std::uint64_t inner = saturating_pow(m.p(), w.dimension());
    bool ok = true;
    for (std::uint64_t c = 1; c < inner && ok; ++c) {
      Vector coeffs = decode_vector(c, m.p(), w.dimension());
      if (!is_normalized(coeffs))
        continue;
      Vector v(m.dimension(), 0);
      for (std::size_t k = 0; k < coeffs.size(); ++k)
        for (std::size_t j = 0; j < v.size(); ++j)
          v[j] = f.add(v[j], f.mul(coeffs[k], w.basis()[k][j]));
      ok = spin_of[encode_vector(normalized(f, v), m.p())] == id;
    }
    if (ok)
      minimal.push_back(w);
  }
  return minimal;
}

bool is_quasi_primitive(GModule const &m, SubgroupLattice const &lattice, std::uint64_t bound)
{
  require_acting_lattice(m, lattice);
  for (auto n : lattice.normal_subgroups()) {
    GModule restricted = restrict_to(m, subgroup_perms(lattice, n));
    bool trivial_action = std::all_of(restricted.generator_matrices().begin(), restricted.generator_matrices().end(),
                                      [](Matrix const &a) { return a.is_identity(); });
    if (trivial_action)
      continue;

    auto mins = minimal_submodules(restricted, bound);
    GModule first = submodule(restricted, mins.front());
    for (std::size_t k = 1; k < mins.size(); ++k)
      if (!module_isomorphic(first, submodule(restricted, mins[k]), bound))
        return false;
  }
  return true;
}

GModule dual_module(GModule const &m)
{
  std::vector<Matrix> mats;
  for (auto const &g : m.generator_matrices())
    mats.push_back(transpose(*inverse(m.field(), g)));
  GModule out(m.acting(), m.p(), m.dimension(), std::move(mats));
  return m.provenance() ? out.with_provenance(*m.provenance()) : out;
}

SubgroupId centralizer(GModule const &m, SubgroupLattice const &lattice)
{
  require_acting_lattice(m, lattice);
  ElementTable const &t = lattice.table();
  Bitset kernel = t.empty_set();
  for (auto const &g : m.kernel_elements())
    kernel.set(t.index_of(g));
  auto found = lattice.find(kernel);
  if (!found)
    throw ModuleError("kernel of the action is missing from the lattice");
  return *found;
}

GModule restrict_and_lift(GModule const &m, SubgroupLattice const &lattice, SubgroupId n)
{
  require_acting_lattice(m, lattice);
  for (auto const &g : subgroup_perms(lattice, n))
    if (!m.matrix_of(g).is_identity())
      throw ModuleError("normal subgroup does not act trivially on the module");

  Quotient q = quotient_group(lattice, n);
  auto const &gens = lattice.group().generators();
  std::vector<std::pair<Perm, Matrix>> action;
  for (std::size_t j = 0; j < gens.size(); ++j)
    action.emplace_back(q.generator_images[j], m.matrix_of(gens[j]));
  GModule out = GModule::from_action(action, q.group.degree(), m.p(), m.dimension());
  return m.provenance() ? out.with_provenance(*m.provenance()) : out;
}

GModule chief_factor_module(SubgroupLattice const &lattice, ChiefSeries const &series, std::size_t i)
{
  if (i >= series.factors.size())
    throw ModuleError("chief factor index out of range");
  ChiefFactor const &factor = series.factors[i];
  if (!factor.elementary_abelian)
    throw ModuleError("chief factor is not elementary abelian");

  ElementTable const &t = lattice.table();
  Bitset const &upper = lattice.elements(factor.upper);
  Bitset current = lattice.elements(factor.lower);
  std::vector<std::uint32_t> current_gens = lattice.generators(factor.lower);
  std::vector<std::uint32_t> basis;
  std::size_t target = upper.count();
  upper.for_each([&](std::size_t u) {
    if (current.count() == target || current.test(u))
      return;
    current = t.extend(current, current_gens, static_cast<std::uint32_t>(u));
    current_gens.push_back(static_cast<std::uint32_t>(u));
    basis.push_back(static_cast<std::uint32_t>(u));
  });

  std::uint64_t p = factor.prime;
  std::size_t n = basis.size();
  if (n != factor.dimension)
    throw ModuleError("chief factor basis has the wrong size");

  PrimeField f(p);
  std::vector<std::int64_t> coord_index(t.size(), -1);
  std::vector<Vector> coords;
  std::vector<std::uint32_t> lower = lattice.elements(factor.lower).indices();
  std::uint64_t count = saturating_pow(p, n);
  for (std::uint64_t code = 0; code < count; ++code) {
    Vector c = decode_vector(code, p, n);
    std::uint32_t e = 0;
    for (std::size_t k = 0; k < n; ++k)
      e = t.mul(e, t.pow(basis[k], c[k]));
    for (auto l : lower)
      coord_index[t.mul(e, l)] = static_cast<std::int64_t>(coords.size());
    coords.push_back(std::move(c));
  }

  std::vector<Matrix> mats;
  for (auto g : t.generator_indices()) {
    Matrix a(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      Vector const &c = coords[static_cast<std::size_t>(coord_index[t.conj(basis[r], g)])];
      for (std::size_t j = 0; j < n; ++j)
        a.at(r, j) = c[j];
    }
    mats.push_back(std::move(a));
  }
  GModule m(lattice.group(), p, n, std::move(mats));
  return m.with_provenance(ModuleProvenance{i, factor.upper, factor.lower});
}

} // namespace wsm
