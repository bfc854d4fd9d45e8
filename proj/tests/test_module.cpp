#include "doctest.h"

#include <random>
#include <set>

#include "wsm/constructors.hpp"
#include "wsm/element_table.hpp"
#include "wsm/gfp.hpp"
#include "wsm/lattice.hpp"
#include "wsm/module.hpp"

using namespace wsm;

namespace
{

using VectorSet = std::set<std::vector<std::uint32_t>>;

std::vector<std::uint32_t> act(std::vector<std::uint32_t> const &v, Matrix const &m, std::uint64_t p)
{
  std::vector<std::uint32_t> out(m.cols(), 0);
  for (std::size_t j = 0; j < m.cols(); ++j) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += std::uint64_t{v[i]} * m.at(i, j);
    out[j] = static_cast<std::uint32_t>(s % p);
  }
  return out;
}

// Span as an explicit set of vectors.
VectorSet span(std::vector<std::vector<std::uint32_t>> const &gens, std::size_t n, std::uint64_t p)
{
  VectorSet out{std::vector<std::uint32_t>(n, 0)};
  for (auto const &g : gens) {
    VectorSet next;
    for (auto const &v : out)
      for (std::uint64_t c = 0; c < p; ++c) {
        std::vector<std::uint32_t> w(n);
        for (std::size_t i = 0; i < n; ++i)
          w[i] = static_cast<std::uint32_t>((v[i] + c * g[i]) % p);
        next.insert(w);
      }
    out = std::move(next);
  }
  return out;
}

// Smallest subspace containing `w` and `g`, as explicit vectors.
VectorSet extend(VectorSet const &w, std::vector<std::uint32_t> const &g, std::uint64_t p)
{
  if (w.count(g))
    return w;
  VectorSet out;
  for (auto const &v : w)
    for (std::uint64_t c = 0; c < p; ++c) {
      std::vector<std::uint32_t> x(v.size());
      for (std::size_t i = 0; i < v.size(); ++i)
        x[i] = static_cast<std::uint32_t>((v[i] + c * g[i]) % p);
      out.insert(x);
    }
  return out;
}

// Every invariant subspace: each one is a sum of cyclic submodules, and the
// cyclic submodule of v is the span of its orbit under the matrices.
std::set<VectorSet> invariant_subspaces(std::vector<Matrix> const &mats, std::size_t n, std::uint64_t p)
{
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i)
    total *= p;
  std::set<VectorSet> cyclic_parts;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::uint32_t> v(n);
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i, c /= p)
      v[i] = static_cast<std::uint32_t>(c % p);
    VectorSet orbit{v};
    std::vector<std::vector<std::uint32_t>> queue{v};
    while (!queue.empty()) {
      auto x = queue.back();
      queue.pop_back();
      for (auto const &m : mats)
        if (auto y = act(x, m, p); orbit.insert(y).second)
          queue.push_back(y);
    }
    VectorSet w = span({}, n, p);
    for (auto const &x : orbit)
      w = extend(w, x, p);
    cyclic_parts.insert(w);
  }
  std::set<VectorSet> sums{span({}, n, p)};
  std::vector<VectorSet> frontier(sums.begin(), sums.end());
  while (!frontier.empty()) {
    VectorSet w = frontier.back();
    frontier.pop_back();
    for (auto const &part : cyclic_parts) {
      VectorSet sum = w;
      for (auto const &x : part)
        sum = extend(sum, x, p);
      if (sums.insert(sum).second)
        frontier.push_back(sum);
    }
  }
  std::set<VectorSet> invariant;
  for (auto const &w : sums) {
    bool ok = true;
    for (auto const &v : w)
      for (auto const &m : mats)
        ok = ok && w.count(act(v, m, p));
    if (ok)
      invariant.insert(w);
  }
  return invariant;
}

bool oracle_irreducible(GModule const &m)
{
  return invariant_subspaces(m.generator_matrices(), m.dimension(), m.p()).size() == 2;
}

std::set<VectorSet> oracle_minimal(GModule const &m)
{
  auto inv = invariant_subspaces(m.generator_matrices(), m.dimension(), m.p());
  std::set<VectorSet> out;
  for (auto const &w : inv) {
    if (w.size() == 1)
      continue;
    bool minimal = true;
    for (auto const &u : inv)
      if (u.size() > 1 && u.size() < w.size() &&
          std::includes(w.begin(), w.end(), u.begin(), u.end()))
        minimal = false;
    if (minimal)
      out.insert(w);
  }
  return out;
}

Matrix permutation_matrix(Perm const &g, std::size_t n)
{
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(i, g[i]) = 1;
  return m;
}

GModule permutation_module(Group const &g, std::uint64_t p)
{
  std::vector<Matrix> mats;
  for (auto const &x : g.generators())
    mats.push_back(permutation_matrix(x, g.degree()));
  return GModule(g, p, g.degree(), mats);
}

// S3 = GL(2,2): (1,2) swaps the coordinates, (1,2,3) acts with order 3.
GModule s3_natural_gf2()
{
  Group s3({Perm::parse("(1,2)", 3), Perm::parse("(1,2,3)", 3)}, 3);
  return GModule(s3, 2, 2, {Matrix::from_rows({{0, 1}, {1, 0}}), Matrix::from_rows({{0, 1}, {1, 1}})});
}

GModule c3_on_gf4()
{
  return GModule(cyclic(3), 2, 2, {Matrix::from_rows({{0, 1}, {1, 1}})});
}

// Q8 inside GL(2,3).
GModule q8_on_gf3_squared()
{
  return GModule(quaternion(8), 3, 2, {Matrix::from_rows({{0, 1}, {2, 0}}), Matrix::from_rows({{1, 1}, {1, 2}})});
}

std::vector<GModule> sample_modules()
{
  std::vector<GModule> out = {s3_natural_gf2(), c3_on_gf4(), q8_on_gf3_squared()};
  for (std::uint64_t p : {2, 3, 5}) {
    out.push_back(permutation_module(sym(3), p));
    out.push_back(permutation_module(cyclic(4), p));
  }
  out.push_back(permutation_module(alt(4), 2));
  out.push_back(permutation_module(dihedral(4), 3));
  return out;
}

SubgroupLattice lattice_of(Group const &g)
{
  return SubgroupLattice::enumerate(std::make_shared<const ElementTable>(g), 2000);
}

Matrix random_invertible(PrimeField const &f, std::size_t n, std::mt19937 &rng)
{
  while (true) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m.at(i, j) = static_cast<std::uint32_t>(rng() % f.p());
    if (inverse(f, m))
      return m;
  }
}

} // namespace

TEST_CASE("prime field arithmetic")
{
  PrimeField f(13);
  for (std::uint32_t a = 1; a < 13; ++a) {
    CHECK(f.mul(a, f.inv(a)) == 1);
    CHECK(f.pow(a, 12) == 1);
  }
  CHECK_THROWS_AS(f.inv(0), std::domain_error);
  CHECK(f.from_int(-1) == 12);
  CHECK(f.to_signed(12) == -1);
  CHECK(is_prime(2));
  CHECK(is_prime(199));
  CHECK(!is_prime(1));
  CHECK(!is_prime(91));
}

TEST_CASE("matrix inverse, rank and nullspace")
{
  PrimeField f(7);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a = random_invertible(f, 4, rng);
    auto inv = inverse(f, a);
    REQUIRE(inv);
    CHECK(multiply(f, a, *inv).is_identity());
    CHECK(rank(f, a) == 4);
    CHECK(determinant(f, a) != 0);
  }
  Matrix singular = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {0, 1, 1}});
  CHECK(rank(f, singular) == 2);
  CHECK(!inverse(f, singular));
  auto null = nullspace(f, singular);
  REQUIRE(null.size() == 1);
  for (std::size_t r = 0; r < 3; ++r) {
    std::uint64_t s = 0;
    for (std::size_t c = 0; c < 3; ++c)
      s += std::uint64_t{singular.at(r, c)} * null[0][c];
    CHECK(s % 7 == 0);
  }
}

TEST_CASE("subspaces of GF(2)^3")
{
  PrimeField f(2);
  std::set<std::vector<Vector>> seen;
  for (std::uint64_t a = 0; a < 8; ++a)
    for (std::uint64_t b = 0; b < 8; ++b)
      for (std::uint64_t c = 0; c < 8; ++c) {
        Subspace s(3);
        s.insert(f, decode_vector(a, 2, 3));
        s.insert(f, decode_vector(b, 2, 3));
        s.insert(f, decode_vector(c, 2, 3));
        seen.insert(s.basis());
      }
  CHECK(seen.size() == 16);
  Subspace w(3);
  CHECK(w.insert(f, {1, 1, 0}));
  CHECK(!w.insert(f, {1, 1, 0}));
  CHECK(w.contains(f, {1, 1, 0}));
  CHECK(!w.contains(f, {1, 0, 0}));
  CHECK(w.is_subspace_of(f, Subspace::whole(3)));
}

TEST_CASE("homomorphism check rejects inconsistent matrices")
{
  Group s3 = sym(3);
  // sending a transposition and a 3-cycle to commuting matrices of the wrong orders
  CHECK_THROWS_AS(GModule(s3, 2, 2, {Matrix::from_rows({{0, 1}, {1, 1}}), Matrix::from_rows({{0, 1}, {1, 1}})}),
                  ModuleError);
}

TEST_CASE("irreducibility matches subspace enumeration")
{
  for (auto const &m : sample_modules()) {
    CAPTURE(m.acting().order());
    CAPTURE(m.p());
    CAPTURE(m.dimension());
    CHECK(is_irreducible(m) == oracle_irreducible(m));
  }
}

TEST_CASE("minimal submodules match subspace enumeration")
{
  for (auto const &m : sample_modules()) {
    std::set<VectorSet> computed;
    for (auto const &w : minimal_submodules(m))
      computed.insert(span(w.basis(), m.dimension(), m.p()));
    CAPTURE(m.acting().order());
    CAPTURE(m.p());
    CHECK(computed == oracle_minimal(m));
  }
  CHECK(minimal_submodules(permutation_module(sym(3), 2)).size() == 2);
  CHECK(minimal_submodules(permutation_module(sym(3), 3)).size() == 1);
}

TEST_CASE("S3 on GF(2)^2 is quasi-primitive but not strongly irreducible")
{
  GModule m = s3_natural_gf2();
  auto l = lattice_of(m.acting());
  CHECK(m.is_faithful());
  CHECK(is_irreducible(m));
  CHECK(!is_strongly_irreducible(m, l));
  CHECK(is_quasi_primitive(m, l));
}

TEST_CASE("strong irreducibility by restriction to each maximal subgroup")
{
  for (auto const &m : sample_modules()) {
    auto l = lattice_of(m.acting());
    bool expected = oracle_irreducible(m);
    for (auto h : l.maximal_subgroups()) {
      GModule r = restrict_to(m, l.table().to_perms(l.generators(h)));
      expected = expected && oracle_irreducible(r);
    }
    CHECK(is_strongly_irreducible(m, l) == expected);
  }
  auto q8 = q8_on_gf3_squared();
  CHECK(is_strongly_irreducible(q8, lattice_of(q8.acting())));
  CHECK(is_quasi_primitive(q8, lattice_of(q8.acting())));
  auto c3 = c3_on_gf4();
  CHECK(!is_strongly_irreducible(c3, lattice_of(c3.acting())));
}

TEST_CASE("endomorphism algebras of irreducible modules")
{
  CHECK(intertwiners(s3_natural_gf2(), s3_natural_gf2()).size() == 1);
  CHECK(intertwiners(q8_on_gf3_squared(), q8_on_gf3_squared()).size() == 1);
  CHECK(intertwiners(c3_on_gf4(), c3_on_gf4()).size() == 2);
}

TEST_CASE("dual is an involution and change of basis changes nothing")
{
  std::mt19937 rng(5);
  for (auto const &m : sample_modules()) {
    GModule dd = dual_module(dual_module(m));
    CHECK(dd.generator_matrices() == m.generator_matrices());
    GModule d = dual_module(m);
    CHECK(d.kernel_elements() == m.kernel_elements());
    CHECK(is_irreducible(d) == is_irreducible(m));

    auto l = lattice_of(m.acting());
    GModule c = change_basis(m, random_invertible(m.field(), m.dimension(), rng));
    CHECK(module_isomorphic(m, c));
    CHECK(is_irreducible(c) == is_irreducible(m));
    CHECK(is_strongly_irreducible(c, l) == is_strongly_irreducible(m, l));
    if (is_irreducible(m))
      CHECK(is_quasi_primitive(c, l) == is_quasi_primitive(m, l));
  }
  CHECK(module_isomorphic(c3_on_gf4(), dual_module(c3_on_gf4())));
}

TEST_CASE("chief factor modules of S4")
{
  auto l = lattice_of(sym(4));
  auto series = chief_series(l);
  std::multiset<std::uint64_t> centralizer_orders, reduced_orders;
  for (std::size_t i = 0; i < series.factors.size(); ++i) {
    GModule m = chief_factor_module(l, series, i);
    CHECK(m.dimension() == series.factors[i].dimension);
    CHECK(m.p() == series.factors[i].prime);
    CHECK(is_irreducible(m));
    SubgroupId c = centralizer(m, l);
    centralizer_orders.insert(l.order(c));
    GModule r = restrict_and_lift(m, l, c);
    CHECK(r.is_faithful());
    reduced_orders.insert(r.acting().order());
    if (m.dimension() == 2) {
      CHECK(!is_strongly_irreducible(m, l));
      CHECK(is_quasi_primitive(m, l));
    }
  }
  CHECK(centralizer_orders == std::multiset<std::uint64_t>{4, 12, 24});
  CHECK(reduced_orders == std::multiset<std::uint64_t>{1, 2, 6});
}

TEST_CASE("the order-72 affine group acts strongly irreducibly on its Fitting subgroup")
{
  auto l = lattice_of(agl1(9));
  auto series = chief_series(l);
  bool found = false;
  for (std::size_t i = 0; i < series.factors.size(); ++i) {
    if (series.factors[i].order != 9)
      continue;
    found = true;
    GModule m = chief_factor_module(l, series, i);
    SubgroupId c = centralizer(m, l);
    CHECK(l.order(c) == 9);
    GModule r = restrict_and_lift(m, l, c);
    auto rl = lattice_of(r.acting());
    CHECK(r.acting().order() == 8);
    CHECK(is_strongly_irreducible(r, rl));
    CHECK(is_strongly_irreducible(m, l));
    GModule d = dual_module(r);
    CHECK(d.is_faithful());
    CHECK(is_strongly_irreducible(d, rl));
  }
  CHECK(found);
}
