#include "doctest.h"

#include <numeric>

#include "oracles.hpp"
#include "wsm/constructors.hpp"
#include "wsm/element_table.hpp"
#include "wsm/group.hpp"
#include "wsm/lattice.hpp"

using namespace wsm;

TEST_CASE("cycle notation round trip")
{
  CHECK(Perm::parse("(1,2)(3,4)").to_string() == "(1,2)(3,4)");
  CHECK(Perm::parse("(3,1,2)").to_string() == "(1,2,3)");
  CHECK(Perm::parse("()", 4).to_string() == "()");
  CHECK(Perm(5).to_string() == "()");
  CHECK(Perm::parse("(1,2)", 6).degree() == 6);
  CHECK_THROWS_AS(Perm::parse("(1,1)"), PermError);
  CHECK_THROWS_AS(Perm::parse("(0,1)"), PermError);
  CHECK_THROWS_AS(Perm::parse("(1,2"), PermError);
  CHECK_THROWS_AS(Perm::parse("(1,2)(2,3)"), PermError);
}

TEST_CASE("products apply the left factor first")
{
  Perm a = Perm::parse("(1,2)", 3), b = Perm::parse("(2,3)", 3);
  // 1 -> 2 -> 3, 3 -> 3 -> 2, 2 -> 1 -> 1
  CHECK((a * b).to_string() == "(1,3,2)");
  CHECK((a * b)[0] == b[a[0]]);
  CHECK(conjugate(b, a) == a.inverse() * b * a);
  Perm c = Perm::parse("(1,2,3,4,5)(6,7)");
  CHECK(c.order() == 10);
  CHECK(c.pow(10).is_identity());
  CHECK(c.pow(-1) == c.inverse());
  CHECK((c * c.inverse()).is_identity());
  CHECK(!Perm::parse("(1,2)").is_even());
  CHECK(Perm::parse("(1,2,3)").is_even());
}

TEST_CASE("Schreier-Sims order agrees with brute-force closure")
{
  std::vector<std::vector<std::string>> gens_list = {
    {"(1,2)", "(1,2,3,4)"},
    {"(1,2,3)", "(1,2,3,4,5)"},
    {"(1,2,3,4,5)", "(2,5)(3,4)"},
    {"(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"},
    {"(1,2)(3,4)", "(1,3)(2,4)", "(5,6,7)"},
    {"(1,2,3)(4,5,6)", "(1,4)(2,5)(3,6)", "(7,8)"},
    {"(1,3,5,7)(2,4,6,8)", "(1,2)(3,8)(4,7)(5,6)"},
  };
  for (auto const &texts : gens_list) {
    std::vector<Perm> gens;
    std::size_t degree = 0;
    for (auto const &t : texts)
      degree = std::max(degree, Perm::parse(t).degree());
    for (auto const &t : texts)
      gens.push_back(Perm::parse(t, degree));
    Group g(gens, degree);
    auto all = oracle::closure(gens, degree);
    CAPTURE(texts[0]);
    CHECK(g.order() == all.size());
    for (auto const &x : all)
      CHECK(g.contains(x));
    auto listed = g.elements(10000);
    CHECK(std::set<Perm>(listed.begin(), listed.end()) == all);
  }
}

TEST_CASE("membership matches closure inside S5")
{
  Group a5 = alt(5);
  Group s5 = sym(5);
  auto a5_all = oracle::closure(a5.generators(), 5);
  for (auto const &x : oracle::closure(s5.generators(), 5))
    CHECK(a5.contains(x) == (a5_all.count(x) == 1));
}

TEST_CASE("builtin constructors have the textbook orders")
{
  std::vector<std::uint64_t> factorial = {1, 1, 2, 6, 24, 120, 720, 5040};
  for (std::uint64_t n = 1; n <= 7; ++n) {
    CHECK(sym(n).order() == factorial[n]);
    CHECK(alt(n).order() == std::max<std::uint64_t>(1, factorial[n] / 2));
  }
  for (std::uint64_t n = 1; n <= 40; ++n) {
    CHECK(cyclic(n).order() == n);
    CHECK(dihedral(n).order() == 2 * n);
  }
  CHECK(elem_abelian(2, 7).order() == 128);
  CHECK(elem_abelian(3, 4).order() == 81);
  for (std::uint64_t n : {8, 16, 32, 64, 128})
    CHECK(quaternion(n).order() == n);
  for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 25, 27})
    CHECK(agl1(q).order() == q * (q - 1));
  CHECK(direct(sym(3), cyclic(4)).order() == 24);

  CHECK_THROWS_AS(sym(0), ConstructorError);
  CHECK_THROWS_AS(quaternion(12), ConstructorError);
  CHECK_THROWS_AS(agl1(6), ConstructorError);
  CHECK_THROWS_AS(elem_abelian(4, 2), ConstructorError);
  CHECK_THROWS_AS(build_from_source("sym(3"), ConstructorError);
  CHECK_THROWS_AS(build_from_source("foo(3)"), ConstructorError);
  CHECK(build_from_source(" direct( alt(4) , cyclic(2) ) ").order() == 24);
}

TEST_CASE("generalized quaternion groups have a single involution")
{
  for (std::uint64_t n : {8, 16, 32}) {
    Group q = quaternion(n);
    std::size_t involutions = 0;
    for (auto const &x : q.elements(1000))
      involutions += x.order() == 2;
    CHECK(involutions == 1);
  }
}

TEST_CASE("affine group over GF(9) is a Frobenius group of order 72")
{
  Group g = agl1(9);
  auto elements = g.elements(100);
  std::size_t fixed_point_free = 0, one_fixed = 0;
  for (auto const &x : elements) {
    std::size_t fixed = 0;
    for (std::size_t i = 0; i < 9; ++i)
      fixed += x[i] == i;
    fixed_point_free += fixed == 0;
    one_fixed += fixed == 1;
  }
  CHECK(fixed_point_free == 8);  // nontrivial translations
  CHECK(one_fixed == 72 - 9);
}

TEST_CASE("solvability")
{
  CHECK(is_solvable(sym(4)));
  CHECK(is_solvable(agl1(9)));
  CHECK(is_solvable(quaternion(16)));
  CHECK(!is_solvable(alt(5)));
  CHECK(!is_solvable(sym(5)));
  CHECK(!is_solvable(direct(alt(5), cyclic(2))));
}

TEST_CASE("lattice-free maximality agrees with the lattice")
{
  for (char const *src : {"sym(4)", "alt(5)", "dihedral(6)", "agl1(8)", "quaternion(16)"}) {
    Group g = build_from_source(src);
    auto l = SubgroupLattice::enumerate(std::make_shared<const ElementTable>(g), 2000);
    for (std::uint32_t i = 0; i + 1 < l.size(); ++i) {
      SubgroupId h{i};
      CAPTURE(src);
      CHECK(is_maximal_in(g, l.ref(h)) == l.is_maximal(h));
    }
  }
}

TEST_CASE("direct product of two copies of A7")
{
  Group a = alt(7);
  Group g = direct(a, a);
  CHECK(g.order() == 6350400);
  CHECK(g.degree() == 14);
  // A6 x A6 is not maximal: A6 x A7 lies between
  Group b = alt(6);
  std::vector<Perm> gens;
  for (auto const &x : b.generators())
    gens.push_back(x.extended(7).extended(14));
  for (auto const &x : b.generators())
    gens.push_back(x.extended(7).shifted(7, 14));
  Group bb(gens, 14);
  CHECK(bb.order() == 129600);
  CHECK(is_subgroup(g, bb));
  CHECK(!is_maximal_in(g, bb.as_subgroup_of(g)));
}

TEST_CASE("normal closure and cores")
{
  Group s4 = sym(4);
  Perm t = Perm::parse("(1,2)", 4);
  CHECK(normal_closure(s4, std::vector<Perm>{t}).order() == 24);
  CHECK(normal_closure(s4, std::vector<Perm>{Perm::parse("(1,2)(3,4)", 4)}).order() == 4);
  Group h({t}, 4);
  CHECK(normal_core(s4, h.as_subgroup_of(s4)).order == 1);
  CHECK(derived_subgroup(s4).order() == 12);
  CHECK(same_group(derived_subgroup(derived_subgroup(s4)), Group({Perm::parse("(1,2)(3,4)"), Perm::parse("(1,3)(2,4)")}, 4)));
}
