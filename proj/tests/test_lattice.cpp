#include "doctest.h"

#include <map>

#include "oracles.hpp"
#include "wsm/constructors.hpp"
#include "wsm/element_table.hpp"
#include "wsm/lattice.hpp"

using namespace wsm;

namespace
{

SubgroupLattice lattice_of(std::string const &source, std::uint64_t bound = 2000)
{
  return SubgroupLattice::enumerate(std::make_shared<const ElementTable>(build_from_source(source)), bound);
}

std::uint32_t mask_of(SubgroupLattice const &l, SubgroupId h)
{
  std::uint32_t mask = 0;
  l.elements(h).for_each([&](std::size_t x) { mask |= 1u << x; });
  return mask;
}

SubgroupId subgroup(SubgroupLattice const &l, std::vector<std::string> const &gens)
{
  std::vector<std::uint32_t> idx;
  for (auto const &g : gens)
    idx.push_back(l.table().index_of(Perm::parse(g, l.group().degree())));
  return l.generated_by(idx);
}

// Chief series enumerated exhaustively: maximal chains of normal subgroups.
void all_chief_series(SubgroupLattice const &l, std::vector<SubgroupId> const &normals, SubgroupId top,
                      std::vector<std::uint64_t> &factors, std::set<std::multiset<std::uint64_t>> &out,
                      std::size_t &budget)
{
  if (budget == 0)
    return;
  if (top == l.trivial()) {
    out.insert(std::multiset<std::uint64_t>(factors.begin(), factors.end()));
    --budget;
    return;
  }
  for (auto n : normals) {
    if (n == top || !l.contains(top, n))
      continue;
    bool minimal = true;  // no normal K with n < K < top
    for (auto k : normals)
      if (k != n && k != top && l.contains(top, k) && l.contains(k, n)) {
        minimal = false;
        break;
      }
    if (!minimal)
      continue;
    factors.push_back(l.order(top) / l.order(n));
    all_chief_series(l, normals, n, factors, out, budget);
    factors.pop_back();
  }
}

} // namespace

TEST_CASE("subgroup counts of small groups")
{
  std::map<std::string, std::pair<std::size_t, std::size_t>> expected = {
    {"sym(4)", {30, 11}},
    {"quaternion(8)", {6, 6}},
    {"sym(3)", {6, 4}},
    {"dihedral(4)", {10, 8}},
    {"alt(4)", {10, 5}},
    {"alt(5)", {59, 9}},
    {"elem_abelian(2,3)", {16, 16}},
  };
  for (auto const &[source, counts] : expected) {
    auto l = lattice_of(source);
    CAPTURE(source);
    CHECK(l.size() == counts.first);
    CHECK(l.classes().size() == counts.second);
  }
}

TEST_CASE("lattice matches subset-closure enumeration")
{
  for (char const *src : {"sym(3)", "dihedral(4)", "quaternion(8)", "alt(4)", "elem_abelian(2,3)", "cyclic(12)",
                          "dihedral(6)", "direct(cyclic(2),cyclic(4))"}) {
    auto l = lattice_of(src);
    auto masks = oracle::all_subgroup_masks(l.table().elements());
    std::set<std::uint32_t> from_lattice;
    for (std::uint32_t i = 0; i < l.size(); ++i)
      from_lattice.insert(mask_of(l, SubgroupId{i}));
    CAPTURE(src);
    CHECK(from_lattice == std::set<std::uint32_t>(masks.begin(), masks.end()));

    // covers by definition: no subgroup strictly between
    for (std::uint32_t i = 0; i < l.size(); ++i)
      for (std::uint32_t j = 0; j < l.size(); ++j) {
        std::uint32_t a = mask_of(l, SubgroupId{i}), b = mask_of(l, SubgroupId{j});
        bool proper = a != b && (a & b) == a;
        bool cover = proper;
        for (auto m : masks)
          if (cover && m != a && m != b && (a & m) == a && (m & b) == m)
            cover = false;
        CHECK(l.is_maximal_in(SubgroupId{i}, SubgroupId{j}) == cover);
      }
  }
}

TEST_CASE("S4: the transposition subgroup is weak second maximal only")
{
  auto l = lattice_of("sym(4)");
  SubgroupId h = subgroup(l, {"(1,2)"});
  CHECK(l.order(h) == 2);
  CHECK(classify_chain_position(l, h) == ChainPosition::weak_second_maximal_only);
  auto members = max_over(l, h);
  CHECK(members.size() == 3);
  std::size_t bad = 0;
  for (auto x : members)
    if (!l.is_maximal_in(h, x)) {
      ++bad;
      CHECK(l.order(x) == 8);
    }
  CHECK(bad == 1);
  CHECK(classify_chain_position(l, l.trivial()) == ChainPosition::neither);
  CHECK(classify_chain_position(l, subgroup(l, {"(1,2,3)", "(1,2)"})) == ChainPosition::maximal);
  CHECK(classify_chain_position(l, subgroup(l, {"(1,2,3)"})) == ChainPosition::second_maximal);
  CHECK_THROWS_AS(max_over(l, l.whole()), GroupError);
}

TEST_CASE("Frattini and Fitting subgroups from their definitions")
{
  for (char const *src : {"sym(4)", "quaternion(16)", "dihedral(12)", "agl1(9)", "cyclic(36)", "alt(5)",
                          "direct(sym(3),cyclic(4))"}) {
    auto l = lattice_of(src);
    Bitset phi = l.elements(l.whole());
    for (auto m : l.maximal_subgroups())
      phi &= l.elements(m);
    CHECK(l.elements(frattini(l)) == phi);

    // largest normal nilpotent subgroup: nilpotent = direct product of its
    // Sylow subgroups, checked through element orders commuting across primes
    SubgroupId best = l.trivial();
    for (auto n : l.normal_subgroups()) {
      bool nilpotent = true;
      auto elems = l.elements(n).indices();
      ElementTable const &t = l.table();
      for (auto a : elems)
        for (auto b : elems)
          if (oracle::gcd(t.element_order(a), t.element_order(b)) == 1 && t.mul(a, b) != t.mul(b, a))
            nilpotent = false;
      // coprime-order commuting is equivalent to nilpotence for finite groups
      if (nilpotent && l.order(n) > l.order(best))
        best = n;
    }
    CAPTURE(src);
    CHECK(l.elements(fitting(l)) == l.elements(best));
  }
}

TEST_CASE("normal cores are intersections of conjugates")
{
  auto l = lattice_of("sym(4)");
  ElementTable const &t = l.table();
  for (std::uint32_t i = 0; i < l.size(); ++i) {
    SubgroupId h{i};
    Bitset core = l.elements(h);
    for (std::uint32_t g = 0; g < t.size(); ++g) {
      Bitset conj = t.empty_set();
      l.elements(h).for_each([&](std::size_t x) { conj.set(t.conj(static_cast<std::uint32_t>(x), g)); });
      core &= conj;
    }
    CHECK(l.elements(l.core(h)) == core);
  }
}

TEST_CASE("chief factors are independent of the chosen series")
{
  std::size_t checked = 0;
  for (std::uint64_t order = 1; order <= 48; ++order) {
    std::vector<std::string> sources;
    if (order <= 48)
      sources.push_back("cyclic(" + std::to_string(order) + ")");
    if (order % 2 == 0 && order >= 6)
      sources.push_back("dihedral(" + std::to_string(order / 2) + ")");
    for (auto const &src : sources) {
      auto l = lattice_of(src);
      auto series = chief_series(l);
      std::multiset<std::uint64_t> computed;
      for (auto const &f : series.factors)
        computed.insert(f.order);
      std::set<std::multiset<std::uint64_t>> all;
      std::vector<std::uint64_t> factors;
      std::size_t budget = 200;
      auto normals = l.normal_subgroups();
      all_chief_series(l, normals, l.whole(), factors, all, budget);
      CAPTURE(src);
      CHECK(all.size() == 1);
      CHECK(*all.begin() == computed);
      ++checked;
    }
  }
  for (char const *src : {"sym(4)", "quaternion(16)", "agl1(5)", "direct(sym(3),sym(3))", "direct(alt(4),cyclic(2))",
                          "direct(quaternion(8),cyclic(3))", "elem_abelian(2,4)", "direct(dihedral(4),cyclic(2))"}) {
    auto l = lattice_of(src);
    std::multiset<std::uint64_t> computed;
    for (auto const &f : chief_series(l).factors)
      computed.insert(f.order);
    std::set<std::multiset<std::uint64_t>> all;
    std::vector<std::uint64_t> factors;
    std::size_t budget = 200;
    all_chief_series(l, l.normal_subgroups(), l.whole(), factors, all, budget);
    CAPTURE(src);
    CHECK(all.size() == 1);
    CHECK(*all.begin() == computed);
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("chief factor labels")
{
  auto l = lattice_of("sym(4)");
  auto series = chief_series(l);
  REQUIRE(series.factors.size() == 3);
  for (auto const &f : series.factors) {
    CHECK(f.elementary_abelian);
    CHECK(f.non_frattini);
  }

  auto q = lattice_of("quaternion(8)");
  std::size_t frattini_factors = 0;
  for (auto const &f : chief_series(q).factors)
    frattini_factors += !f.non_frattini;
  CHECK(frattini_factors == 1);  // the centre is the Frattini subgroup

  auto a5 = lattice_of("alt(5)");
  auto s = chief_series(a5);
  REQUIRE(s.factors.size() == 1);
  CHECK(!s.factors[0].elementary_abelian);
}

TEST_CASE("supersolvability")
{
  CHECK(is_supersolvable(lattice_of("sym(3)")));
  CHECK(is_supersolvable(lattice_of("dihedral(12)")));
  CHECK(is_supersolvable(lattice_of("quaternion(16)")));
  CHECK(!is_supersolvable(lattice_of("alt(4)")));
  CHECK(!is_supersolvable(lattice_of("sym(4)")));
  CHECK(!is_supersolvable(lattice_of("agl1(9)")));
  CHECK(is_supersolvable(lattice_of("agl1(7)")));
}

TEST_CASE("quotient groups")
{
  auto l = lattice_of("sym(4)");
  for (auto n : l.normal_subgroups()) {
    Quotient q = quotient_group(l, n);
    CHECK(q.group.order() * l.order(n) == 24);
    ElementTable const &t = l.table();
    for (std::uint32_t a = 0; a < t.size(); ++a)
      for (std::uint32_t b = 0; b < t.size(); b += 5)
        CHECK(q.image(t.mul(a, b)) == q.image(a) * q.image(b));
  }
}

TEST_CASE("lattice bound")
{
  auto t = std::make_shared<const ElementTable>(sym(5));
  CHECK_THROWS_AS(SubgroupLattice::enumerate(t, 100), BoundExceeded);
}
