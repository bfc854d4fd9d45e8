#include "doctest.h"

#include "wsm/constructors.hpp"
#include "wsm/verifiers.hpp"

using namespace wsm;

namespace
{

struct Fixture
{
  explicit Fixture(std::string const &source)
  : table(std::make_shared<const ElementTable>(build_from_source(source)))
  , lattice(SubgroupLattice::enumerate(table, 2000))
  {
  }

  std::shared_ptr<const ElementTable> table;
  SubgroupLattice lattice;

  CharacterTable characters() const { return character_table(ConjugacyClasses::compute(table)); }
  std::vector<ChiefModule> modules() const { return chief_factor_modules(lattice, chief_series(lattice)); }
};

// WSM by definition, straight from the covering relation.
bool wsm_by_definition(SubgroupLattice const &l)
{
  for (std::uint32_t i = 0; i + 1 < l.size(); ++i) {
    SubgroupId h{i};
    std::size_t members = 0, maximal_in = 0;
    for (auto m : l.maximal_subgroups())
      if (l.contains(m, h)) {
        ++members;
        maximal_in += l.is_maximal_in(h, m);
      }
    if (!l.is_maximal(h) && maximal_in > 0 && maximal_in < members)
      return false;
  }
  return true;
}

} // namespace

TEST_CASE("WSM examples")
{
  CHECK(!is_wsm(Fixture("sym(4)").lattice));
  CHECK(is_wsm(Fixture("sym(3)").lattice));
  CHECK(is_wsm(Fixture("cyclic(1)").lattice));
  CHECK(is_wsm(Fixture("agl1(9)").lattice));
  CHECK(!is_wsm(Fixture("alt(4)").lattice));
  for (char const *src : {"sym(4)", "sym(3)", "alt(4)", "alt(5)", "agl1(9)", "dihedral(6)", "quaternion(16)",
                          "direct(sym(3),cyclic(2))", "agl1(8)", "direct(alt(4),cyclic(2))", "elem_abelian(3,3)"}) {
    Fixture f(src);
    CAPTURE(src);
    CHECK(is_wsm(f.lattice) == wsm_by_definition(f.lattice));
  }
}

TEST_CASE("check B: S4 has exactly one bad member")
{
  auto r = verify_theorem_B(Fixture("sym(4)").lattice);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.details["max_bad_members"] == 1);
  auto c = verify_theorem_B(Fixture("cyclic(7)").lattice);
  CHECK(c.verdict == Verdict::pass);
  CHECK(verify_theorem_B(Fixture("alt(5)").lattice).verdict == Verdict::skipped);
}

TEST_CASE("key lemma holds with and without solvability")
{
  for (char const *src : {"sym(4)", "alt(5)", "sym(5)", "direct(alt(5),cyclic(2))", "agl1(9)"}) {
    auto r = verify_key_lemma(Fixture(src).lattice);
    CAPTURE(src);
    CHECK(r.verdict == Verdict::pass);
  }
  auto s4 = verify_key_lemma(Fixture("sym(4)").lattice);
  CHECK(s4.details["triples"].get<std::size_t>() > 0);
}

TEST_CASE("check C computes both sides")
{
  auto s4 = verify_theorem_C(Fixture("sym(4)").lattice);
  CHECK(s4.verdict == Verdict::pass);
  CHECK(s4.details["wsm"] == false);
  CHECK(s4.details["non_frattini_strongly_irreducible"] == false);
  auto agl = verify_theorem_C(Fixture("agl1(9)").lattice);
  CHECK(agl.verdict == Verdict::pass);
  CHECK(agl.details["wsm"] == true);
  CHECK(agl.details["non_frattini_strongly_irreducible"] == true);
  auto cp = verify_theorem_C(Fixture("cyclic(7)").lattice);
  CHECK(cp.details["wsm"] == true);
  CHECK(cp.details["non_frattini_strongly_irreducible"] == true);
  CHECK(verify_theorem_C(Fixture("alt(5)").lattice).verdict == Verdict::skipped);
}

TEST_CASE("check A: non-vanishing elements and the Fitting subgroup")
{
  Fixture s3("sym(3)");
  auto r = verify_theorem_A(s3.lattice, s3.characters());
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.details["nonvanishing_elements"] == 3);
  CHECK(r.details["fitting_order"] == 3);

  Fixture agl("agl1(9)");
  CHECK(verify_theorem_A(agl.lattice, agl.characters()).verdict == Verdict::pass);

  Fixture s4("sym(4)");
  auto skipped = verify_theorem_A(s4.lattice, s4.characters());
  CHECK(skipped.verdict == Verdict::skipped);
  CHECK(!skipped.reason.empty());
  CHECK(skipped.details["nonvanishing_in_fitting"] == true);

  Fixture a5("alt(5)");
  CHECK(verify_theorem_A(a5.lattice, a5.characters()).verdict == Verdict::skipped);
}

TEST_CASE("module lemmas on S4 and the order-72 group")
{
  for (char const *src : {"sym(4)", "agl1(9)", "quaternion(8)", "alt(4)", "cyclic(1)"}) {
    Fixture f(src);
    auto mods = f.modules();
    CAPTURE(src);
    CHECK(verify_lemma_3_1(f.lattice, mods).verdict == Verdict::pass);
    CHECK(verify_lemma_4_1(f.lattice, mods).verdict == Verdict::pass);
    CHECK(verify_lemma_4_3(f.lattice, mods).verdict == Verdict::pass);
  }
  Fixture s4("sym(4)");
  auto r = verify_lemma_4_1(s4.lattice, s4.modules());
  bool s3_exhibit = false;
  for (auto const &e : r.details["quasi_primitive_not_strongly_irreducible"])
    s3_exhibit = s3_exhibit || (e["acting_order"] == 6 && e["dimension"] == 2 && e["prime"] == 2);
  CHECK(s3_exhibit);
}

TEST_CASE("supersolvable and order-72 remarks")
{
  Fixture agl("agl1(9)");
  CHECK(!is_supersolvable(agl.lattice));
  auto r = verify_remark_supersolvable(agl.lattice);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.details["wsm"] == true);
  CHECK(r.details["supersolvable"] == false);
  CHECK(verify_remark_order72(agl.lattice).verdict == Verdict::pass);
  CHECK(verify_remark_order72(Fixture("sym(4)").lattice).verdict == Verdict::fail);
  for (char const *src : {"dihedral(10)", "quaternion(16)", "cyclic(30)", "agl1(7)"})
    CHECK(verify_remark_supersolvable(Fixture(src).lattice).verdict == Verdict::pass);
}

TEST_CASE("nonsolvable counterexample at p = 7")
{
  auto r = build_nonsolvable_counterexample(7);
  CHECK(r.verdict == Verdict::pass);
  CHECK(r.details["group_order"] == 6350400);
  CHECK(r.details["index_H_in_M"] == 7);
  CHECK(r.details["index_BxB_in_X1"] == 7);
  CHECK(r.details["subgroups"]["BxB"]["order"] == 129600);
  CHECK(r.details["subgroups"]["X1"]["order"] == 907200);
  for (char const *key : {"H_maximal_in_M", "X1_X2_maximal_in_G", "BxB_strictly_between_H_and_Xi", "M_maximal_in_G",
                          "two_distinct_bad_members"})
    CHECK(r.details[key] == true);
  CHECK(build_nonsolvable_counterexample(5).verdict == Verdict::skipped);
  CHECK(build_nonsolvable_counterexample(7, 100).verdict == Verdict::skipped);
}

TEST_CASE("reports serialize witnesses in cycle notation")
{
  Fixture s4("sym(4)");
  auto r = verify_remark_order72(s4.lattice);
  auto j = to_json(r);
  CHECK(j["theorem"] == "remark_order72");
  CHECK(j["verdict"] == "fail");
  CHECK(!j["witnesses"].empty());
  auto w = subgroup_witness(s4.lattice, s4.lattice.whole());
  CHECK(w["order"] == 24);
  CHECK(w["generators"][0].get<std::string>().front() == '(');
}
