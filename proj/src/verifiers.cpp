#include "wsm/verifiers.hpp"

#include <algorithm>

#include "wsm/constructors.hpp"
#include "wsm/gfp.hpp"

namespace wsm
{

std::string to_string(Verdict v)
{
  switch (v) {
  case Verdict::pass:
    return "pass";
  case Verdict::fail:
    return "fail";
  case Verdict::skipped:
    return "skipped";
  }
  return "unknown";
}

nlohmann::json to_json(VerificationReport const &r)
{
  nlohmann::json j = {{"theorem", r.theorem}, {"verdict", to_string(r.verdict)}};
  if (!r.reason.empty())
    j["reason"] = r.reason;
  j["witnesses"] = r.witnesses;
  j["details"] = r.details;
  return j;
}

std::vector<std::string> const &all_theorem_ids()
{
  static const std::vector<std::string> ids = {
    "A",         "B",         "C",         "key_lemma",           "lemma_3_1",
    "lemma_4_1", "lemma_4_3", "remark_supersolvable", "remark_order72", "remark_nonsolvable",
  };
  return ids;
}

namespace
{

VerificationReport skipped(std::string theorem, std::string reason)
{
  VerificationReport r;
  r.theorem = std::move(theorem);
  r.verdict = Verdict::skipped;
  r.reason = std::move(reason);
  return r;
}

nlohmann::json perms_json(std::vector<Perm> const &perms)
{
  nlohmann::json out = nlohmann::json::array();
  for (auto const &g : perms)
    out.push_back(g.to_string());
  return out;
}

nlohmann::json group_witness(Group const &g)
{
  return {{"generators", perms_json(g.generators())}, {"order", g.order()}};
}

nlohmann::json factor_json(ChiefFactor const &f, std::size_t index)
{
  return {{"index", index},         {"order", f.order},         {"prime", f.prime},
          {"dimension", f.dimension}, {"non_frattini", f.non_frattini}};
}

std::shared_ptr<const SubgroupLattice> lattice_of(Group const &g)
{
  auto table = std::make_shared<const ElementTable>(g);
  return std::make_shared<const SubgroupLattice>(SubgroupLattice::enumerate(table, kLatticeHardCap));
}

} // namespace

nlohmann::json subgroup_witness(SubgroupLattice const &lattice, SubgroupId h)
{
  return {{"generators", perms_json(lattice.table().to_perms(lattice.generators(h)))}, {"order", lattice.order(h)}};
}

std::optional<SubgroupId> wsm_obstruction(SubgroupLattice const &lattice)
{
  for (auto const &cls : lattice.classes()) {
    if (cls.representative == lattice.whole())
      continue;
    if (classify_chain_position(lattice, cls.representative) == ChainPosition::weak_second_maximal_only)
      return cls.representative;
  }
  return std::nullopt;
}

bool is_wsm(SubgroupLattice const &lattice)
{
  return !wsm_obstruction(lattice).has_value();
}

VerificationReport verify_theorem_B(SubgroupLattice const &lattice)
{
  if (!is_solvable(lattice.group()))
    return skipped("B", "group is not solvable");

  VerificationReport r;
  r.theorem = "B";
  std::size_t checked = 0;
  std::size_t worst = 0;
  for (auto const &cls : lattice.classes()) {
    SubgroupId h = cls.representative;
    if (h == lattice.whole())
      continue;
    ChainPosition pos = classify_chain_position(lattice, h);
    if (pos == ChainPosition::second_maximal)
      ++checked;
    if (pos != ChainPosition::weak_second_maximal_only)
      continue;
    ++checked;
    std::vector<SubgroupId> bad;
    for (auto x : max_over(lattice, h))
      if (!lattice.is_maximal_in(h, x))
        bad.push_back(x);
    worst = std::max(worst, bad.size());
    if (bad.size() > 1) {
      nlohmann::json members = nlohmann::json::array();
      for (auto x : bad)
        members.push_back(subgroup_witness(lattice, x));
      r.witnesses.push_back({{"H", subgroup_witness(lattice, h)}, {"bad_members", members}});
    }
  }
  r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"weak_second_maximal_classes", checked}, {"max_bad_members", worst}};
  return r;
}

VerificationReport verify_key_lemma(SubgroupLattice const &lattice)
{
  VerificationReport r;
  r.theorem = "key_lemma";
  std::size_t triples = 0;
  for (auto const &cls : lattice.classes()) {
    SubgroupId h = cls.representative;
    if (h == lattice.whole())
      continue;
    std::vector<SubgroupId> good, bad;
    for (auto x : max_over(lattice, h))
      (lattice.is_maximal_in(h, x) ? good : bad).push_back(x);
    if (good.empty() || bad.empty())
      continue;
    triples += good.size() * bad.size();
    SubgroupId core_h = lattice.core(h);
    for (auto m : good) {
      SubgroupId core_m = lattice.core(m);
      if (core_m != core_h)
        r.witnesses.push_back({{"H", subgroup_witness(lattice, h)},
                               {"M", subgroup_witness(lattice, m)},
                               {"X", subgroup_witness(lattice, bad.front())},
                               {"core_H", subgroup_witness(lattice, core_h)},
                               {"core_M", subgroup_witness(lattice, core_m)}});
    }
  }
  r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"triples", triples}};
  return r;
}

std::vector<ChiefModule> chief_factor_modules(SubgroupLattice const &lattice, ChiefSeries const &series)
{
  std::vector<ChiefModule> out;
  for (std::size_t i = 0; i < series.factors.size(); ++i) {
    if (!series.factors[i].elementary_abelian)
      continue;
    GModule m = chief_factor_module(lattice, series, i);
    SubgroupId c = centralizer(m, lattice);
    GModule reduced = restrict_and_lift(m, lattice, c);
    auto reduced_lattice = lattice_of(reduced.acting());
    out.push_back(ChiefModule{i, series.factors[i], std::move(m), c, std::move(reduced), std::move(reduced_lattice)});
  }
  return out;
}

VerificationReport verify_theorem_C(SubgroupLattice const &lattice)
{
  if (!is_solvable(lattice.group()))
    return skipped("C", "group is not solvable");

  VerificationReport r;
  r.theorem = "C";

  auto obstruction = wsm_obstruction(lattice);
  bool side_a = !obstruction.has_value();

  ChiefSeries series = chief_series(lattice);
  bool side_b = true;
  nlohmann::json factors = nlohmann::json::array();
  std::optional<nlohmann::json> failing_factor;
  for (auto const &cm : chief_factor_modules(lattice, series)) {
    nlohmann::json fj = factor_json(cm.factor, cm.index);
    if (cm.factor.non_frattini) {
      bool si = is_strongly_irreducible(cm.reduced, *cm.reduced_lattice);
      fj["strongly_irreducible"] = si;
      if (!si && side_b) {
        side_b = false;
        failing_factor = fj;
      }
    }
    factors.push_back(std::move(fj));
  }

  r.details = {{"wsm", side_a}, {"non_frattini_strongly_irreducible", side_b}, {"factors", factors}};
  if (side_a == side_b) {
    r.verdict = Verdict::pass;
  } else {
    r.verdict = Verdict::fail;
    nlohmann::json w = {{"wsm", side_a}, {"non_frattini_strongly_irreducible", side_b}};
    if (obstruction)
      w["weak_second_maximal_not_second_maximal"] = subgroup_witness(lattice, *obstruction);
    if (failing_factor)
      w["factor"] = *failing_factor;
    r.witnesses.push_back(std::move(w));
  }
  return r;
}

VerificationReport verify_theorem_A(SubgroupLattice const &lattice, CharacterTable const &table)
{
  if (!is_solvable(lattice.group()))
    return skipped("A", "group is not solvable");

  ConjugacyClasses const &cc = table.classes();
  Bitset fit = lattice.elements(fitting(lattice));
  std::size_t nonvanishing_elements = 0;
  nlohmann::json outside = nlohmann::json::array();
  auto nv = nonvanishing_classes(table);
  for (auto k : nv) {
    nonvanishing_elements += cc.class_size(k);
    Perm const &rep = cc.table().element(cc.representative(k));
    if (!fit.test(lattice.table().index_of(rep)))
      outside.push_back({{"class_representative", rep.to_string()}, {"class_size", cc.class_size(k)}});
  }
  nlohmann::json details = {{"nonvanishing_classes", nv.size()},
                            {"nonvanishing_elements", nonvanishing_elements},
                            {"fitting_order", fit.count()}};

  if (!is_wsm(lattice)) {
    VerificationReport r = skipped("A", "group is not a WSM-group");
    details["nonvanishing_in_fitting"] = outside.empty();
    if (!outside.empty()) {
      details["possible_counterexample_to_nonvanishing_conjecture"] = true;
      details["outside_fitting"] = outside;
    }
    r.details = std::move(details);
    return r;
  }

  VerificationReport r;
  r.theorem = "A";
  r.details = std::move(details);
  r.witnesses = outside;
  r.verdict = outside.empty() ? Verdict::pass : Verdict::fail;
  return r;
}

VerificationReport verify_lemma_3_1(SubgroupLattice const &lattice, std::vector<ChiefModule> const &modules)
{
  VerificationReport r;
  r.theorem = "lemma_3_1";
  for (auto const &cm : modules) {
    bool over_g = is_strongly_irreducible(cm.module, lattice);
    bool over_quotient = is_strongly_irreducible(cm.reduced, *cm.reduced_lattice);
    if (over_g != over_quotient) {
      nlohmann::json w = factor_json(cm.factor, cm.index);
      w["strongly_irreducible_over_G"] = over_g;
      w["strongly_irreducible_over_quotient"] = over_quotient;
      w["centralizer"] = subgroup_witness(lattice, cm.centralizer);
      r.witnesses.push_back(std::move(w));
    }
  }
  r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"modules", modules.size()}};
  return r;
}

VerificationReport verify_lemma_4_1(SubgroupLattice const &lattice, std::vector<ChiefModule> const &modules)
{
  VerificationReport r;
  r.theorem = "lemma_4_1";
  std::size_t strongly = 0;
  nlohmann::json converse = nlohmann::json::array();
  for (auto const &cm : modules) {
    struct Level
    {
      GModule const *module;
      SubgroupLattice const *lattice;
      char const *name;
    };
    for (Level level : {Level{&cm.module, &lattice, "G"}, Level{&cm.reduced, cm.reduced_lattice.get(), "quotient"}}) {
      if (!is_irreducible(*level.module))
        continue;
      bool si = is_strongly_irreducible(*level.module, *level.lattice);
      bool qp = is_quasi_primitive(*level.module, *level.lattice);
      nlohmann::json info = factor_json(cm.factor, cm.index);
      info["acting_group"] = level.name;
      info["acting_order"] = level.module->acting().order();
      if (si) {
        ++strongly;
        if (!qp)
          r.witnesses.push_back(info);
      } else if (qp) {
        converse.push_back(info);
      }
    }
  }
  r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"strongly_irreducible_modules", strongly}, {"quasi_primitive_not_strongly_irreducible", converse}};
  return r;
}

VerificationReport verify_lemma_4_3(SubgroupLattice const &, std::vector<ChiefModule> const &modules)
{
  VerificationReport r;
  r.theorem = "lemma_4_3";
  std::size_t checked = 0;
  for (auto const &cm : modules) {
    nlohmann::json info = factor_json(cm.factor, cm.index);
    GModule dual_g = dual_module(cm.module);
    if (dual_g.kernel_elements() != cm.module.kernel_elements()) {
      info["property"] = "kernel";
      r.witnesses.push_back(info);
      continue;
    }

    GModule const &v = cm.reduced;
    GModule dual = dual_module(v);
    ++checked;
    std::string broken;
    if (v.is_faithful() && !dual.is_faithful())
      broken = "faithful";
    else if (is_irreducible(v) != is_irreducible(dual))
      broken = "irreducible";
    else if (is_strongly_irreducible(v, *cm.reduced_lattice) != is_strongly_irreducible(dual, *cm.reduced_lattice))
      broken = "strongly_irreducible";
    if (!broken.empty()) {
      info["property"] = broken;
      r.witnesses.push_back(info);
    }
  }
  r.verdict = r.witnesses.empty() ? Verdict::pass : Verdict::fail;
  r.details = {{"modules", checked}};
  return r;
}

VerificationReport verify_remark_supersolvable(SubgroupLattice const &lattice)
{
  VerificationReport r;
  r.theorem = "remark_supersolvable";
  bool ss = is_supersolvable(lattice);
  auto obstruction = wsm_obstruction(lattice);
  r.details = {{"supersolvable", ss}, {"wsm", !obstruction.has_value()}};
  if (ss && obstruction) {
    r.verdict = Verdict::fail;
    r.witnesses.push_back({{"weak_second_maximal_not_second_maximal", subgroup_witness(lattice, *obstruction)}});
  }
  return r;
}

VerificationReport verify_remark_order72(SubgroupLattice const &lattice)
{
  VerificationReport r;
  r.theorem = "remark_order72";
  ElementTable const &t = lattice.table();

  bool order_ok = t.size() == 72;
  bool not_supersolvable = !is_supersolvable(lattice);
  bool wsm = is_wsm(lattice);
  SubgroupId v = fitting(lattice);
  bool v_elementary = lattice.order(v) == 9 && is_abelian(lattice, v);
  lattice.elements(v).for_each([&](std::size_t x) {
    if (x != 0 && t.element_order(x) != 3)
      v_elementary = false;
  });

  bool alpha_fixed_point_free = false;
  std::optional<std::uint32_t> alpha;
  for (std::uint32_t x = 0; x < t.size() && !alpha; ++x)
    if (t.element_order(x) == 8)
      alpha = x;
  if (alpha && v_elementary) {
    ChiefSeries series = chief_series(lattice);
    for (std::size_t i = 0; i < series.factors.size(); ++i) {
      auto const &f = series.factors[i];
      if (f.upper != v || f.lower != lattice.trivial())
        continue;
      GModule m = chief_factor_module(lattice, series, i);
      Matrix a = m.matrix_of(t.element(*alpha));
      for (std::size_t d = 0; d < a.rows(); ++d)
        a.at(d, d) = m.field().sub(a.at(d, d), 1);
      alpha_fixed_point_free = nullspace(m.field(), transpose(a)).empty();
    }
  }

  r.details = {{"order_72", order_ok},
               {"not_supersolvable", not_supersolvable},
               {"wsm", wsm},
               {"fitting_elementary_abelian_order_9", v_elementary},
               {"order_8_element_fixed_point_free", alpha_fixed_point_free}};
  if (alpha)
    r.details["order_8_element"] = t.element(*alpha).to_string();
  bool ok = order_ok && not_supersolvable && wsm && v_elementary && alpha_fixed_point_free;
  r.verdict = ok ? Verdict::pass : Verdict::fail;
  if (!ok)
    r.witnesses.push_back({{"checks", r.details}, {"fitting", subgroup_witness(lattice, v)}});
  return r;
}

VerificationReport build_nonsolvable_counterexample(std::uint64_t p, std::uint64_t index_bound)
{
  if (p < 7 || !is_prime(p))
    return skipped("remark_nonsolvable", "p must be a prime of at least 7");
  Group a = alt(p);
  std::uint64_t index_of_m = a.order();
  if (index_of_m > index_bound)
    return skipped("remark_nonsolvable",
                   "|G:M| = " + std::to_string(index_of_m) + " exceeds the index bound " + std::to_string(index_bound));

  std::size_t n = 2 * p;
  std::vector<Perm> a_gens = a.generators();
  std::vector<Perm> b_gens;
  Group point_stabilizer = alt(p - 1);
  for (auto const &g : point_stabilizer.generators())
    b_gens.push_back(g.extended(p));

  auto first = [&](Perm const &g) { return g.extended(n); };
  auto second = [&](Perm const &g) { return g.shifted(p, n); };
  auto diagonal = [&](Perm const &g) { return first(g) * second(g); };

  auto make = [&](std::vector<Perm> const &left, std::vector<Perm> const &right) {
    std::vector<Perm> gens;
    for (auto const &g : left)
      gens.push_back(first(g));
    for (auto const &g : right)
      gens.push_back(second(g));
    return Group(gens, n);
  };
  auto make_diagonal = [&](std::vector<Perm> const &gens) {
    std::vector<Perm> out;
    for (auto const &g : gens)
      out.push_back(diagonal(g));
    return Group(out, n);
  };

  Group g = make(a_gens, a_gens);
  Group x1 = make(a_gens, b_gens);
  Group x2 = make(b_gens, a_gens);
  Group bb = make(b_gens, b_gens);
  Group m = make_diagonal(a_gens);
  Group h = make_diagonal(b_gens);

  bool h_maximal_in_m = m.order() == p * h.order() && is_subgroup(m, h) &&
                        is_maximal_in(m, h.as_subgroup_of(m), index_bound);
  bool x_maximal = is_maximal_in(g, x1.as_subgroup_of(g), index_bound) &&
                   is_maximal_in(g, x2.as_subgroup_of(g), index_bound);
  bool between = true;
  for (Group const *x : {&x1, &x2})
    between = between && is_subgroup(bb, h) && is_subgroup(*x, bb) && h.order() < bb.order() &&
              bb.order() < x->order() && x->order() == p * bb.order();
  bool m_maximal = is_subgroup(g, m) && g.order() == index_of_m * m.order() &&
                   is_maximal_in(g, m.as_subgroup_of(g), index_bound);
  bool two_bad = is_subgroup(x1, h) && is_subgroup(x2, h) && !same_group(x1, x2) && !same_group(m, x1) &&
                 !same_group(m, x2) && h_maximal_in_m && m_maximal && x_maximal && between;

  VerificationReport r;
  r.theorem = "remark_nonsolvable";
  r.details = {{"p", p},
               {"group_order", g.order()},
               {"index_H_in_M", m.order() / h.order()},
               {"H_maximal_in_M", h_maximal_in_m},
               {"X1_X2_maximal_in_G", x_maximal},
               {"BxB_strictly_between_H_and_Xi", between},
               {"index_BxB_in_X1", x1.order() / bb.order()},
               {"M_maximal_in_G", m_maximal},
               {"two_distinct_bad_members", two_bad},
               {"subgroups",
                {{"H", group_witness(h)},
                 {"M", group_witness(m)},
                 {"X1", group_witness(x1)},
                 {"X2", group_witness(x2)},
                 {"BxB", group_witness(bb)}}}};
  bool confirmed = h_maximal_in_m && x_maximal && between && m_maximal && two_bad;
  r.verdict = confirmed ? Verdict::pass : Verdict::fail;
  if (!confirmed)
    r.witnesses.push_back(r.details["subgroups"]);
  return r;
}

} // namespace wsm
