#ifndef WSM_VERIFIERS_HPP
#define WSM_VERIFIERS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "wsm/character_table.hpp"
#include "wsm/group.hpp"
#include "wsm/lattice.hpp"
#include "wsm/module.hpp"

namespace wsm
{

enum class Verdict
{
  pass,
  fail,
  skipped,
};

std::string to_string(Verdict v);

/// Outcome of one check on one group. Failures carry witnesses, skips carry
/// a reason; `details` holds supporting data (counts, both sides of an
/// equivalence, observations).
struct VerificationReport
{
  std::string theorem;
  Verdict verdict = Verdict::pass;
  std::string reason;
  nlohmann::json witnesses = nlohmann::json::array();
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(VerificationReport const &r);

/// Check identifiers in canonical order.
std::vector<std::string> const &all_theorem_ids();

/// Generators of a lattice subgroup in cycle notation.
nlohmann::json subgroup_witness(SubgroupLattice const &lattice, SubgroupId h);

/// No subgroup is weak second maximal without being second maximal.
bool is_wsm(SubgroupLattice const &lattice);
/// A representative H that is weak second maximal but not second maximal.
std::optional<SubgroupId> wsm_obstruction(SubgroupLattice const &lattice);

VerificationReport verify_theorem_B(SubgroupLattice const &lattice);
VerificationReport verify_key_lemma(SubgroupLattice const &lattice);

/// A chief factor module together with its reduction to the faithful
/// action of G / C_G(V).
struct ChiefModule
{
  std::size_t index = 0;
  ChiefFactor factor;
  GModule module;
  SubgroupId centralizer;
  GModule reduced;
  std::shared_ptr<const SubgroupLattice> reduced_lattice;
};

/// Modules for every elementary abelian chief factor, in series order.
std::vector<ChiefModule> chief_factor_modules(SubgroupLattice const &lattice, ChiefSeries const &series);

/// Side (a) is is_wsm; side (b) builds its own chief series and modules and
/// tests every non-Frattini factor for strong irreducibility over its
/// centralizer quotient.
VerificationReport verify_theorem_C(SubgroupLattice const &lattice);

/// Non-vanishing classes lie in the Fitting subgroup. Skipped unless G is
/// solvable and WSM; for solvable non-WSM groups the same containment is
/// recorded as an observation without affecting the verdict.
VerificationReport verify_theorem_A(SubgroupLattice const &lattice, CharacterTable const &table);

VerificationReport verify_lemma_3_1(SubgroupLattice const &lattice, std::vector<ChiefModule> const &modules);
VerificationReport verify_lemma_4_1(SubgroupLattice const &lattice, std::vector<ChiefModule> const &modules);
VerificationReport verify_lemma_4_3(SubgroupLattice const &lattice, std::vector<ChiefModule> const &modules);

/// Per group: supersolvable implies WSM. details records both flags so the
/// corpus-level "WSM but not supersolvable" example can be found.
VerificationReport verify_remark_supersolvable(SubgroupLattice const &lattice);

/// The order-72 group V<alpha> with V of order 9: not supersolvable, WSM,
/// F(G) = V elementary abelian, and alpha of order 8 fixes no nonzero
/// vector of V.
VerificationReport verify_remark_order72(SubgroupLattice const &lattice);

/// A_p x A_p with X1 = A x B, X2 = B x A, M = diag(A), H = diag(B) for a
/// point stabilizer B, checked without a lattice.
VerificationReport build_nonsolvable_counterexample(std::uint64_t p,
                                                    std::uint64_t index_bound = kDefaultIndexBound);

} // namespace wsm

#endif // WSM_VERIFIERS_HPP
