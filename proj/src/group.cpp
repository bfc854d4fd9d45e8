#include "wsm/group.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>

namespace wsm
{

namespace
{

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
  if (b != 0 && a > std::numeric_limits<std::uint64_t>::max() / b)
    throw GroupError("group order overflows 64 bits");
  return a * b;
}

std::size_t common_degree(std::vector<Perm> const &gens, std::size_t degree)
{
  if (gens.empty()) {
    if (degree == 0)
      throw GroupError("a group needs degree >= 1");
    return degree;
  }
  std::size_t d = gens.front().degree();
  for (auto const &g : gens)
    if (g.degree() != d)
      throw PermError("generators have inconsistent degrees");
  if (degree != 0 && degree != d)
    throw PermError("generator degree does not match requested degree");
  if (d == 0)
    throw GroupError("a group needs degree >= 1");
  return d;
}

} // namespace

std::uint64_t generator_set_id(std::span<const Perm> generators, std::size_t degree)
{
  std::vector<Perm> sorted;
  for (auto const &g : generators)
    if (!g.is_identity())
      sorted.push_back(g);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::uint64_t h = 0x84222325cbf29ce4ull ^ degree;
  for (auto const &g : sorted) {
    h ^= g.hash();
    h *= 0x100000001b3ull;
    h ^= h >> 29;
  }
  return h;
}

Group::Group(std::vector<Perm> generators, std::size_t degree)
: degree_(common_degree(generators, degree))
{
  for (auto &g : generators)
    if (!g.is_identity() &&
        std::find(generators_.begin(), generators_.end(), g) == generators_.end())
      generators_.push_back(std::move(g));

  id_ = generator_set_id(generators_, degree_);
  schreier_sims();
}

void Group::rebuild_orbit(std::size_t level)
{
  Level &lv = chain_[level];
  lv.orbit.assign(1, lv.base_point);
  lv.slot.assign(degree_, -1);
  lv.slot[lv.base_point] = 0;
  lv.transversal.assign(1, Perm(degree_));

  for (std::size_t k = 0; k < lv.orbit.size(); ++k) {
    std::size_t x = lv.orbit[k];
    for (auto const &s : lv.generators) {
      std::size_t y = s[x];
      if (lv.slot[y] >= 0)
        continue;
      lv.slot[y] = static_cast<std::int32_t>(lv.orbit.size());
      lv.orbit.push_back(y);
      lv.transversal.push_back(lv.transversal[k] * s);
    }
  }
}

std::pair<Perm, std::size_t> Group::sift(Perm g, std::size_t from_level) const
{
  for (std::size_t l = from_level; l < chain_.size(); ++l) {
    Level const &lv = chain_[l];
    std::int32_t k = lv.slot[g[lv.base_point]];
    if (k < 0)
      return {g, l};
    g *= lv.transversal[static_cast<std::size_t>(k)].inverse();
  }
  return {g, chain_.size()};
}

void Group::schreier_sims()
{
  auto fixes_base_prefix = [this](Perm const &g, std::size_t upto) {
    for (std::size_t l = 0; l < upto; ++l)
      if (g[chain_[l].base_point] != chain_[l].base_point)
        return false;
    return true;
  };

  for (auto const &g : generators_) {
    if (fixes_base_prefix(g, chain_.size()))
      chain_.push_back(Level{g.first_moved_point(), {}, {}, {}, {}});
  }
  for (std::size_t l = 0; l < chain_.size(); ++l) {
    for (auto const &g : generators_)
      if (fixes_base_prefix(g, l))
        chain_[l].generators.push_back(g);
    rebuild_orbit(l);
  }

  std::size_t i = chain_.size();
  while (i > 0) {
    std::size_t level = i - 1;
    bool extended = false;

    for (std::size_t k = 0; k < chain_[level].orbit.size() && !extended; ++k) {
      for (std::size_t s = 0; s < chain_[level].generators.size() && !extended; ++s) {
        Level const &lv = chain_[level];
        Perm const &gen = lv.generators[s];
        std::size_t image = gen[lv.orbit[k]];
        Perm schreier = lv.transversal[k] * gen *
                        lv.transversal[static_cast<std::size_t>(lv.slot[image])].inverse();

        auto [residue, stop] = sift(schreier, level + 1);
        if (residue.is_identity())
          continue;

        if (stop == chain_.size()) {
          chain_.push_back(Level{residue.first_moved_point(), {}, {}, {}, {}});
        }
        for (std::size_t l = level + 1; l <= stop; ++l) {
          chain_[l].generators.push_back(residue);
          rebuild_orbit(l);
        }
        i = stop + 1;
        extended = true;
      }
    }

    if (!extended)
      --i;
  }

  order_ = 1;
  for (auto const &lv : chain_)
    order_ = checked_mul(order_, lv.orbit.size());
}

std::vector<std::size_t> Group::base() const
{
  std::vector<std::size_t> b;
  for (auto const &lv : chain_)
    b.push_back(lv.base_point);
  return b;
}

std::vector<Perm> Group::strong_generators() const
{
  std::vector<Perm> out;
  for (auto const &lv : chain_)
    for (auto const &g : lv.generators)
      if (std::find(out.begin(), out.end(), g) == out.end())
        out.push_back(g);
  return out;
}

bool Group::contains(Perm const &g) const
{
  if (g.degree() != degree_)
    throw PermError("degree mismatch in membership test");
  return sift(g, 0).first.is_identity();
}

Perm Group::canonical_right_coset_rep(Perm const &g) const
{
  Perm c = g;
  for (auto const &lv : chain_) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < lv.orbit.size(); ++k)
      if (c[lv.orbit[k]] < c[lv.orbit[best]])
        best = k;
    if (best != 0)
      c = lv.transversal[best] * c;
  }
  return c;
}

std::vector<Perm> Group::elements(std::uint64_t limit) const
{
  if (order_ > limit)
    throw BoundExceeded("group of order " + std::to_string(order_) + " exceeds element bound " +
                        std::to_string(limit));

  std::vector<Perm> out{Perm(degree_)};
  for (auto it = chain_.rbegin(); it != chain_.rend(); ++it) {
    std::vector<Perm> next;
    next.reserve(out.size() * it->transversal.size());
    for (auto const &u : it->transversal)
      for (auto const &x : out)
        next.push_back(x * u);
    out = std::move(next);
  }
  return out;
}

SubgroupRef Group::as_subgroup_of(Group const &parent) const
{
  return SubgroupRef{parent.id(), generators_, order_};
}

Group subgroup_group(Group const &parent, SubgroupRef const &h)
{
  for (auto const &g : h.generators)
    if (g.degree() != parent.degree())
      throw PermError("subgroup generator degree does not match parent");
  return Group(h.generators, parent.degree());
}

bool is_subgroup(Group const &g, Group const &h)
{
  if (g.degree() != h.degree())
    return false;
  for (auto const &x : h.generators())
    if (!g.contains(x))
      return false;
  return true;
}

bool same_group(Group const &a, Group const &b)
{
  return a.order() == b.order() && is_subgroup(a, b);
}

SubgroupRef closure(Group const &g, SubgroupRef const &h, Perm const &x)
{
  if (x.degree() != g.degree())
    throw PermError("degree mismatch in closure");
  Group hg = subgroup_group(g, h);
  if (hg.contains(x))
    return SubgroupRef{g.id(), hg.generators(), hg.order()};

  std::vector<Perm> gens = hg.generators();
  gens.push_back(x);
  Group joined(gens, g.degree());
  return SubgroupRef{g.id(), joined.generators(), joined.order()};
}

Group normal_closure(Group const &g, std::span<const Perm> elements)
{
  std::vector<Perm> gens;
  for (auto const &e : elements)
    if (!e.is_identity())
      gens.push_back(e);
  Group n(gens, g.degree());

  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (auto const &s : g.generators()) {
      Perm c = conjugate(gens[k], s);
      if (!n.contains(c)) {
        gens.push_back(c);
        n = Group(gens, g.degree());
      }
    }
  }
  return n;
}

bool is_normal(Group const &g, Group const &h)
{
  for (auto const &x : h.generators())
    for (auto const &s : g.generators())
      if (!h.contains(conjugate(x, s)))
        return false;
  return true;
}

Group intersection(Group const &a, Group const &b, std::uint64_t limit)
{
  Group const &small = a.order() <= b.order() ? a : b;
  Group const &large = a.order() <= b.order() ? b : a;
  if (is_subgroup(large, small))
    return small;

  std::vector<Perm> gens;
  Group result = Group::trivial(a.degree());
  for (auto const &x : small.elements(limit)) {
    if (result.contains(x) || !large.contains(x))
      continue;
    gens.push_back(x);
    result = Group(gens, a.degree());
  }
  return result;
}

Group conjugate_group(Group const &h, Perm const &x)
{
  std::vector<Perm> gens;
  for (auto const &g : h.generators())
    gens.push_back(conjugate(g, x));
  return Group(gens, h.degree());
}

SubgroupRef normal_core(Group const &g, SubgroupRef const &h)
{
  Group core = subgroup_group(g, h);
  if (!is_subgroup(g, core))
    throw GroupError("normal_core: H is not a subgroup of G");

  bool changed = true;
  while (changed) {
    changed = false;
    for (auto const &s : g.generators()) {
      Group conj = conjugate_group(core, s);
      if (same_group(core, conj))
        continue;
      core = intersection(core, conj);
      changed = true;
    }
  }
  return core.as_subgroup_of(g);
}

Group derived_subgroup(Group const &g)
{
  std::vector<Perm> comms;
  auto const &gens = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      comms.push_back(commutator(gens[i], gens[j]));
  return normal_closure(g, comms);
}

std::vector<SubgroupRef> derived_series(Group const &g)
{
  std::vector<SubgroupRef> series{g.as_subgroup_of(g)};
  Group current = g;
  for (;;) {
    Group next = derived_subgroup(current);
    if (next.order() == current.order())
      break;
    series.push_back(next.as_subgroup_of(g));
    current = std::move(next);
  }
  return series;
}

bool is_solvable(Group const &g)
{
  return derived_series(g).back().order == 1;
}

Group direct_product(Group const &a, Group const &b)
{
  std::size_t total = a.degree() + b.degree();
  std::vector<Perm> gens;
  for (auto const &x : a.generators())
    gens.push_back(x.shifted(0, total));
  for (auto const &x : b.generators())
    gens.push_back(x.shifted(a.degree(), total));
  return Group(gens, total);
}

std::vector<Perm> right_coset_reps(Group const &g, Group const &h, std::uint64_t index_bound)
{
  if (h.order() == 0 || g.order() % h.order() != 0)
    throw GroupError("right_coset_reps: H is not a subgroup of G");
  std::uint64_t index = g.order() / h.order();
  if (index > index_bound)
    throw BoundExceeded("index " + std::to_string(index) + " exceeds bound " + std::to_string(index_bound));

  std::vector<Perm> reps{h.canonical_right_coset_rep(Perm(g.degree()))};
  std::unordered_set<Perm, PermHash> seen{reps.front()};
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (auto const &s : g.generators()) {
      Perm c = h.canonical_right_coset_rep(reps[k] * s);
      if (seen.insert(c).second)
        reps.push_back(c);
    }
  }
  if (reps.size() != index)
    throw GroupError("coset enumeration found " + std::to_string(reps.size()) + " cosets, expected " +
                     std::to_string(index));
  return reps;
}

std::vector<Perm> double_coset_reps(Group const &g, Group const &h, std::uint64_t index_bound)
{
  std::vector<Perm> cosets = right_coset_reps(g, h, index_bound);
  std::unordered_map<Perm, std::size_t, PermHash> slot;
  for (std::size_t k = 0; k < cosets.size(); ++k)
    slot.emplace(cosets[k], k);

  std::vector<bool> done(cosets.size(), false);
  std::vector<Perm> reps;
  for (std::size_t start = 0; start < cosets.size(); ++start) {
    if (done[start])
      continue;
    reps.push_back(cosets[start]);
    done[start] = true;
    std::vector<std::size_t> queue{start};
    while (!queue.empty()) {
      std::size_t k = queue.back();
      queue.pop_back();
      for (auto const &t : h.generators()) {
        std::size_t next = slot.at(h.canonical_right_coset_rep(cosets[k] * t));
        if (!done[next]) {
          done[next] = true;
          queue.push_back(next);
        }
      }
    }
  }
  return reps;
}

bool is_maximal_in(Group const &g, SubgroupRef const &h, std::uint64_t index_bound)
{
  Group hg = subgroup_group(g, h);
  if (hg.order() >= g.order())
    throw GroupError("is_maximal_in: H must be a proper subgroup");
  if (!is_subgroup(g, hg))
    throw GroupError("is_maximal_in: H is not a subgroup of G");

  for (auto const &x : double_coset_reps(g, hg, index_bound)) {
    if (hg.contains(x))
      continue;
    std::vector<Perm> gens = hg.generators();
    gens.push_back(x);
    if (Group(gens, g.degree()).order() != g.order())
      return false;
  }
  return true;
}

} // namespace wsm
