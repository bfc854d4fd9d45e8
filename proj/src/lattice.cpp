#include "wsm/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace wsm
{

namespace
{

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p)
      continue;
    primes.push_back(p);
    while (n % p == 0)
      n /= p;
  }
  if (n > 1)
    primes.push_back(n);
  return primes;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p)
{
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

struct DisjointSets
{
  std::vector<std::uint32_t> parent;

  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }

  std::uint32_t find(std::uint32_t x)
  {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::uint32_t a, std::uint32_t b)
  {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
};

} // namespace

SubgroupLattice SubgroupLattice::enumerate(std::shared_ptr<const ElementTable> table, std::uint64_t bound)
{
  ElementTable const &t = *table;
  std::uint64_t cap = std::min(bound, kLatticeHardCap);
  if (t.size() > cap)
    throw BoundExceeded("group of order " + std::to_string(t.size()) + " exceeds lattice bound " +
                        std::to_string(cap));

  struct Work
  {
    Bitset elements;
    std::vector<std::uint32_t> generators;
  };
  std::vector<Work> found;
  std::unordered_map<Bitset, std::uint32_t, BitsetHash> index;

  auto intern = [&](Bitset b, std::vector<std::uint32_t> gens) -> std::pair<std::uint32_t, bool> {
    auto [it, inserted] = index.emplace(b, static_cast<std::uint32_t>(found.size()));
    if (inserted)
      found.push_back(Work{std::move(b), std::move(gens)});
    return {it->second, inserted};
  };

  {
    Bitset trivial = t.empty_set();
    trivial.set(0);
    intern(std::move(trivial), {});
  }

  std::vector<std::uint32_t> cyclic_ids;
  std::vector<std::uint32_t> cyclic_gens;
  for (std::uint32_t g = 1; g < t.size(); ++g) {
    Bitset c = t.empty_set();
    for (std::uint32_t x = 0;; x = t.mul(x, g)) {
      if (c.test(x))
        break;
      c.set(x);
    }
    auto [id, inserted] = intern(std::move(c), {g});
    if (inserted) {
      cyclic_ids.push_back(id);
      cyclic_gens.push_back(g);
    }
  }

  std::size_t ncyc = cyclic_ids.size();
  std::vector<std::uint32_t> joins;
  for (std::size_t i = 0; i < found.size(); ++i) {
    joins.resize((i + 1) * ncyc);
    for (std::size_t c = 0; c < ncyc; ++c) {
      if (found[cyclic_ids[c]].elements.is_subset_of(found[i].elements)) {
        joins[i * ncyc + c] = static_cast<std::uint32_t>(i);
        continue;
      }
      Bitset k = t.extend(found[i].elements, found[i].generators, cyclic_gens[c]);
      auto it = index.find(k);
      if (it != index.end()) {
        joins[i * ncyc + c] = it->second;
        continue;
      }
      std::vector<std::uint32_t> gens = found[i].generators;
      gens.push_back(cyclic_gens[c]);
      joins[i * ncyc + c] = intern(std::move(k), std::move(gens)).first;
    }
  }

  // canonical order: by order, then by element set
  std::vector<std::uint32_t> perm(found.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::vector<std::uint64_t> orders(found.size());
  for (std::size_t i = 0; i < found.size(); ++i)
    orders[i] = found[i].elements.count();
  std::sort(perm.begin(), perm.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (orders[a] != orders[b])
      return orders[a] < orders[b];
    return found[a].elements < found[b].elements;
  });
  std::vector<std::uint32_t> rank(found.size());
  for (std::size_t k = 0; k < perm.size(); ++k)
    rank[perm[k]] = static_cast<std::uint32_t>(k);

  std::vector<Node> nodes(found.size());
  for (std::size_t k = 0; k < perm.size(); ++k) {
    std::uint32_t old = perm[k];
    Node &node = nodes[k];
    node.order = orders[old];
    node.generators = t.small_generating_set(found[old].elements);

    std::vector<std::uint32_t> candidates;
    for (std::size_t c = 0; c < ncyc; ++c) {
      std::uint32_t j = joins[old * ncyc + c];
      if (j != old)
        candidates.push_back(rank[j]);
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    // ids are sorted by order, so any strictly smaller candidate precedes
    std::vector<SubgroupId> covers;
    for (auto cand : candidates) {
      bool minimal = true;
      for (auto cover : covers) {
        if (found[perm[cover.value]].elements.is_subset_of(found[perm[cand]].elements)) {
          minimal = false;
          break;
        }
      }
      if (minimal)
        covers.push_back(SubgroupId{cand});
    }
    node.covers = std::move(covers);
  }
  for (std::size_t k = 0; k < perm.size(); ++k)
    nodes[k].elements = std::move(found[perm[k]].elements);

  SubgroupLattice lattice;
  lattice.table_ = std::move(table);
  lattice.nodes_ = std::move(nodes);
  lattice.index_nodes();
  lattice.compute_classes();
  return lattice;
}

SubgroupLattice SubgroupLattice::from_parts(std::shared_ptr<const ElementTable> table, std::vector<Node> nodes)
{
  if (nodes.empty())
    throw std::invalid_argument("lattice needs at least one subgroup");
  SubgroupLattice lattice;
  lattice.table_ = std::move(table);
  lattice.nodes_ = std::move(nodes);
  lattice.index_nodes();

  std::size_t nclasses = 0;
  for (auto const &n : lattice.nodes_)
    nclasses = std::max(nclasses, n.cls + 1);
  lattice.classes_.resize(nclasses);
  for (std::uint32_t i = 0; i < lattice.nodes_.size(); ++i) {
    auto &cls = lattice.classes_[lattice.nodes_[i].cls];
    if (cls.members.empty())
      cls.representative = SubgroupId{i};
    cls.members.push_back(SubgroupId{i});
  }
  for (auto const &cls : lattice.classes_)
    if (cls.members.empty())
      throw std::invalid_argument("lattice class without members");
  return lattice;
}

void SubgroupLattice::index_nodes()
{
  lookup_.clear();
  lookup_.reserve(nodes_.size() * 2);
  for (std::uint32_t i = 0; i < nodes_.size(); ++i)
    lookup_.emplace(nodes_[i].elements, i);
  maximals_.clear();
  for (std::uint32_t i = 0; i + 1 < nodes_.size(); ++i)
    if (is_maximal(SubgroupId{i}))
      maximals_.push_back(SubgroupId{i});
}

void SubgroupLattice::compute_classes()
{
  ElementTable const &t = *table_;
  DisjointSets sets(nodes_.size());

  for (auto s : t.generator_indices()) {
    std::vector<std::uint32_t> conj(t.size());
    for (std::uint32_t x = 0; x < t.size(); ++x)
      conj[x] = t.conj(x, s);

    for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
      Bitset image = t.empty_set();
      nodes_[i].elements.for_each([&](std::size_t x) { image.set(conj[x]); });
      sets.unite(i, lookup_.at(image));
    }
  }

  std::vector<std::int64_t> class_of_root(nodes_.size(), -1);
  classes_.clear();
  for (std::uint32_t i = 0; i < nodes_.size(); ++i) {
    std::uint32_t root = sets.find(i);
    if (class_of_root[root] < 0) {
      class_of_root[root] = static_cast<std::int64_t>(classes_.size());
      classes_.push_back(SubgroupClass{SubgroupId{i}, {}});
    }
    std::size_t c = static_cast<std::size_t>(class_of_root[root]);
    classes_[c].members.push_back(SubgroupId{i});
    nodes_[i].cls = c;
  }
}

SubgroupRef SubgroupLattice::ref(SubgroupId h) const
{
  return SubgroupRef{group().id(), table_->to_perms(generators(h)), order(h)};
}

std::optional<SubgroupId> SubgroupLattice::find(Bitset const &elements) const
{
  auto it = lookup_.find(elements);
  if (it == lookup_.end())
    return std::nullopt;
  return SubgroupId{it->second};
}

SubgroupId SubgroupLattice::generated_by(std::span<const std::uint32_t> gens) const
{
  auto found = find(table_->generate(gens));
  if (!found)
    throw GroupError("generated subgroup missing from lattice");
  return *found;
}

SubgroupId SubgroupLattice::find(SubgroupRef const &h) const
{
  std::vector<std::uint32_t> idx;
  for (auto const &g : h.generators) {
    if (g.degree() != group().degree() || !table_->has(g))
      throw GroupError("subgroup generator " + g.to_string() + " is not in the parent group");
    idx.push_back(table_->index_of(g));
  }
  return generated_by(idx);
}

bool SubgroupLattice::contains(SubgroupId big, SubgroupId small) const
{
  return elements(small).is_subset_of(elements(big));
}

bool SubgroupLattice::is_maximal_in(SubgroupId h, SubgroupId k) const
{
  auto const &covers = nodes_[h.value].covers;
  return std::binary_search(covers.begin(), covers.end(), k);
}

std::vector<SubgroupId> SubgroupLattice::normal_subgroups() const
{
  std::vector<SubgroupId> out;
  for (std::uint32_t i = 0; i < nodes_.size(); ++i)
    if (is_normal(SubgroupId{i}))
      out.push_back(SubgroupId{i});
  return out;
}

SubgroupId SubgroupLattice::join(SubgroupId a, SubgroupId b) const
{
  std::vector<std::uint32_t> gens = generators(a);
  gens.insert(gens.end(), generators(b).begin(), generators(b).end());
  return generated_by(gens);
}

SubgroupId SubgroupLattice::meet(SubgroupId a, SubgroupId b) const
{
  Bitset both = elements(a);
  both &= elements(b);
  return *find(both);
}

SubgroupId SubgroupLattice::core(SubgroupId h) const
{
  Bitset c = elements(h);
  for (auto m : classes_[class_of(h)].members)
    c &= elements(m);
  return *find(c);
}

std::vector<SubgroupId> max_over(SubgroupLattice const &lattice, SubgroupId h)
{
  if (h == lattice.whole())
    throw GroupError("Max(G, H) needs a proper subgroup H");
  std::vector<SubgroupId> out;
  for (auto m : lattice.maximal_subgroups())
    if (lattice.contains(m, h))
      out.push_back(m);
  return out;
}

std::string to_string(ChainPosition position)
{
  switch (position) {
  case ChainPosition::maximal:
    return "maximal";
  case ChainPosition::second_maximal:
    return "second_maximal";
  case ChainPosition::weak_second_maximal_only:
    return "weak_second_maximal_only";
  case ChainPosition::neither:
    return "neither";
  }
  return "unknown";
}

ChainPosition classify_chain_position(SubgroupLattice const &lattice, SubgroupId h)
{
  if (lattice.is_maximal(h))
    return ChainPosition::maximal;
  auto members = max_over(lattice, h);
  std::size_t maximal_in = 0;
  for (auto m : members)
    if (lattice.is_maximal_in(h, m))
      ++maximal_in;
  if (maximal_in == members.size())
    return ChainPosition::second_maximal;
  if (maximal_in > 0)
    return ChainPosition::weak_second_maximal_only;
  return ChainPosition::neither;
}

SubgroupId frattini(SubgroupLattice const &lattice)
{
  Bitset phi = lattice.elements(lattice.whole());
  for (auto m : lattice.maximal_subgroups())
    phi &= lattice.elements(m);
  return *lattice.find(phi);
}

SubgroupId largest_normal_p_subgroup(SubgroupLattice const &lattice, std::uint64_t p)
{
  SubgroupId best = lattice.trivial();
  for (auto n : lattice.normal_subgroups()) {
    std::uint64_t ord = lattice.order(n);
    if (p_part(ord, p) == ord && ord > lattice.order(best))
      best = n;
  }
  return best;
}

SubgroupId fitting(SubgroupLattice const &lattice)
{
  std::vector<std::uint32_t> gens;
  for (auto p : prime_divisors(lattice.order(lattice.whole()))) {
    auto op = largest_normal_p_subgroup(lattice, p);
    gens.insert(gens.end(), lattice.generators(op).begin(), lattice.generators(op).end());
  }
  return lattice.generated_by(gens);
}

bool is_nilpotent(SubgroupLattice const &lattice, SubgroupId h)
{
  std::uint64_t ord = lattice.order(h);
  for (auto p : prime_divisors(ord)) {
    std::uint64_t sylow = p_part(ord, p);
    std::size_t count = 0;
    for (std::uint32_t i = 0; i <= h.value; ++i) {
      SubgroupId s{i};
      if (lattice.order(s) == sylow && lattice.contains(h, s))
        ++count;
    }
    if (count != 1)
      return false;
  }
  return true;
}

bool is_abelian(SubgroupLattice const &lattice, SubgroupId h)
{
  auto const &t = lattice.table();
  auto const &gens = lattice.generators(h);
  for (auto a : gens)
    for (auto b : gens)
      if (t.mul(a, b) != t.mul(b, a))
        return false;
  return true;
}

namespace
{

ChiefFactor describe_factor(SubgroupLattice const &lattice, SubgroupId upper, SubgroupId lower)
{
  ChiefFactor f;
  f.upper = upper;
  f.lower = lower;
  f.order = lattice.order(upper) / lattice.order(lower);

  auto primes = prime_divisors(f.order);
  if (primes.size() == 1) {
    f.prime = primes.front();
    for (std::uint64_t n = f.order; n > 1; n /= f.prime)
      ++f.dimension;
  }

  if (f.prime != 0) {
    auto const &t = lattice.table();
    Bitset const &low = lattice.elements(lower);
    auto const &gens = lattice.generators(upper);
    bool ok = true;
    for (auto a : gens) {
      if (!low.test(t.pow(a, f.prime)))
        ok = false;
      for (auto b : gens)
        if (!low.test(t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b))))
          ok = false;
    }
    f.elementary_abelian = ok;
  }
  return f;
}

} // namespace

ChiefSeries chief_series_unlabelled(SubgroupLattice const &lattice)
{
  auto normals = lattice.normal_subgroups();
  std::vector<SubgroupId> bottom_up{lattice.trivial()};
  SubgroupId k = lattice.trivial();

  while (k != lattice.whole()) {
    std::vector<SubgroupId> above;
    for (auto n : normals)
      if (n != k && lattice.contains(n, k))
        above.push_back(n);

    std::optional<SubgroupId> chosen;
    for (auto n : above) {
      bool minimal = true;
      for (auto m : above)
        if (m != n && lattice.contains(n, m)) {
          minimal = false;
          break;
        }
      if (minimal) {
        chosen = n;
        break;
      }
    }
    k = *chosen;
    bottom_up.push_back(k);
  }

  ChiefSeries series;
  series.terms.assign(bottom_up.rbegin(), bottom_up.rend());
  for (std::size_t i = 0; i + 1 < series.terms.size(); ++i)
    series.factors.push_back(describe_factor(lattice, series.terms[i], series.terms[i + 1]));
  return series;
}

ChiefSeries chief_series(SubgroupLattice const &lattice)
{
  ChiefSeries series = chief_series_unlabelled(lattice);
  for (auto &f : series.factors) {
    if (f.lower == lattice.trivial()) {
      f.non_frattini = !lattice.contains(frattini(lattice), f.upper);
      continue;
    }
    Quotient q = quotient_group(lattice, f.lower);
    auto qtable = std::make_shared<const ElementTable>(q.group);
    auto qlattice = SubgroupLattice::enumerate(qtable, kLatticeHardCap);
    Bitset const &phi = qlattice.elements(frattini(qlattice));
    bool inside = true;
    lattice.elements(f.upper).for_each([&](std::size_t x) {
      if (!phi.test(qtable->index_of(q.image(static_cast<std::uint32_t>(x)))))
        inside = false;
    });
    f.non_frattini = !inside;
  }
  return series;
}

bool is_supersolvable(SubgroupLattice const &lattice)
{
  for (auto const &f : chief_series_unlabelled(lattice).factors)
    if (f.dimension != 1)
      return false;
  return true;
}

std::vector<Perm> Quotient::image_generators(std::span<const std::uint32_t> elements) const
{
  std::vector<Perm> out;
  for (auto e : elements)
    out.push_back(element_images[e]);
  return out;
}

Quotient quotient_group(SubgroupLattice const &lattice, SubgroupId n)
{
  if (!lattice.is_normal(n))
    throw GroupError("quotient_group: subgroup is not normal");

  ElementTable const &t = lattice.table();
  std::uint64_t order = lattice.order(lattice.whole());

  Quotient q{Group::trivial(1), {}, {}};
  if (n == lattice.whole()) {
    q.element_images.assign(t.size(), Perm(1));
    q.generator_images.assign(t.generator_indices().size(), Perm(1));
    return q;
  }

  std::vector<SubgroupId> candidates;
  for (std::uint32_t i = 0; i + 1 < lattice.size(); ++i)
    if (lattice.contains(SubgroupId{i}, n))
      candidates.push_back(SubgroupId{i});
  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](SubgroupId a, SubgroupId b) { return lattice.order(a) > lattice.order(b); });

  Bitset const &target = lattice.elements(n);
  Bitset kernel = lattice.elements(lattice.whole());
  std::vector<SubgroupId> chosen;
  for (auto u : candidates) {
    if (kernel == target)
      break;
    Bitset next = kernel;
    next &= lattice.elements(lattice.core(u));
    if (next != kernel) {
      chosen.push_back(u);
      kernel = std::move(next);
    }
  }

  for (std::size_t k = chosen.size(); k-- > 0;) {
    Bitset without = lattice.elements(lattice.whole());
    for (std::size_t j = 0; j < chosen.size(); ++j)
      if (j != k)
        without &= lattice.elements(lattice.core(chosen[j]));
    if (without == target)
      chosen.erase(chosen.begin() + static_cast<std::ptrdiff_t>(k));
  }

  std::size_t degree = 0;
  for (auto u : chosen)
    degree += order / lattice.order(u);
  if (degree > Perm::kMaxDegree)
    throw GroupError("quotient needs degree " + std::to_string(degree) + " above the cap");

  // point label of every element in every coset space
  std::vector<std::vector<std::size_t>> label(chosen.size(), std::vector<std::size_t>(t.size(), SIZE_MAX));
  std::vector<std::vector<std::uint32_t>> reps(chosen.size());
  std::size_t offset = 0;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    auto u_elems = lattice.elements(chosen[k]).indices();
    for (std::uint32_t x = 0; x < t.size(); ++x) {
      if (label[k][x] != SIZE_MAX)
        continue;
      std::size_t point = offset + reps[k].size();
      reps[k].push_back(x);
      for (auto u : u_elems)
        label[k][t.mul(u, x)] = point;
    }
    offset += reps[k].size();
  }

  q.element_images.reserve(t.size());
  std::vector<std::size_t> images(degree);
  for (std::uint32_t g = 0; g < t.size(); ++g) {
    std::size_t p = 0;
    for (std::size_t k = 0; k < chosen.size(); ++k)
      for (auto r : reps[k])
        images[p++] = label[k][t.mul(r, g)];
    q.element_images.push_back(Perm::from_images(images));
  }
  for (auto g : t.generator_indices())
    q.generator_images.push_back(q.element_images[g]);
  q.group = Group(q.generator_images, degree);
  return q;
}

} // namespace wsm
