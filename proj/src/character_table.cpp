#include "wsm/character_table.hpp"

#include <algorithm>
#include <numeric>

#include "wsm/gfp.hpp"

namespace wsm
{

ConjugacyClasses ConjugacyClasses::compute(std::shared_ptr<const ElementTable> table, std::uint64_t bound)
{
  if (table->size() > bound)
    throw BoundExceeded("group of order " + std::to_string(table->size()) + " exceeds the character bound");

  ElementTable const &t = *table;
  std::size_t n = t.size();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<std::uint32_t>> classes;
  for (std::uint32_t a = 0; a < n; ++a) {
    if (seen[a])
      continue;
    std::vector<std::uint32_t> orbit{a};
    seen[a] = true;
    for (std::size_t k = 0; k < orbit.size(); ++k)
      for (auto g : t.generator_indices()) {
        std::uint32_t y = t.conj(orbit[k], g);
        if (!seen[y]) {
          seen[y] = true;
          orbit.push_back(y);
        }
      }
    std::sort(orbit.begin(), orbit.end());
    classes.push_back(std::move(orbit));
  }
  std::stable_sort(classes.begin(), classes.end(), [&](auto const &x, auto const &y) {
    return t.element_order(x.front()) < t.element_order(y.front());
  });

  ConjugacyClasses out;
  out.table_ = std::move(table);
  out.members_ = std::move(classes);
  out.class_of_.assign(n, 0);
  for (std::size_t k = 0; k < out.members_.size(); ++k)
    for (auto x : out.members_[k])
      out.class_of_[x] = k;
  for (std::size_t k = 0; k < out.members_.size(); ++k)
    out.inverse_.push_back(out.class_of_[t.inv(out.members_[k].front())]);
  return out;
}

std::size_t ConjugacyClasses::power_class(std::size_t k, std::uint64_t e) const
{
  return class_of_[table_->pow(representative(k), e)];
}

std::vector<std::int64_t> CharacterTable::degrees() const
{
  std::vector<std::int64_t> out;
  for (auto const &row : rows_)
    out.push_back(row.degree);
  return out;
}

CharacterTable CharacterTable::from_rows(ConjugacyClasses classes, std::vector<Character> rows, std::uint64_t modulus)
{
  CharacterTable t;
  t.classes_ = std::move(classes);
  t.rows_ = std::move(rows);
  t.modulus_ = modulus;
  return t;
}

std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order)
{
  for (std::uint64_t l = exponent + 1;; l += exponent)
    if (l * l > 4 * order && is_prime(l))
      return l;
}

namespace
{

std::uint32_t primitive_root(PrimeField const &f)
{
  std::uint64_t m = f.p() - 1;
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = 2; q * q <= m; ++q)
    if (m % q == 0) {
      primes.push_back(q);
      while (m % q == 0)
        m /= q;
    }
  if (m > 1)
    primes.push_back(m);
  for (std::uint32_t g = 2;; ++g) {
    bool ok = true;
    for (auto q : primes)
      if (f.pow(g, (f.p() - 1) / q) == 1) {
        ok = false;
        break;
      }
    if (ok)
      return g;
  }
}

// Similarity transform to upper Hessenberg form, then the standard
// recurrence for the characteristic polynomial (constant term first).
std::vector<std::uint32_t> characteristic_polynomial(PrimeField const &f, Matrix h)
{
  std::size_t d = h.rows();
  for (std::size_t j = 0; j + 2 < d; ++j) {
    std::size_t piv = j + 1;
    while (piv < d && h.at(piv, j) == 0)
      ++piv;
    if (piv == d)
      continue;
    if (piv != j + 1) {
      for (std::size_t c = 0; c < d; ++c)
        std::swap(h.at(piv, c), h.at(j + 1, c));
      for (std::size_t r = 0; r < d; ++r)
        std::swap(h.at(r, piv), h.at(r, j + 1));
    }
    std::uint32_t inv = f.inv(h.at(j + 1, j));
    for (std::size_t k = j + 2; k < d; ++k) {
      std::uint32_t u = f.mul(h.at(k, j), inv);
      if (u == 0)
        continue;
      for (std::size_t c = 0; c < d; ++c)
        h.at(k, c) = f.sub(h.at(k, c), f.mul(u, h.at(j + 1, c)));
      for (std::size_t r = 0; r < d; ++r)
        h.at(r, j + 1) = f.add(h.at(r, j + 1), f.mul(u, h.at(r, k)));
    }
  }

  std::vector<std::vector<std::uint32_t>> p(d + 1);
  p[0] = {1};
  for (std::size_t m = 1; m <= d; ++m) {
    std::vector<std::uint32_t> next(m + 1, 0);
    // (x - h[m-1][m-1]) p[m-1]
    for (std::size_t i = 0; i < m; ++i) {
      next[i + 1] = f.add(next[i + 1], p[m - 1][i]);
      next[i] = f.sub(next[i], f.mul(h.at(m - 1, m - 1), p[m - 1][i]));
    }
    std::uint32_t prod = 1;
    for (std::size_t i = m - 1; i-- > 0;) {
      prod = f.mul(prod, h.at(i + 1, i));
      std::uint32_t c = f.mul(prod, h.at(i, m - 1));
      if (c == 0)
        continue;
      for (std::size_t k = 0; k < p[i].size(); ++k)
        next[k] = f.sub(next[k], f.mul(c, p[i][k]));
    }
    p[m] = std::move(next);
  }
  return p[d];
}

std::vector<std::uint32_t> roots_in_field(PrimeField const &f, std::vector<std::uint32_t> const &poly)
{
  std::vector<std::uint32_t> roots;
  for (std::uint64_t x = 0; x < f.p(); ++x) {
    std::uint32_t v = 0;
    for (std::size_t i = poly.size(); i-- > 0;)
      v = f.add(f.mul(v, static_cast<std::uint32_t>(x)), poly[i]);
    if (v == 0)
      roots.push_back(static_cast<std::uint32_t>(x));
  }
  return roots;
}

// A_j[k][l] = #{x in C_j : x^-1 g_l in C_k}, so that the central character
// vector w satisfies A_j w = w_j w.
Matrix class_matrix(ConjugacyClasses const &cc, PrimeField const &f, std::size_t j)
{
  ElementTable const &t = cc.table();
  std::size_t r = cc.size();
  Matrix a(r, r);
  for (std::size_t l = 0; l < r; ++l) {
    std::uint32_t gl = cc.representative(l);
    for (auto x : cc.members(j)) {
      std::size_t k = cc.class_of(t.mul(t.inv(x), gl));
      a.at(k, l) = f.add(a.at(k, l), 1);
    }
  }
  return a;
}

std::vector<Subspace> split(PrimeField const &f, Subspace const &w, Matrix const &a)
{
  std::size_t d = w.dimension();
  std::size_t r = w.ambient();
  // restricted[b][c] = coordinate b of A w_c
  Matrix restricted(d, d);
  for (std::size_t c = 0; c < d; ++c) {
    Vector const &wc = w.basis()[c];
    Vector image(r, 0);
    for (std::size_t i = 0; i < r; ++i) {
      std::uint32_t s = 0;
      for (std::size_t k = 0; k < r; ++k)
        if (wc[k] != 0)
          s = f.add(s, f.mul(a.at(i, k), wc[k]));
      image[i] = s;
    }
    Vector coords = w.coordinates(image);
    for (std::size_t b = 0; b < d; ++b)
      restricted.at(b, c) = coords[b];
  }

  auto roots = roots_in_field(f, characteristic_polynomial(f, restricted));
  if (roots.size() == 1)
    return {w};

  std::vector<Subspace> parts;
  std::size_t total = 0;
  for (auto lambda : roots) {
    Matrix shifted = restricted;
    for (std::size_t i = 0; i < d; ++i)
      shifted.at(i, i) = f.sub(shifted.at(i, i), lambda);
    Subspace part(r);
    for (auto const &x : nullspace(f, shifted)) {
      Vector v(r, 0);
      for (std::size_t c = 0; c < d; ++c)
        if (x[c] != 0)
          for (std::size_t i = 0; i < r; ++i)
            v[i] = f.add(v[i], f.mul(x[c], w.basis()[c][i]));
      part.insert(f, v);
    }
    total += part.dimension();
    parts.push_back(std::move(part));
  }
  if (total != d)
    throw CharacterTableError("class matrix is not diagonalizable on a common eigenspace");
  return parts;
}

bool is_trivial_character(Character const &c)
{
  if (c.degree != 1)
    return false;
  for (auto const &m : c.multiplicities)
    if (m.size() != 1 || m.front().first != 0)
      return false;
  return true;
}

} // namespace

CharacterTable character_table(ConjugacyClasses const &cc)
{
  ElementTable const &t = cc.table();
  std::uint64_t order = t.size();
  std::uint64_t exponent = t.exponent();
  std::size_t r = cc.size();
  std::uint64_t ell = dixon_prime(exponent, order);
  PrimeField f(ell);
  std::uint32_t z = f.pow(primitive_root(f), (ell - 1) / exponent);

  std::vector<Subspace> spaces{Subspace::whole(r)};
  for (std::size_t j = 1; j < r; ++j) {
    bool done = std::all_of(spaces.begin(), spaces.end(), [](Subspace const &s) { return s.dimension() == 1; });
    if (done)
      break;
    Matrix a = class_matrix(cc, f, j);
    std::vector<Subspace> next;
    for (auto const &w : spaces) {
      if (w.dimension() == 1) {
        next.push_back(w);
        continue;
      }
      for (auto &part : split(f, w, a))
        next.push_back(std::move(part));
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r)
    throw CharacterTableError("class matrices failed to separate the characters");

  std::vector<std::vector<std::size_t>> powers(r);
  for (std::size_t k = 0; k < r; ++k) {
    std::uint32_t o = cc.element_order(k);
    for (std::uint32_t s = 0; s < o; ++s)
      powers[k].push_back(cc.power_class(k, s));
  }

  std::uint64_t degree_bound = 1;
  while ((degree_bound + 1) * (degree_bound + 1) <= order)
    ++degree_bound;

  std::vector<Character> rows;
  for (auto const &space : spaces) {
    Vector w = space.basis().front();
    if (w[0] == 0)
      throw CharacterTableError("central character vanishes on the identity");
    std::uint32_t scale = f.inv(w[0]);
    for (auto &x : w)
      x = f.mul(x, scale);

    std::uint32_t s = 0;
    for (std::size_t k = 0; k < r; ++k)
      s = f.add(s, f.mul(f.mul(w[k], w[cc.inverse_class(k)]), f.inv(f.from_int(static_cast<std::int64_t>(cc.class_size(k))))));
    std::uint32_t d2 = f.mul(f.from_int(static_cast<std::int64_t>(order)), f.inv(s));
    std::int64_t degree = 0;
    for (std::uint64_t d = 1; d <= degree_bound; ++d)
      if (f.mul(static_cast<std::uint32_t>(d), static_cast<std::uint32_t>(d)) == d2) {
        degree = static_cast<std::int64_t>(d);
        break;
      }
    if (degree == 0)
      throw CharacterTableError("no integer degree matches the central character");

    Vector chi(r);
    for (std::size_t k = 0; k < r; ++k)
      chi[k] = f.mul(f.mul(static_cast<std::uint32_t>(degree), w[k]),
                     f.inv(f.from_int(static_cast<std::int64_t>(cc.class_size(k)))));

    Character row;
    row.degree = degree;
    for (std::size_t k = 0; k < r; ++k) {
      std::uint32_t o = cc.element_order(k);
      std::uint32_t zo = f.pow(z, exponent / o);
      std::vector<std::pair<std::uint32_t, std::int64_t>> sparse;
      if (degree == 1) {
        std::uint32_t root = 1;
        for (std::uint32_t e = 0; e < o; ++e, root = f.mul(root, zo))
          if (root == chi[k]) {
            sparse.emplace_back(e, 1);
            break;
          }
      } else {
        std::uint32_t inv_o = f.inv(o);
        std::uint32_t zo_inv = f.inv(zo);
        std::int64_t total = 0;
        for (std::uint32_t e = 0; e < o; ++e) {
          std::uint32_t step = f.pow(zo_inv, e);
          std::uint32_t acc = 0;
          std::uint32_t factor = 1;
          for (std::uint32_t sidx = 0; sidx < o; ++sidx, factor = f.mul(factor, step))
            acc = f.add(acc, f.mul(chi[powers[k][sidx]], factor));
          std::uint32_t m = f.mul(acc, inv_o);
          if (m > static_cast<std::uint64_t>(degree))
            throw CharacterTableError("eigenvalue multiplicity out of range while lifting");
          if (m) {
            sparse.emplace_back(e, m);
            total += m;
          }
        }
        if (total != degree)
          throw CharacterTableError("eigenvalue multiplicities do not sum to the degree");
      }
      if (sparse.empty())
        throw CharacterTableError("linear character value is not a root of unity");

      std::vector<std::int64_t> dense(o, 0);
      for (auto [e, m] : sparse)
        dense[e] = m;
      row.values.push_back(CyclotomicInteger::from_multiplicities(dense));
      row.multiplicities.push_back(std::move(sparse));
    }
    rows.push_back(std::move(row));
  }

  std::sort(rows.begin(), rows.end(), [](Character const &a, Character const &b) {
    bool ta = is_trivial_character(a);
    bool tb = is_trivial_character(b);
    if (ta != tb)
      return ta;
    if (a.degree != b.degree)
      return a.degree < b.degree;
    return a.values < b.values;
  });
  return CharacterTable::from_rows(cc, std::move(rows), ell);
}

namespace
{

bool reduces_to(std::vector<std::int64_t> const &acc, std::int64_t constant)
{
  auto reduced = reduce_mod_cyclotomic(acc);
  if (reduced[0] != constant)
    return false;
  return std::all_of(reduced.begin() + 1, reduced.end(), [](std::int64_t x) { return x == 0; });
}

} // namespace

std::optional<std::pair<std::size_t, std::size_t>> row_orthogonality_failure(CharacterTable const &t)
{
  ConjugacyClasses const &cc = t.classes();
  std::uint64_t e = cc.table().exponent();
  auto const &rows = t.characters();
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = i; j < rows.size(); ++j) {
      std::vector<std::int64_t> acc(e, 0);
      for (std::size_t k = 0; k < cc.size(); ++k) {
        std::uint64_t o = cc.element_order(k);
        std::uint64_t step = e / o;
        auto weight = static_cast<std::int64_t>(cc.class_size(k));
        for (auto [a, ma] : rows[i].multiplicities[k])
          for (auto [b, mb] : rows[j].multiplicities[k])
            acc[((a + o - b) % o) * step] += weight * ma * mb;
      }
      if (!reduces_to(acc, i == j ? static_cast<std::int64_t>(cc.table().size()) : 0))
        return std::make_pair(i, j);
    }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> column_orthogonality_failure(CharacterTable const &t)
{
  ConjugacyClasses const &cc = t.classes();
  std::uint64_t e = cc.table().exponent();
  auto const &rows = t.characters();
  for (std::size_t g = 0; g < cc.size(); ++g)
    for (std::size_t h = g; h < cc.size(); ++h) {
      std::uint64_t sg = e / cc.element_order(g);
      std::uint64_t sh = e / cc.element_order(h);
      std::vector<std::int64_t> acc(e, 0);
      for (auto const &row : rows)
        for (auto [a, ma] : row.multiplicities[g])
          for (auto [b, mb] : row.multiplicities[h])
            acc[(a * sg + e - b * sh % e) % e] += ma * mb;
      std::int64_t expected = g == h ? static_cast<std::int64_t>(cc.table().size() / cc.class_size(g)) : 0;
      if (!reduces_to(acc, expected))
        return std::make_pair(g, h);
    }
  return std::nullopt;
}

std::vector<std::size_t> nonvanishing_classes(CharacterTable const &t)
{
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < t.classes().size(); ++k) {
    bool vanishes = std::any_of(t.characters().begin(), t.characters().end(),
                                [&](Character const &c) { return c.values[k].is_zero(); });
    if (!vanishes)
      out.push_back(k);
  }
  return out;
}

nlohmann::json to_json(CharacterTable const &t)
{
  ConjugacyClasses const &cc = t.classes();
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t k = 0; k < cc.size(); ++k)
    classes.push_back({{"representative", cc.table().element(cc.representative(k)).to_string()},
                       {"size", cc.class_size(k)},
                       {"element_order", cc.element_order(k)}});

  nlohmann::json characters = nlohmann::json::array();
  for (auto const &row : t.characters()) {
    nlohmann::json values = nlohmann::json::array();
    for (auto const &v : row.values)
      values.push_back({{"conductor", v.conductor()}, {"coeffs", v.coefficients()}});
    characters.push_back({{"degree", row.degree}, {"values", values}});
  }
  return {{"order", cc.table().size()}, {"classes", classes}, {"degrees", t.degrees()}, {"characters", characters}};
}

} // namespace wsm
