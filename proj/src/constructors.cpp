#include "wsm/constructors.hpp"

#include <cctype>
#include <vector>

#include "wsm/gfp.hpp"

namespace wsm
{

namespace
{

void require_degree(std::uint64_t degree)
{
  if (degree > Perm::kMaxDegree)
    throw ConstructorError("construction needs " + std::to_string(degree) + " points, above the limit of " +
                           std::to_string(Perm::kMaxDegree));
}

Perm from_vector(std::vector<std::size_t> const &images)
{
  return Perm::from_images(images);
}

// Cycle (first, first+1, ..., last) on `degree` points, 0-based.
Perm cycle(std::size_t first, std::size_t last, std::size_t degree)
{
  std::vector<std::size_t> images(degree);
  for (std::size_t i = 0; i < degree; ++i)
    images[i] = i;
  for (std::size_t i = first; i < last; ++i)
    images[i] = i + 1;
  images[last] = first;
  return from_vector(images);
}

// GF(p^k) as polynomials over GF(p) modulo a monic irreducible of degree k;
// elements are encoded as base-p integers.
class FiniteField
{
public:
  FiniteField(std::uint64_t p, std::uint64_t k)
  : p_(p)
  , k_(k)
  , q_(1)
  {
    for (std::uint64_t i = 0; i < k; ++i)
      q_ *= p;
    modulus_ = find_irreducible();
  }

  std::uint64_t size() const { return q_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const
  {
    auto x = digits(a), y = digits(b);
    for (std::size_t i = 0; i < k_; ++i)
      x[i] = (x[i] + y[i]) % p_;
    return encode(x);
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const
  {
    auto x = digits(a), y = digits(b);
    std::vector<std::uint64_t> prod(2 * k_, 0);
    for (std::size_t i = 0; i < k_; ++i)
      for (std::size_t j = 0; j < k_; ++j)
        prod[i + j] = (prod[i + j] + x[i] * y[j]) % p_;
    reduce(prod);
    prod.resize(k_);
    return encode(prod);
  }

  std::uint64_t primitive_element() const
  {
    for (std::uint64_t g = 2; g < q_; ++g) {
      std::uint64_t x = g, order = 1;
      while (x != 1) {
        x = mul(x, g);
        ++order;
      }
      if (order == q_ - 1)
        return g;
    }
    return 1;
  }

private:
  std::vector<std::uint64_t> digits(std::uint64_t a) const
  {
    std::vector<std::uint64_t> d(k_);
    for (std::size_t i = 0; i < k_; ++i) {
      d[i] = a % p_;
      a /= p_;
    }
    return d;
  }

  std::uint64_t encode(std::vector<std::uint64_t> const &d) const
  {
    std::uint64_t a = 0;
    for (std::size_t i = k_; i-- > 0;)
      a = a * p_ + d[i];
    return a;
  }

  void reduce(std::vector<std::uint64_t> &poly) const
  {
    for (std::size_t i = poly.size(); i-- > k_;) {
      std::uint64_t c = poly[i];
      if (c == 0)
        continue;
      // x^k = -(modulus_[0] + ... + modulus_[k-1] x^(k-1))
      for (std::size_t j = 0; j < k_; ++j)
        poly[i - k_ + j] = (poly[i - k_ + j] + (p_ - modulus_[j]) * c) % p_;
      poly[i] = 0;
    }
  }

  // Degree <= 3 polynomials are irreducible iff they have no root.
  std::vector<std::uint64_t> find_irreducible() const
  {
    if (k_ > 3)
      throw ConstructorError("field extensions of degree above 3 are not supported");
    if (k_ == 1)
      return {0};
    for (std::uint64_t code = 0; code < q_; ++code) {
      auto low = digits(code);
      bool has_root = false;
      for (std::uint64_t x = 0; x < p_ && !has_root; ++x) {
        std::uint64_t v = 1;
        for (std::size_t i = k_; i-- > 0;)
          v = (v * x + low[i]) % p_;
        has_root = v == 0;
      }
      if (!has_root)
        return low;
    }
    throw ConstructorError("no irreducible polynomial found");
  }

  std::uint64_t p_;
  std::uint64_t k_;
  std::uint64_t q_;
  std::vector<std::uint64_t> modulus_;  // low coefficients of the monic modulus
};

class SourceParser
{
public:
  explicit SourceParser(std::string_view text)
  : text_(text)
  {
  }

  Group parse()
  {
    Group g = expression();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected trailing text");
    return g;
  }

private:
  [[noreturn]] void fail(std::string const &why) const
  {
    throw ConstructorError("cannot parse source '" + std::string(text_) + "' at position " + std::to_string(pos_) +
                           ": " + why);
  }

  void skip_space()
  {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect(char c)
  {
    skip_space();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  std::string identifier()
  {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
      ++pos_;
    if (start == pos_)
      fail("expected a constructor name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t number()
  {
    skip_space();
    std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1'000'000)
        fail("number too large");
      ++pos_;
    }
    if (start == pos_)
      fail("expected a number");
    return v;
  }

  Group expression()
  {
    std::string name = identifier();
    expect('(');
    Group result = Group::trivial(1);
    if (name == "direct") {
      Group a = expression();
      expect(',');
      Group b = expression();
      result = direct(a, b);
    } else if (name == "elem_abelian") {
      std::uint64_t p = number();
      expect(',');
      std::uint64_t n = number();
      result = elem_abelian(p, n);
    } else {
      std::uint64_t n = number();
      if (name == "sym")
        result = sym(n);
      else if (name == "alt")
        result = alt(n);
      else if (name == "cyclic")
        result = cyclic(n);
      else if (name == "dihedral")
        result = dihedral(n);
      else if (name == "quaternion")
        result = quaternion(n);
      else if (name == "agl1")
        result = agl1(n);
      else
        fail("unknown constructor '" + name + "'");
    }
    expect(')');
    return result;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

Group sym(std::uint64_t n)
{
  if (n == 0)
    throw ConstructorError("sym(n) needs n >= 1");
  require_degree(n);
  if (n == 1)
    return Group::trivial(1);
  if (n == 2)
    return Group({cycle(0, 1, 2)}, 2);
  return Group({cycle(0, 1, n), cycle(0, n - 1, n)}, n);
}

Group alt(std::uint64_t n)
{
  if (n == 0)
    throw ConstructorError("alt(n) needs n >= 1");
  require_degree(n);
  if (n <= 2)
    return Group::trivial(n);
  if (n == 3)
    return Group({cycle(0, 2, 3)}, 3);
  Perm long_cycle = n % 2 == 1 ? cycle(0, n - 1, n) : cycle(1, n - 1, n);
  return Group({cycle(0, 2, n), long_cycle}, n);
}

Group cyclic(std::uint64_t n)
{
  if (n == 0)
    throw ConstructorError("cyclic(n) needs n >= 1");
  require_degree(n);
  if (n == 1)
    return Group::trivial(1);
  return Group({cycle(0, n - 1, n)}, n);
}

Group dihedral(std::uint64_t n)
{
  if (n == 0)
    throw ConstructorError("dihedral(n) needs n >= 1");
  if (n == 1)
    return cyclic(2);
  if (n == 2)
    return elem_abelian(2, 2);
  require_degree(n);
  std::vector<std::size_t> reflection(n);
  for (std::size_t i = 0; i < n; ++i)
    reflection[i] = (n - i) % n;
  return Group({cycle(0, n - 1, n), from_vector(reflection)}, n);
}

Group elem_abelian(std::uint64_t p, std::uint64_t n)
{
  if (!is_prime(p) || n == 0)
    throw ConstructorError("elem_abelian(p, n) needs a prime p and n >= 1");
  require_degree(p * n);
  std::vector<Perm> gens;
  for (std::uint64_t i = 0; i < n; ++i)
    gens.push_back(cycle(i * p, i * p + p - 1, p * n));
  return Group(gens, p * n);
}

Group quaternion(std::uint64_t n)
{
  if (n < 8 || (n & (n - 1)) != 0)
    throw ConstructorError("quaternion(n) needs n = 2^k >= 8");
  require_degree(n);
  std::uint64_t m = n / 2;  // order of a
  // element a^i b^j has index i + m j; right multiplication by a and by b
  std::vector<std::size_t> by_a(n), by_b(n);
  for (std::uint64_t i = 0; i < m; ++i) {
    by_a[i] = (i + 1) % m;
    by_a[i + m] = (i + m - 1) % m + m;  // a^i b a = a^(i-1) b
    by_b[i] = i + m;
    by_b[i + m] = (i + m / 2) % m;      // b^2 = a^(m/2)
  }
  return Group({from_vector(by_a), from_vector(by_b)}, n);
}

Group direct(Group const &a, Group const &b)
{
  require_degree(a.degree() + b.degree());
  return direct_product(a, b);
}

Group agl1(std::uint64_t q)
{
  std::uint64_t p = 0, k = 0;
  for (std::uint64_t d = 2; d <= q; ++d)
    if (q % d == 0) {
      p = d;
      break;
    }
  if (p == 0 || !is_prime(p))
    throw ConstructorError("agl1(q) needs a prime power q >= 2");
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest != 1)
    throw ConstructorError("agl1(q) needs a prime power q >= 2");
  require_degree(q);

  FiniteField field(p, k);
  std::uint64_t omega = field.primitive_element();
  std::vector<std::size_t> translate(q), scale(q);
  for (std::uint64_t x = 0; x < q; ++x) {
    translate[x] = field.add(x, 1);
    scale[x] = field.mul(omega, x);
  }
  return Group({from_vector(translate), from_vector(scale)}, q);
}

Group build_from_source(std::string_view source)
{
  return SourceParser(source).parse();
}

} // namespace wsm
