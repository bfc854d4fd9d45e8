#include "wsm/cyclotomic.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace wsm
{

namespace
{

std::vector<std::uint64_t> prime_divisors(std::uint64_t n)
{
  std::vector<std::uint64_t> out;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0)
        n /= q;
    }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t m)
{
  if (m == 1)
    return 0;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1)
    throw std::invalid_argument("value not invertible modulo m");
  return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::vector<std::int64_t> compute_cyclotomic(std::uint64_t n)
{
  // x^n - 1 divided by Phi_d for every proper divisor d
  std::vector<std::int64_t> poly(n + 1, 0);
  poly[0] = -1;
  poly[n] = 1;
  for (std::uint64_t d = 1; d < n; ++d) {
    if (n % d != 0)
      continue;
    auto const &div = cyclotomic_polynomial(d);
    std::size_t dd = div.size() - 1;
    std::vector<std::int64_t> quotient(poly.size() - dd, 0);
    for (std::size_t i = poly.size(); i-- > dd;) {
      std::int64_t c = poly[i];
      quotient[i - dd] = c;
      if (c == 0)
        continue;
      for (std::size_t j = 0; j <= dd; ++j)
        poly[i - dd + j] -= c * div[j];
    }
    poly = std::move(quotient);
  }
  return poly;
}

} // namespace

std::uint64_t euler_phi(std::uint64_t n)
{
  std::uint64_t result = n;
  for (auto q : prime_divisors(n))
    result = result / q * (q - 1);
  return result;
}

std::vector<std::int64_t> const &cyclotomic_polynomial(std::uint64_t n)
{
  if (n == 0)
    throw std::invalid_argument("cyclotomic polynomial of order 0");
  static std::mutex mutex;
  static std::map<std::uint64_t, std::unique_ptr<std::vector<std::int64_t>>> cache;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end())
      return *it->second;
  }
  auto poly = std::make_unique<std::vector<std::int64_t>>(compute_cyclotomic(n));
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(n, std::move(poly));
  return *it->second;
}

std::vector<std::int64_t> reduce_mod_cyclotomic(std::span<const std::int64_t> mult)
{
  std::uint64_t e = mult.size();
  auto const &phi_poly = cyclotomic_polynomial(e);
  std::size_t deg = phi_poly.size() - 1;
  std::vector<std::int64_t> p(mult.begin(), mult.end());
  for (std::size_t i = p.size(); i-- > deg;) {
    std::int64_t c = p[i];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j <= deg; ++j)
      p[i - deg + j] -= c * phi_poly[j];
  }
  p.resize(deg);
  return p;
}

CyclotomicInteger CyclotomicInteger::canonical(std::uint64_t e, std::vector<std::int64_t> coeffs)
{
  bool changed = true;
  while (changed && e > 1) {
    changed = false;
    for (auto q : prime_divisors(e)) {
      std::uint64_t sub = e / q;
      bool square = sub % q == 0;
      std::int64_t degree = square ? static_cast<std::int64_t>(q) : static_cast<std::int64_t>(q - 1);
      std::uint64_t inv_sub = square ? 0 : inverse_mod(sub % q, q);
      std::uint64_t inv_q = square ? 0 : inverse_mod(q % sub, sub);

      // Relative trace down to Q(zeta_sub), as multiplicities.
      std::vector<std::int64_t> trace(sub, 0);
      for (std::uint64_t i = 0; i < coeffs.size(); ++i) {
        std::int64_t c = coeffs[i];
        if (c == 0)
          continue;
        if (square) {
          if (i % q == 0)
            trace[i / q] += static_cast<std::int64_t>(q) * c;
        } else {
          std::uint64_t alpha = i * inv_sub % q;
          std::uint64_t beta = sub == 1 ? 0 : i * inv_q % sub;
          trace[beta] += alpha == 0 ? static_cast<std::int64_t>(q - 1) * c : -c;
        }
      }
      auto down = reduce_mod_cyclotomic(trace);
      bool divisible = true;
      for (auto &x : down) {
        if (x % degree != 0) {
          divisible = false;
          break;
        }
        x /= degree;
      }
      if (!divisible)
        continue;

      std::vector<std::int64_t> back(e, 0);
      for (std::size_t j = 0; j < down.size(); ++j)
        back[j * q] = down[j];
      if (reduce_mod_cyclotomic(back) != coeffs)
        continue;

      e = sub;
      coeffs = std::move(down);
      changed = true;
      break;
    }
  }
  CyclotomicInteger out;
  out.conductor_ = e;
  out.coeffs_ = std::move(coeffs);
  return out;
}

CyclotomicInteger CyclotomicInteger::integer(std::int64_t v)
{
  CyclotomicInteger out;
  out.coeffs_ = {v};
  return out;
}

CyclotomicInteger CyclotomicInteger::root_of_unity(std::uint64_t e, std::uint64_t k)
{
  if (e == 0)
    throw std::invalid_argument("root of unity of order 0");
  std::vector<std::int64_t> mult(e, 0);
  mult[k % e] = 1;
  return from_multiplicities(mult);
}

CyclotomicInteger CyclotomicInteger::from_multiplicities(std::span<const std::int64_t> mult)
{
  if (mult.empty())
    throw std::invalid_argument("empty multiplicity vector");
  return canonical(mult.size(), reduce_mod_cyclotomic(mult));
}

CyclotomicInteger CyclotomicInteger::from_coefficients(std::uint64_t e, std::vector<std::int64_t> coeffs)
{
  if (e == 0 || coeffs.size() != euler_phi(e))
    throw std::invalid_argument("coefficient vector length must be phi(e)");
  return canonical(e, std::move(coeffs));
}

std::optional<std::int64_t> CyclotomicInteger::to_integer() const
{
  if (conductor_ != 1)
    return std::nullopt;
  return coeffs_[0];
}

std::vector<std::int64_t> CyclotomicInteger::embedded(std::uint64_t e) const
{
  if (e == 0 || e % conductor_ != 0)
    throw std::invalid_argument("target conductor is not a multiple of the value's conductor");
  std::uint64_t step = e / conductor_;
  std::vector<std::int64_t> mult(e, 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    mult[j * step] = coeffs_[j];
  return reduce_mod_cyclotomic(mult);
}

CyclotomicInteger CyclotomicInteger::galois(std::int64_t k) const
{
  auto e = static_cast<std::int64_t>(conductor_);
  std::int64_t kk = ((k % e) + e) % e;
  if (std::gcd(kk, e) != 1)
    throw std::invalid_argument("Galois exponent must be coprime to the conductor");
  std::vector<std::int64_t> mult(conductor_, 0);
  for (std::size_t j = 0; j < coeffs_.size(); ++j)
    mult[static_cast<std::size_t>(static_cast<std::int64_t>(j) * kk % e)] += coeffs_[j];
  return from_multiplicities(mult);
}

CyclotomicInteger CyclotomicInteger::operator-() const
{
  CyclotomicInteger out = *this;
  for (auto &c : out.coeffs_)
    c = -c;
  return out;
}

CyclotomicInteger operator+(CyclotomicInteger const &a, CyclotomicInteger const &b)
{
  std::uint64_t e = std::lcm(a.conductor_, b.conductor_);
  auto x = a.embedded(e);
  auto y = b.embedded(e);
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] += y[i];
  return CyclotomicInteger::canonical(e, std::move(x));
}

CyclotomicInteger operator-(CyclotomicInteger const &a, CyclotomicInteger const &b)
{
  return a + (-b);
}

CyclotomicInteger operator*(CyclotomicInteger const &a, CyclotomicInteger const &b)
{
  std::uint64_t e = std::lcm(a.conductor_, b.conductor_);
  auto x = a.embedded(e);
  auto y = b.embedded(e);
  std::vector<std::int64_t> mult(e, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0)
      continue;
    for (std::size_t j = 0; j < y.size(); ++j)
      mult[(i + j) % e] += x[i] * y[j];
  }
  return CyclotomicInteger::from_multiplicities(mult);
}

std::strong_ordering CyclotomicInteger::operator<=>(CyclotomicInteger const &other) const
{
  if (auto c = conductor_ <=> other.conductor_; c != 0)
    return c;
  return coeffs_ <=> other.coeffs_;
}

std::string CyclotomicInteger::to_string() const
{
  if (conductor_ == 1)
    return std::to_string(coeffs_[0]);
  std::string out;
  std::string root = "E(" + std::to_string(conductor_) + ")";
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    std::int64_t c = coeffs_[k];
    if (c == 0)
      continue;
    std::int64_t mag = c < 0 ? -c : c;
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    if (k == 0) {
      out += std::to_string(mag);
      continue;
    }
    if (mag != 1)
      out += std::to_string(mag) + "*";
    out += root;
    if (k > 1)
      out += "^" + std::to_string(k);
  }
  return out;
}

} // namespace wsm
