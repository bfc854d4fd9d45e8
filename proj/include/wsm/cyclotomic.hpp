#ifndef WSM_CYCLOTOMIC_HPP
#define WSM_CYCLOTOMIC_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsm
{

std::uint64_t euler_phi(std::uint64_t n);

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<std::int64_t> const &cyclotomic_polynomial(std::uint64_t n);

/// Reduce sum_k mult[k] x^k modulo Phi_e, e = mult.size(), to the power
/// basis 1, z, ..., z^(phi(e)-1).
std::vector<std::int64_t> reduce_mod_cyclotomic(std::span<const std::int64_t> mult);

/// An element of Z[zeta_e] stored in the power basis modulo Phi_e, with e
/// the smallest conductor whose field contains the value. The form is
/// canonical, so equality is coefficientwise.
class CyclotomicInteger
{
public:
  CyclotomicInteger() = default;

  static CyclotomicInteger integer(std::int64_t v);
  static CyclotomicInteger root_of_unity(std::uint64_t e, std::uint64_t k);
  /// sum_k mult[k] zeta_e^k with e = mult.size().
  static CyclotomicInteger from_multiplicities(std::span<const std::int64_t> mult);
  /// Power-basis coefficients for conductor e (length phi(e)).
  static CyclotomicInteger from_coefficients(std::uint64_t e, std::vector<std::int64_t> coeffs);

  std::uint64_t conductor() const { return conductor_; }
  std::vector<std::int64_t> const &coefficients() const { return coeffs_; }

  bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0; }
  std::optional<std::int64_t> to_integer() const;

  /// Coefficients in the power basis of Q(zeta_e); e must be a multiple of
  /// the conductor.
  std::vector<std::int64_t> embedded(std::uint64_t e) const;

  /// zeta -> zeta^k for k coprime to the conductor.
  CyclotomicInteger galois(std::int64_t k) const;
  CyclotomicInteger conjugate() const { return galois(-1); }

  CyclotomicInteger operator-() const;
  friend CyclotomicInteger operator+(CyclotomicInteger const &a, CyclotomicInteger const &b);
  friend CyclotomicInteger operator-(CyclotomicInteger const &a, CyclotomicInteger const &b);
  friend CyclotomicInteger operator*(CyclotomicInteger const &a, CyclotomicInteger const &b);

  bool operator==(CyclotomicInteger const &) const = default;
  /// Conductor first, then coefficients.
  std::strong_ordering operator<=>(CyclotomicInteger const &other) const;

  /// Integers print plainly; otherwise a sum of terms c*E(e)^k.
  std::string to_string() const;

private:
  static CyclotomicInteger canonical(std::uint64_t e, std::vector<std::int64_t> coeffs);

  std::uint64_t conductor_ = 1;
  std::vector<std::int64_t> coeffs_{0};
};

} // namespace wsm

#endif // WSM_CYCLOTOMIC_HPP
