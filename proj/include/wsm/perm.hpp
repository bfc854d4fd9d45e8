#ifndef WSM_PERM_HPP
#define WSM_PERM_HPP

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace wsm
{

/// Raised for malformed permutations, degree mismatches and bad cycle strings.
class PermError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

/// A permutation of {0, ..., degree-1}.
///
/// Points are 0-based internally and 1-based in cycle notation. Products
/// compose left to right: (a * b)(i) = b(a(i)), so i^(ab) = (i^a)^b as in
/// most computational group theory systems.
class Perm
{
public:
  static constexpr std::size_t kMaxDegree = 255;

  Perm() = default;
  explicit Perm(std::size_t degree);

  /// Throws PermError unless images is a bijection of {0..n-1}.
  static Perm from_images(std::span<const std::size_t> images);

  /// Parses "(1,2)(3,4,5)"; "()" is the identity. Commas or blanks separate
  /// points. The degree is max(degree, largest point mentioned).
  static Perm parse(std::string_view cycles, std::size_t degree = 0);

  std::size_t degree() const { return degree_; }

  std::size_t operator[](std::size_t i) const { return images_[i]; }

  Perm operator*(Perm const &other) const;
  Perm &operator*=(Perm const &other) { return *this = *this * other; }

  Perm inverse() const;
  Perm pow(long long e) const;

  bool is_identity() const;
  std::uint64_t order() const;
  bool is_even() const;

  /// Smallest moved point, or degree() for the identity.
  std::size_t first_moved_point() const;

  /// Copy acting on a larger point set, fixing the new points.
  Perm extended(std::size_t degree) const;

  /// Copy acting on [offset, offset + degree()) inside a domain of size total.
  Perm shifted(std::size_t offset, std::size_t total) const;

  std::string to_string() const;

  std::uint64_t hash() const;

  bool operator==(Perm const &other) const;
  std::strong_ordering operator<=>(Perm const &other) const;

private:
  std::array<std::uint8_t, kMaxDegree> images_{};
  std::uint16_t degree_ = 0;
};

/// g^-1 h g
Perm conjugate(Perm const &h, Perm const &g);

/// a^-1 b^-1 a b
Perm commutator(Perm const &a, Perm const &b);

struct PermHash
{
  std::size_t operator()(Perm const &p) const { return static_cast<std::size_t>(p.hash()); }
};

std::string to_cycle_string(std::span<const Perm> perms);

} // namespace wsm

#endif // WSM_PERM_HPP
