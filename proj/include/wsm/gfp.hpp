#ifndef WSM_GFP_HPP
#define WSM_GFP_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wsm
{

/// Arithmetic in GF(p) for a prime p < 2^32.
class PrimeField
{
public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t p() const { return p_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const
  {
    std::uint64_t s = std::uint64_t{a} + b;
    return static_cast<std::uint32_t>(s >= p_ ? s - p_ : s);
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const
  {
    return static_cast<std::uint32_t>(a >= b ? a - b : a + p_ - b);
  }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : static_cast<std::uint32_t>(p_ - a); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const
  {
    return static_cast<std::uint32_t>(std::uint64_t{a} * b % p_);
  }
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// Throws std::domain_error on zero.
  std::uint32_t inv(std::uint32_t a) const;

  std::uint32_t from_int(std::int64_t v) const;
  /// Symmetric lift to (-p/2, p/2].
  std::int64_t to_signed(std::uint32_t a) const;

  bool operator==(PrimeField const &) const = default;

private:
  std::uint64_t p_;
};

bool is_prime(std::uint64_t n);

using Vector = std::vector<std::uint32_t>;

/// Dense row-major matrix over GF(p); the field is passed to each operation.
class Matrix
{
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::vector<Vector> const &rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint32_t &at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::uint32_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  Vector row(std::size_t r) const;
  std::span<const std::uint32_t> data() const { return data_; }

  bool is_identity() const;

  bool operator==(Matrix const &) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::uint32_t> data_;
};

Matrix multiply(PrimeField const &f, Matrix const &a, Matrix const &b);
Matrix transpose(Matrix const &a);
std::optional<Matrix> inverse(PrimeField const &f, Matrix const &a);
std::size_t rank(PrimeField const &f, Matrix a);
std::uint32_t determinant(PrimeField const &f, Matrix a);

/// Row vector times matrix.
Vector row_times(PrimeField const &f, Vector const &v, Matrix const &a);

/// Basis of { x : A x = 0 } as column vectors.
std::vector<Vector> nullspace(PrimeField const &f, Matrix a);

/// A subspace of GF(p)^n stored as a reduced row echelon basis, which makes
/// the representation canonical.
class Subspace
{
public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

  static Subspace whole(std::size_t ambient);

  std::size_t ambient() const { return ambient_; }
  std::size_t dimension() const { return basis_.size(); }
  std::vector<Vector> const &basis() const { return basis_; }
  std::vector<std::size_t> const &pivots() const { return pivots_; }

  /// v minus its projection onto the span along the pivot columns.
  Vector reduce(PrimeField const &f, Vector v) const;
  bool contains(PrimeField const &f, Vector const &v) const;

  /// Adds v to the span; returns false if it was already inside.
  bool insert(PrimeField const &f, Vector const &v);

  /// Coordinates of a vector known to lie in the span.
  Vector coordinates(Vector const &v) const;

  bool is_subspace_of(PrimeField const &f, Subspace const &other) const;

  bool operator==(Subspace const &) const = default;
  bool operator<(Subspace const &other) const;

private:
  std::size_t ambient_ = 0;
  std::vector<Vector> basis_;
  std::vector<std::size_t> pivots_;
};

/// Vectors of GF(p)^n encoded as base-p integers, little-endian.
Vector decode_vector(std::uint64_t code, std::uint64_t p, std::size_t n);
std::uint64_t encode_vector(Vector const &v, std::uint64_t p);

std::string to_string(Matrix const &m);

} // namespace wsm

#endif // WSM_GFP_HPP
