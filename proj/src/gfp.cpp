#include "wsm/gfp.hpp"

#include <algorithm>
#include <stdexcept>

namespace wsm
{

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

PrimeField::PrimeField(std::uint64_t p)
: p_(p)
{
  if (!is_prime(p) || p >= (std::uint64_t{1} << 32))
    throw std::invalid_argument("field characteristic must be a prime below 2^32");
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const
{
  std::uint32_t result = 1 % static_cast<std::uint32_t>(p_);
  while (e) {
    if (e & 1u)
      result = mul(result, a);
    a = mul(a, a);
    e >>= 1u;
  }
  return result;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
  if (a % p_ == 0)
    throw std::domain_error("inverse of zero in GF(p)");
  return pow(a, p_ - 2);
}

std::uint32_t PrimeField::from_int(std::int64_t v) const
{
  std::int64_t m = v % static_cast<std::int64_t>(p_);
  if (m < 0)
    m += static_cast<std::int64_t>(p_);
  return static_cast<std::uint32_t>(m);
}

std::int64_t PrimeField::to_signed(std::uint32_t a) const
{
  return a > p_ / 2 ? static_cast<std::int64_t>(a) - static_cast<std::int64_t>(p_) : static_cast<std::int64_t>(a);
}

Matrix Matrix::identity(std::size_t n)
{
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    m.at(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(std::vector<Vector> const &rows)
{
  if (rows.empty())
    return Matrix();
  Matrix m(rows.size(), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols())
      throw std::invalid_argument("ragged matrix rows");
    for (std::size_t c = 0; c < m.cols(); ++c)
      m.at(r, c) = rows[r][c];
  }
  return m;
}

Vector Matrix::row(std::size_t r) const
{
  return Vector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

bool Matrix::is_identity() const
{
  if (rows_ != cols_)
    return false;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (at(r, c) != (r == c ? 1u : 0u))
        return false;
  return true;
}

Matrix multiply(PrimeField const &f, Matrix const &a, Matrix const &b)
{
  if (a.cols() != b.rows())
    throw std::invalid_argument("matrix shape mismatch");
  Matrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      std::uint32_t aik = a.at(i, k);
      if (aik == 0)
        continue;
      for (std::size_t j = 0; j < b.cols(); ++j)
        c.at(i, j) = f.add(c.at(i, j), f.mul(aik, b.at(k, j)));
    }
  return c;
}

Matrix transpose(Matrix const &a)
{
  Matrix t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      t.at(j, i) = a.at(i, j);
  return t;
}

namespace
{

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(PrimeField const &f, Matrix &a)
{
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t sel = row;
    while (sel < a.rows() && a.at(sel, col) == 0)
      ++sel;
    if (sel == a.rows())
      continue;
    if (sel != row)
      for (std::size_t c = 0; c < a.cols(); ++c)
        std::swap(a.at(sel, c), a.at(row, c));

    std::uint32_t scale = f.inv(a.at(row, col));
    for (std::size_t c = 0; c < a.cols(); ++c)
      a.at(row, c) = f.mul(a.at(row, c), scale);

    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a.at(r, col) == 0)
        continue;
      std::uint32_t factor = a.at(r, col);
      for (std::size_t c = 0; c < a.cols(); ++c)
        a.at(r, c) = f.sub(a.at(r, c), f.mul(factor, a.at(row, c)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

} // namespace

std::optional<Matrix> inverse(PrimeField const &f, Matrix const &a)
{
  std::size_t n = a.rows();
  if (n != a.cols())
    throw std::invalid_argument("inverse of a non-square matrix");
  Matrix aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug.at(i, j) = a.at(i, j);
    aug.at(i, n + i) = 1;
  }
  auto pivots = rref(f, aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1)
    return std::nullopt;
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      inv.at(i, j) = aug.at(i, n + j);
  return inv;
}

std::size_t rank(PrimeField const &f, Matrix a)
{
  return rref(f, a).size();
}

std::uint32_t determinant(PrimeField const &f, Matrix a)
{
  std::size_t n = a.rows();
  if (n != a.cols())
    throw std::invalid_argument("determinant of a non-square matrix");
  std::uint32_t det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = col;
    while (sel < n && a.at(sel, col) == 0)
      ++sel;
    if (sel == n)
      return 0;
    if (sel != col) {
      for (std::size_t c = 0; c < n; ++c)
        std::swap(a.at(sel, c), a.at(col, c));
      det = f.neg(det);
    }
    det = f.mul(det, a.at(col, col));
    std::uint32_t inv_pivot = f.inv(a.at(col, col));
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a.at(r, col) == 0)
        continue;
      std::uint32_t factor = f.mul(a.at(r, col), inv_pivot);
      for (std::size_t c = col; c < n; ++c)
        a.at(r, c) = f.sub(a.at(r, c), f.mul(factor, a.at(col, c)));
    }
  }
  return det;
}

Vector row_times(PrimeField const &f, Vector const &v, Matrix const &a)
{
  if (v.size() != a.rows())
    throw std::invalid_argument("vector/matrix shape mismatch");
  Vector out(a.cols(), 0);
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k] == 0)
      continue;
    for (std::size_t j = 0; j < a.cols(); ++j)
      out[j] = f.add(out[j], f.mul(v[k], a.at(k, j)));
  }
  return out;
}

std::vector<Vector> nullspace(PrimeField const &f, Matrix a)
{
  auto pivots = rref(f, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto p : pivots)
    is_pivot[p] = true;

  std::vector<Vector> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free])
      continue;
    Vector x(a.cols(), 0);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      x[pivots[r]] = f.neg(a.at(r, free));
    basis.push_back(std::move(x));
  }
  return basis;
}

Subspace Subspace::whole(std::size_t ambient)
{
  Subspace s(ambient);
  for (std::size_t i = 0; i < ambient; ++i) {
    Vector v(ambient, 0);
    v[i] = 1;
    s.basis_.push_back(std::move(v));
    s.pivots_.push_back(i);
  }
  return s;
}

Vector Subspace::reduce(PrimeField const &f, Vector v) const
{
  for (std::size_t r = 0; r < basis_.size(); ++r) {
    std::uint32_t c = v[pivots_[r]];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      v[j] = f.sub(v[j], f.mul(c, basis_[r][j]));
  }
  return v;
}

bool Subspace::contains(PrimeField const &f, Vector const &v) const
{
  auto r = reduce(f, v);
  return std::all_of(r.begin(), r.end(), [](std::uint32_t x) { return x == 0; });
}

bool Subspace::insert(PrimeField const &f, Vector const &v)
{
  Vector r = reduce(f, v);
  std::size_t pivot = 0;
  while (pivot < ambient_ && r[pivot] == 0)
    ++pivot;
  if (pivot == ambient_)
    return false;

  std::uint32_t scale = f.inv(r[pivot]);
  for (auto &x : r)
    x = f.mul(x, scale);

  for (auto &row : basis_) {
    std::uint32_t c = row[pivot];
    if (c == 0)
      continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      row[j] = f.sub(row[j], f.mul(c, r[j]));
  }

  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  basis_.insert(basis_.begin() + pos, std::move(r));
  return true;
}

Vector Subspace::coordinates(Vector const &v) const
{
  Vector c(basis_.size());
  for (std::size_t r = 0; r < basis_.size(); ++r)
    c[r] = v[pivots_[r]];
  return c;
}

bool Subspace::is_subspace_of(PrimeField const &f, Subspace const &other) const
{
  for (auto const &b : basis_)
    if (!other.contains(f, b))
      return false;
  return true;
}

bool Subspace::operator<(Subspace const &other) const
{
  if (basis_.size() != other.basis_.size())
    return basis_.size() < other.basis_.size();
  return basis_ < other.basis_;
}

Vector decode_vector(std::uint64_t code, std::uint64_t p, std::size_t n)
{
  Vector v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = static_cast<std::uint32_t>(code % p);
    code /= p;
  }
  return v;
}

std::uint64_t encode_vector(Vector const &v, std::uint64_t p)
{
  std::uint64_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;)
    code = code * p + v[i];
  return code;
}

std::string to_string(Matrix const &m)
{
  std::string out = "[";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out += r ? ", [" : "[";
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c)
        out += ' ';
      out += std::to_string(m.at(r, c));
    }
    out += ']';
  }
  return out + "]";
}

} // namespace wsm
