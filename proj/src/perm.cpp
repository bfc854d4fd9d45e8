#include "wsm/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstring>
#include <numeric>

namespace wsm
{

Perm::Perm(std::size_t degree)
{
  if (degree > kMaxDegree)
    throw PermError("permutation degree " + std::to_string(degree) + " exceeds cap of " +
                    std::to_string(kMaxDegree));

  degree_ = static_cast<std::uint16_t>(degree);
  for (std::size_t i = 0; i < degree; ++i)
    images_[i] = static_cast<std::uint8_t>(i);
}

Perm Perm::from_images(std::span<const std::size_t> images)
{
  Perm p(images.size());
  std::vector<bool> seen(images.size(), false);
  for (std::size_t i = 0; i < images.size(); ++i) {
    std::size_t img = images[i];
    if (img >= images.size() || seen[img])
      throw PermError("image array is not a bijection");
    seen[img] = true;
    p.images_[i] = static_cast<std::uint8_t>(img);
  }
  return p;
}

Perm Perm::parse(std::string_view text, std::size_t degree)
{
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t max_point = 0;
  std::size_t pos = 0;

  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };

  skip_ws();
  while (pos < text.size()) {
    if (text[pos] != '(')
      throw PermError("expected '(' in cycle string \"" + std::string(text) + "\"");
    ++pos;

    std::vector<std::size_t> cycle;
    for (;;) {
      skip_ws();
      if (pos >= text.size())
        throw PermError("unterminated cycle in \"" + std::string(text) + "\"");
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] == ',') {
        ++pos;
        continue;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[pos])))
        throw PermError("unexpected character in \"" + std::string(text) + "\"");

      std::size_t value = 0;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + static_cast<std::size_t>(text[pos] - '0');
        if (value > kMaxDegree)
          throw PermError("point out of range in \"" + std::string(text) + "\"");
        ++pos;
      }
      if (value == 0)
        throw PermError("points are 1-based in cycle notation");
      cycle.push_back(value - 1);
      max_point = std::max(max_point, value);
    }
    cycles.push_back(std::move(cycle));
    skip_ws();
  }

  Perm p(std::max(degree, max_point));
  std::vector<bool> touched(p.degree(), false);
  for (auto const &cycle : cycles) {
    for (std::size_t i = 0; i < cycle.size(); ++i) {
      if (touched[cycle[i]])
        throw PermError("point repeated in \"" + std::string(text) + "\"");
      touched[cycle[i]] = true;
      p.images_[cycle[i]] = static_cast<std::uint8_t>(cycle[(i + 1) % cycle.size()]);
    }
  }
  return p;
}

Perm Perm::operator*(Perm const &other) const
{
  if (degree_ != other.degree_)
    throw PermError("degree mismatch in product");

  Perm r;
  r.degree_ = degree_;
  for (std::size_t i = 0; i < degree_; ++i)
    r.images_[i] = other.images_[images_[i]];
  return r;
}

Perm Perm::inverse() const
{
  Perm r;
  r.degree_ = degree_;
  for (std::size_t i = 0; i < degree_; ++i)
    r.images_[images_[i]] = static_cast<std::uint8_t>(i);
  return r;
}

Perm Perm::pow(long long e) const
{
  Perm base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  Perm result(degree_);
  while (n) {
    if (n & 1u)
      result *= base;
    base *= base;
    n >>= 1u;
  }
  return result;
}

bool Perm::is_identity() const
{
  for (std::size_t i = 0; i < degree_; ++i)
    if (images_[i] != i)
      return false;
  return true;
}

std::uint64_t Perm::order() const
{
  std::vector<bool> seen(degree_, false);
  std::uint64_t ord = 1;
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i])
      continue;
    std::uint64_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return ord;
}

bool Perm::is_even() const
{
  std::vector<bool> seen(degree_, false);
  std::size_t transpositions = 0;
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i])
      continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      ++len;
    }
    transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

std::size_t Perm::first_moved_point() const
{
  for (std::size_t i = 0; i < degree_; ++i)
    if (images_[i] != i)
      return i;
  return degree_;
}

Perm Perm::extended(std::size_t degree) const
{
  if (degree < degree_)
    throw PermError("cannot shrink a permutation");
  Perm r(degree);
  std::memcpy(r.images_.data(), images_.data(), degree_);
  return r;
}

Perm Perm::shifted(std::size_t offset, std::size_t total) const
{
  if (offset + degree_ > total)
    throw PermError("shifted permutation does not fit");
  Perm r(total);
  for (std::size_t i = 0; i < degree_; ++i)
    r.images_[offset + i] = static_cast<std::uint8_t>(offset + images_[i]);
  return r;
}

std::string Perm::to_string() const
{
  std::string out;
  std::vector<bool> seen(degree_, false);
  for (std::size_t i = 0; i < degree_; ++i) {
    if (seen[i] || images_[i] == i)
      continue;
    out += '(';
    bool first = true;
    for (std::size_t j = i; !seen[j]; j = images_[j]) {
      seen[j] = true;
      if (!first)
        out += ',';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

std::uint64_t Perm::hash() const
{
  // FNV-1a; stable across runs and platforms.
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto mix = [&h](std::uint8_t byte) {
    h ^= byte;
    h *= 0x100000001b3ull;
  };
  mix(static_cast<std::uint8_t>(degree_));
  for (std::size_t i = 0; i < degree_; ++i)
    mix(images_[i]);
  return h;
}

bool Perm::operator==(Perm const &other) const
{
  return degree_ == other.degree_ && std::memcmp(images_.data(), other.images_.data(), degree_) == 0;
}

std::strong_ordering Perm::operator<=>(Perm const &other) const
{
  if (degree_ != other.degree_)
    return degree_ <=> other.degree_;
  int c = std::memcmp(images_.data(), other.images_.data(), degree_);
  if (c < 0)
    return std::strong_ordering::less;
  if (c > 0)
    return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Perm conjugate(Perm const &h, Perm const &g)
{
  return g.inverse() * h * g;
}

Perm commutator(Perm const &a, Perm const &b)
{
  return a.inverse() * b.inverse() * a * b;
}

std::string to_cycle_string(std::span<const Perm> perms)
{
  std::string out = "[";
  for (std::size_t i = 0; i < perms.size(); ++i) {
    if (i)
      out += ", ";
    out += perms[i].to_string();
  }
  return out + "]";
}

} // namespace wsm
