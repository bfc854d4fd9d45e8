#include "wsm/element_table.hpp"

#include <algorithm>
#include <numeric>

namespace wsm
{

std::size_t Bitset::count() const
{
  std::size_t n = 0;
  for (auto w : words_)
    n += static_cast<std::size_t>(__builtin_popcountll(w));
  return n;
}

bool Bitset::is_subset_of(Bitset const &other) const
{
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i])
      return false;
  return true;
}

Bitset &Bitset::operator&=(Bitset const &other)
{
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] &= other.words_[i];
  return *this;
}

Bitset &Bitset::operator|=(Bitset const &other)
{
  for (std::size_t i = 0; i < words_.size(); ++i)
    words_[i] |= other.words_[i];
  return *this;
}

bool Bitset::operator<(Bitset const &other) const
{
  for (std::size_t i = 0; i < words_.size(); ++i) {
    if (words_[i] == other.words_[i])
      continue;
    std::uint64_t diff = words_[i] ^ other.words_[i];
    std::uint64_t low = diff & (~diff + 1);
    // the set holding the lowest differing element sorts first
    return (words_[i] & low) != 0;
  }
  return false;
}

std::vector<std::uint32_t> Bitset::indices() const
{
  std::vector<std::uint32_t> out;
  for_each([&](std::size_t i) { out.push_back(static_cast<std::uint32_t>(i)); });
  return out;
}

std::uint64_t Bitset::hash() const
{
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ size_;
  for (auto w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return h;
}

std::string Bitset::to_hex() const
{
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(words_.size() * 16);
  for (auto w : words_)
    for (int shift = 60; shift >= 0; shift -= 4)
      out += digits[(w >> shift) & 15u];
  return out;
}

Bitset Bitset::from_hex(std::string const &hex, std::size_t size)
{
  Bitset b(size);
  if (hex.size() != b.words_.size() * 16)
    throw std::invalid_argument("bitset hex has wrong length");
  for (std::size_t w = 0; w < b.words_.size(); ++w) {
    std::uint64_t value = 0;
    for (std::size_t k = 0; k < 16; ++k) {
      char c = hex[w * 16 + k];
      std::uint64_t d;
      if (c >= '0' && c <= '9')
        d = static_cast<std::uint64_t>(c - '0');
      else if (c >= 'a' && c <= 'f')
        d = static_cast<std::uint64_t>(c - 'a' + 10);
      else
        throw std::invalid_argument("bad hex digit in bitset");
      value = (value << 4) | d;
    }
    b.words_[w] = value;
  }
  if (size % 64 != 0 && !b.words_.empty() && (b.words_.back() >> (size % 64)) != 0)
    throw std::invalid_argument("bitset hex has bits beyond its size");
  return b;
}

ElementTable::ElementTable(Group group, std::uint64_t bound)
: group_(std::move(group))
{
  if (bound > kElementTableHardCap)
    bound = kElementTableHardCap;
  elements_ = group_.elements(bound);
  std::sort(elements_.begin(), elements_.end());

  std::size_t n = elements_.size();
  index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i)
    index_.emplace(elements_[i], static_cast<std::uint32_t>(i));

  mul_.resize(n * n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      mul_[a * n + b] = index_.at(elements_[a] * elements_[b]);

  inv_.resize(n);
  orders_.resize(n);
  for (std::size_t a = 0; a < n; ++a) {
    inv_[a] = index_.at(elements_[a].inverse());
    orders_[a] = static_cast<std::uint32_t>(elements_[a].order());
    exponent_ = std::lcm(exponent_, static_cast<std::uint64_t>(orders_[a]));
  }

  for (auto const &g : group_.generators())
    gens_.push_back(index_.at(g));
}

std::uint32_t ElementTable::index_of(Perm const &g) const
{
  auto it = index_.find(g);
  if (it == index_.end())
    throw GroupError("element " + g.to_string() + " is not in the group");
  return it->second;
}

std::uint32_t ElementTable::pow(std::size_t a, std::uint64_t e) const
{
  std::uint32_t result = 0;
  std::uint32_t base = static_cast<std::uint32_t>(a);
  e %= orders_[a];
  while (e) {
    if (e & 1u)
      result = mul(result, base);
    base = mul(base, base);
    e >>= 1u;
  }
  return result;
}

Bitset ElementTable::generate(std::span<const std::uint32_t> gens) const
{
  Bitset h = empty_set();
  h.set(0);
  std::vector<std::uint32_t> have;
  for (auto g : gens) {
    if (h.test(g))
      continue;
    h = extend(h, have, g);
    have.push_back(g);
  }
  return h;
}

Bitset ElementTable::extend(Bitset const &h, std::span<const std::uint32_t> h_gens, std::uint32_t x) const
{
  if (h.test(x))
    return h;

  std::vector<std::uint32_t> h_elems = h.indices();
  Bitset result = h;
  std::vector<std::uint32_t> reps{0};

  auto add_coset = [&](std::uint32_t r) {
    for (auto e : h_elems)
      result.set(mul(e, r));
    reps.push_back(r);
  };

  add_coset(x);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    std::uint32_t r = reps[k];
    for (auto s : h_gens) {
      std::uint32_t y = mul(r, s);
      if (!result.test(y))
        add_coset(y);
    }
    std::uint32_t y = mul(r, x);
    if (!result.test(y))
      add_coset(y);
  }
  return result;
}

std::vector<std::uint32_t> ElementTable::small_generating_set(Bitset const &subgroup) const
{
  std::vector<std::uint32_t> gens;
  Bitset current = empty_set();
  current.set(0);
  std::size_t target = subgroup.count();
  std::size_t have = 1;
  subgroup.for_each([&](std::size_t i) {
    if (have == target || current.test(i))
      return;
    current = extend(current, gens, static_cast<std::uint32_t>(i));
    gens.push_back(static_cast<std::uint32_t>(i));
    have = current.count();
  });
  return gens;
}

std::vector<Perm> ElementTable::to_perms(std::span<const std::uint32_t> idx) const
{
  std::vector<Perm> out;
  out.reserve(idx.size());
  for (auto i : idx)
    out.push_back(elements_[i]);
  return out;
}

} // namespace wsm
