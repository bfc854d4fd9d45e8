#ifndef WSM_ELEMENT_TABLE_HPP
#define WSM_ELEMENT_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "wsm/group.hpp"

namespace wsm
{

/// Fixed-size set of element indices.
class Bitset
{
public:
  Bitset() = default;
  explicit Bitset(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }

  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }

  std::size_t count() const;
  bool is_subset_of(Bitset const &other) const;

  Bitset &operator&=(Bitset const &other);
  Bitset &operator|=(Bitset const &other);

  bool operator==(Bitset const &other) const = default;
  /// Lexicographic by lowest differing element index.
  bool operator<(Bitset const &other) const;

  template<typename F>
  void for_each(F &&f) const
  {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }

  std::vector<std::uint32_t> indices() const;

  std::uint64_t hash() const;

  std::string to_hex() const;
  static Bitset from_hex(std::string const &hex, std::size_t size);

  std::span<const std::uint64_t> words() const { return words_; }

private:
  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

struct BitsetHash
{
  std::size_t operator()(Bitset const &b) const { return static_cast<std::size_t>(b.hash()); }
};

inline constexpr std::uint64_t kElementTableHardCap = 2000;

/// All elements of a small group, indexed in lexicographic order of their
/// image arrays (so the identity is element 0), with a full
/// multiplication table.
class ElementTable
{
public:
  explicit ElementTable(Group group, std::uint64_t bound = kElementTableHardCap);

  Group const &group() const { return group_; }
  std::size_t size() const { return elements_.size(); }

  Perm const &element(std::size_t i) const { return elements_[i]; }
  std::vector<Perm> const &elements() const { return elements_; }

  /// Throws GroupError if g is not an element.
  std::uint32_t index_of(Perm const &g) const;
  bool has(Perm const &g) const { return index_.count(g) != 0; }

  std::uint32_t mul(std::size_t a, std::size_t b) const { return mul_[a * elements_.size() + b]; }
  std::uint32_t inv(std::size_t a) const { return inv_[a]; }
  /// b^-1 a b
  std::uint32_t conj(std::size_t a, std::size_t b) const { return mul(mul(inv_[b], a), b); }
  std::uint32_t pow(std::size_t a, std::uint64_t e) const;
  std::uint32_t element_order(std::size_t a) const { return orders_[a]; }
  std::uint64_t exponent() const { return exponent_; }

  /// Indices of the group's generators.
  std::vector<std::uint32_t> const &generator_indices() const { return gens_; }

  Bitset empty_set() const { return Bitset(size()); }

  /// Subgroup generated by the given elements.
  Bitset generate(std::span<const std::uint32_t> gens) const;

  /// <H, x> for a subgroup H (as element set and generators), by Dimino's
  /// coset extension.
  Bitset extend(Bitset const &h, std::span<const std::uint32_t> h_gens, std::uint32_t x) const;

  /// Greedy generating set: walk elements by index, keep any not yet generated.
  std::vector<std::uint32_t> small_generating_set(Bitset const &subgroup) const;

  std::vector<Perm> to_perms(std::span<const std::uint32_t> idx) const;

private:
  Group group_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, std::uint32_t, PermHash> index_;
  std::vector<std::uint32_t> mul_;
  std::vector<std::uint32_t> inv_;
  std::vector<std::uint32_t> orders_;
  std::vector<std::uint32_t> gens_;
  std::uint64_t exponent_ = 1;
};

} // namespace wsm

#endif // WSM_ELEMENT_TABLE_HPP
