#ifndef WSM_CHARACTER_TABLE_HPP
#define WSM_CHARACTER_TABLE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "wsm/cyclotomic.hpp"
#include "wsm/element_table.hpp"
#include "wsm/group.hpp"

namespace wsm
{

inline constexpr std::uint64_t kDefaultCharacterBound = 2000;

/// Conjugacy classes ordered by: identity first, then ascending element
/// order, ties broken by the smallest element index in the class.
class ConjugacyClasses
{
public:
  /// Throws BoundExceeded if |G| exceeds bound.
  static ConjugacyClasses compute(std::shared_ptr<const ElementTable> table,
                                  std::uint64_t bound = kDefaultCharacterBound);

  ElementTable const &table() const { return *table_; }
  std::shared_ptr<const ElementTable> const &table_ptr() const { return table_; }

  std::size_t size() const { return members_.size(); }
  std::uint32_t representative(std::size_t k) const { return members_[k].front(); }
  std::vector<std::uint32_t> const &members(std::size_t k) const { return members_[k]; }
  std::uint64_t class_size(std::size_t k) const { return members_[k].size(); }
  std::uint32_t element_order(std::size_t k) const { return table_->element_order(representative(k)); }
  std::size_t class_of(std::uint32_t element) const { return class_of_[element]; }
  std::size_t inverse_class(std::size_t k) const { return inverse_[k]; }
  /// Class of g^e for g in class k.
  std::size_t power_class(std::size_t k, std::uint64_t e) const;

private:
  std::shared_ptr<const ElementTable> table_;
  std::vector<std::vector<std::uint32_t>> members_;  // sorted; front() is the representative
  std::vector<std::size_t> class_of_;
  std::vector<std::size_t> inverse_;
};

/// One irreducible character. Each value is kept twice: as the eigenvalue
/// multiplicities of rho(g) over the class's element order, which makes
/// exact sums cheap, and as a canonical cyclotomic integer.
struct Character
{
  std::int64_t degree = 1;
  std::vector<CyclotomicInteger> values;
  /// Per class: sparse (exponent t, multiplicity of zeta_o^t) pairs, with o
  /// the element order of the class.
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> multiplicities;
};

class CharacterTable
{
public:
  ConjugacyClasses const &classes() const { return classes_; }
  std::vector<Character> const &characters() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  CyclotomicInteger const &value(std::size_t row, std::size_t cls) const { return rows_[row].values[cls]; }
  std::vector<std::int64_t> degrees() const;
  /// The prime used for the modular computation.
  std::uint64_t modulus() const { return modulus_; }

  static CharacterTable from_rows(ConjugacyClasses classes, std::vector<Character> rows, std::uint64_t modulus);

private:
  ConjugacyClasses classes_;
  std::vector<Character> rows_;
  std::uint64_t modulus_ = 0;
};

class CharacterTableError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// Smallest prime l = 1 mod exponent with l > 2 sqrt(order).
std::uint64_t dixon_prime(std::uint64_t exponent, std::uint64_t order);

/// Dixon-Schneider: common eigenvectors of the class multiplication
/// matrices over GF(l), lifted to cyclotomic integers through eigenvalue
/// multiplicities. Rows: trivial first, then by degree, then by values.
CharacterTable character_table(ConjugacyClasses const &classes);

/// Exact first orthogonality relation; returns the first failing pair.
std::optional<std::pair<std::size_t, std::size_t>> row_orthogonality_failure(CharacterTable const &t);
/// Exact second orthogonality relation; returns the first failing pair of classes.
std::optional<std::pair<std::size_t, std::size_t>> column_orthogonality_failure(CharacterTable const &t);

/// Classes on which no irreducible character vanishes.
std::vector<std::size_t> nonvanishing_classes(CharacterTable const &t);

nlohmann::json to_json(CharacterTable const &t);

} // namespace wsm

#endif // WSM_CHARACTER_TABLE_HPP
