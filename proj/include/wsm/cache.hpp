#ifndef WSM_CACHE_HPP
#define WSM_CACHE_HPP

#include <filesystem>
#include <memory>
#include <mutex>
#include <string>

#include "json.hpp"

#include "wsm/character_table.hpp"
#include "wsm/group.hpp"
#include "wsm/lattice.hpp"

namespace wsm
{

std::string sha256_hex(std::string const &data);

/// Hash of the degree and the generator list in cycle notation.
std::string group_cache_key(Group const &g);

nlohmann::json lattice_to_json(SubgroupLattice const &lattice);
SubgroupLattice lattice_from_json(std::shared_ptr<const ElementTable> table, nlohmann::json const &j);

/// Full table state including eigenvalue multiplicities and the modulus.
nlohmann::json table_to_json(CharacterTable const &table);
CharacterTable table_from_json(ConjugacyClasses classes, nlohmann::json const &j);

/// One JSON file per group under `dir`, named by group_cache_key. The
/// payload holds an optional "lattice" and an optional "character_table";
/// a checksum over the payload detects damaged or edited files.
class ResultCache
{
public:
  explicit ResultCache(std::filesystem::path dir);

  enum class Status
  {
    hit,
    missing,
    corrupt,
  };

  struct Lookup
  {
    Status status = Status::missing;
    nlohmann::json payload = nlohmann::json::object();
    std::string problem;
  };

  Lookup load(Group const &g) const;
  /// Merges `field` into the stored payload; write-temp-then-rename.
  void store(Group const &g, std::string const &field, nlohmann::json value);

  std::filesystem::path entry_path(Group const &g) const;
  std::filesystem::path const &directory() const { return dir_; }

private:
  std::filesystem::path dir_;
  std::mutex mutex_;
};

} // namespace wsm

#endif // WSM_CACHE_HPP
