#ifndef WSM_CORPUS_HPP
#define WSM_CORPUS_HPP

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "wsm/group.hpp"

namespace wsm
{

/// Ingestion or configuration problem; maps to exit code 2.
class CorpusError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

/// One corpus line: a constructor expression or explicit cycle-notation
/// generators, validated by building the group.
struct GroupSpec
{
  std::string name;
  std::string source;                   // empty when generators are explicit
  std::vector<std::string> generators;  // cycle notation, 1-based
  std::optional<std::uint64_t> expected_order;
  std::size_t line = 0;
  Group group = Group::trivial(1);
};

/// One JSON object per line; blank lines are ignored. Errors carry the line
/// number.
std::vector<GroupSpec> parse_corpus(std::istream &in);
std::vector<GroupSpec> parse_corpus_file(std::filesystem::path const &path);

/// Builds a single spec from a JSON object (used by the parser and by `show`).
GroupSpec parse_group_spec(nlohmann::json const &object, std::size_t line = 0);

/// Constructor expressions of the shipped default corpus, in order.
std::vector<nlohmann::json> default_corpus_entries();

} // namespace wsm

#endif // WSM_CORPUS_HPP
