#ifndef WSM_RUN_HPP
#define WSM_RUN_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "wsm/corpus.hpp"
#include "wsm/group.hpp"
#include "wsm/lattice.hpp"

namespace wsm
{

struct RunConfig
{
  std::uint64_t lattice_bound = kDefaultLatticeBound;
  std::uint64_t char_bound = 2000;
  std::uint64_t index_bound = kDefaultIndexBound;
  std::size_t jobs = 1;
  std::vector<std::string> theorems;  // empty selects every check
  std::optional<std::filesystem::path> cache_dir;
  bool timings = false;
};

/// Throws CorpusError on bad bounds or unknown theorem ids.
void validate(RunConfig const &config);
std::vector<std::string> parse_theorem_list(std::string const &csv);

struct RunOutcome
{
  nlohmann::json report;
  bool any_fail = false;
};

/// Evaluates every group (one per worker) and aggregates the report in
/// corpus order. Warnings go to `log`.
RunOutcome run_corpus(RunConfig const &config, std::vector<GroupSpec> const &corpus, std::ostream &log);

/// Exit code for a finished run: 1 if anything failed, else 0.
int exit_code(RunOutcome const &outcome);

struct CacheCheck
{
  nlohmann::json report;
  bool all_match = true;
};

/// Recomputes lattice and character table for each group and compares them
/// byte for byte with the cached serialization.
CacheCheck verify_cache(RunConfig const &config, std::vector<GroupSpec> const &corpus);

/// Human-readable summary of one group's lattice and character table.
std::string describe_group(GroupSpec const &spec, RunConfig const &config);

} // namespace wsm

#endif // WSM_RUN_HPP
