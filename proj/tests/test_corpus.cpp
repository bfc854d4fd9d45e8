#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include "wsm/cache.hpp"
#include "wsm/corpus.hpp"
#include "wsm/run.hpp"

using namespace wsm;
namespace fs = std::filesystem;

namespace
{

std::vector<GroupSpec> corpus_from(std::string const &text)
{
  std::istringstream in(text);
  return parse_corpus(in);
}

std::string error_of(std::string const &text)
{
  try {
    corpus_from(text);
  } catch (CorpusError const &e) {
    return e.what();
  }
  return "";
}

struct TempDir
{
  TempDir()
  {
    std::random_device rd;
    path = fs::temp_directory_path() / ("wsm-test-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path path;
};

std::string const small_corpus = R"jsonl({"name": "S3", "source": "sym(3)", "expected_order": 6}
{"name": "S4", "source": "sym(4)"}

{"name": "V", "generators": ["(1,2)(3,4)", "(1,3)(2,4)"], "degree": 4}
{"name": "AGL1_9", "source": "agl1(9)"}
)jsonl";

} // namespace

TEST_CASE("corpus parsing")
{
  auto specs = corpus_from(small_corpus);
  REQUIRE(specs.size() == 4);
  CHECK(specs[0].name == "S3");
  CHECK(specs[0].group.order() == 6);
  CHECK(specs[2].line == 4);
  CHECK(specs[2].source.empty());
  CHECK(specs[2].group.order() == 4);
  CHECK(specs[3].group.order() == 72);
}

TEST_CASE("corpus errors name the line")
{
  CHECK(error_of("{\"name\": \"a\", \"source\": \"sym(3)\"}\nnot json\n").find("line 2") != std::string::npos);
  CHECK(error_of("{\"name\": \"a\", \"source\": \"sym(3)\"}\n{\"name\": \"a\", \"source\": \"sym(4)\"}\n")
          .find("line 2") != std::string::npos);
  CHECK(error_of("{\"name\": \"a\", \"source\": \"sym(3)\", \"expected_order\": 7}\n").find("line 1") !=
        std::string::npos);
  CHECK(!error_of("{\"name\": \"a\"}\n").empty());
  CHECK(!error_of("{\"name\": \"a\", \"source\": \"sym(3)\", \"generators\": [\"(1,2)\"]}\n").empty());
  CHECK(!error_of("{\"name\": \"a\", \"generators\": [\"(1,2\"]}\n").empty());
  CHECK(!error_of("{\"name\": \"a\", \"source\": \"nope(3)\"}\n").empty());
  CHECK(!error_of("{\"source\": \"sym(3)\"}\n").empty());
  CHECK_THROWS_AS(parse_corpus_file("/nonexistent/corpus.jsonl"), CorpusError);
}

TEST_CASE("default corpus")
{
  auto entries = default_corpus_entries();
  std::set<std::string> names;
  std::set<std::string> sources;
  std::size_t large = 0;
  for (auto const &e : entries) {
    auto spec = parse_group_spec(e);
    names.insert(spec.name);
    sources.insert(spec.source);
    if (spec.group.order() > 200)
      ++large;
  }
  CHECK(names.size() == entries.size());
  CHECK(large == 1);
  CHECK(entries.size() >= 300);
  for (char const *required : {"sym(4)", "agl1(9)", "alt(5)", "sym(5)", "quaternion(8)", "direct(alt(7),alt(7))"})
    CHECK(sources.count(required) == 1);
  for (std::uint64_t n = 1; n <= 200; ++n)
    CHECK(sources.count("cyclic(" + std::to_string(n) + ")") == 1);
}

TEST_CASE("config validation")
{
  RunConfig c;
  c.theorems = {"B", "nope"};
  CHECK_THROWS_AS(validate(c), CorpusError);
  CHECK(parse_theorem_list("A,B, C") == std::vector<std::string>{"A", "B", "C"});
  RunConfig zero;
  zero.jobs = 0;
  CHECK_THROWS_AS(validate(zero), CorpusError);
}

TEST_CASE("runs are deterministic and independent of the worker count")
{
  auto specs = corpus_from(small_corpus);
  std::ostringstream log;
  RunConfig one;
  RunConfig four;
  four.jobs = 4;
  auto a = run_corpus(one, specs, log);
  auto b = run_corpus(four, specs, log);
  CHECK(a.report.dump() == b.report.dump());
  CHECK(!a.any_fail);
  CHECK(exit_code(a) == 0);
  CHECK(a.report["summary"]["groups"] == 4);
  CHECK(a.report["groups"][1]["name"] == "S4");
  CHECK(a.report["corpus_checks"]["remark_supersolvable"]["verdict"] == "pass");
}

TEST_CASE("cache round trip, reuse and tamper detection")
{
  TempDir dir;
  auto specs = corpus_from(small_corpus);
  RunConfig config;
  config.cache_dir = dir.path;
  std::ostringstream log;
  auto fresh = run_corpus(config, specs, log);
  auto cached = run_corpus(config, specs, log);
  CHECK(fresh.report.dump() == cached.report.dump());

  auto check = verify_cache(config, specs);
  CHECK(check.all_match);

  // lattice and table survive serialization
  auto table = std::make_shared<const ElementTable>(specs[1].group);
  auto lattice = SubgroupLattice::enumerate(table, 2000);
  auto back = lattice_from_json(table, lattice_to_json(lattice));
  CHECK(lattice_to_json(back).dump() == lattice_to_json(lattice).dump());
  auto chars = character_table(ConjugacyClasses::compute(table));
  auto chars_back = table_from_json(ConjugacyClasses::compute(table), table_to_json(chars));
  CHECK(table_to_json(chars_back).dump() == table_to_json(chars).dump());

  // edit one stored value without fixing the checksum
  ResultCache cache(dir.path);
  fs::path entry = cache.entry_path(specs[1].group);
  nlohmann::json j;
  {
    std::ifstream in(entry);
    j = nlohmann::json::parse(in);
  }
  j["payload"]["lattice"]["nodes"][1]["order"] = 3;
  {
    std::ofstream out(entry);
    out << j.dump();
  }
  CHECK(cache.load(specs[1].group).status == ResultCache::Status::corrupt);
  auto verify = verify_cache(config, specs);
  CHECK(!verify.all_match);
  CHECK(verify.report["groups"][1]["status"] == "corrupt");

  std::ostringstream warnings;
  auto recomputed = run_corpus(config, specs, warnings);
  CHECK(recomputed.report.dump() == fresh.report.dump());
  CHECK(warnings.str().find("S4") != std::string::npos);
  CHECK(verify_cache(config, specs).all_match);

  {
    std::ofstream out(entry);
    out << "{ not json";
  }
  CHECK(cache.load(specs[1].group).status == ResultCache::Status::corrupt);
  fs::remove(entry);
  CHECK(cache.load(specs[1].group).status == ResultCache::Status::missing);
  CHECK(group_cache_key(specs[0].group) != group_cache_key(specs[1].group));
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
