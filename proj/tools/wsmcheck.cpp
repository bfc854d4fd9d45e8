#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "wsm/constructors.hpp"
#include "wsm/corpus.hpp"
#include "wsm/run.hpp"

namespace
{

constexpr int kExitConfig = 2;

void write_output(std::string const &path, std::string const &text)
{
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out)
    throw std::runtime_error("cannot write " + path);
}

void add_bounds(CLI::App *cmd, wsm::RunConfig &config)
{
  cmd->add_option("--lattice-bound", config.lattice_bound, "Largest group order for subgroup lattices")
    ->capture_default_str();
  cmd->add_option("--char-bound", config.char_bound, "Largest group order for character tables")
    ->capture_default_str();
  cmd->add_option("--index-bound", config.index_bound, "Largest index for lattice-free maximality tests")
    ->capture_default_str();
  cmd->add_option("-j,--jobs", config.jobs, "Worker threads")->capture_default_str();
}

} // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Checks weak second maximal subgroup statements over a corpus of permutation groups"};
  app.require_subcommand(1);

  wsm::RunConfig config;
  std::string corpus_path, out_path, theorems, cache_dir, group_text;

  auto *run = app.add_subcommand("run", "Run the selected checks over a corpus and write a JSON report");
  run->add_option("--corpus", corpus_path, "Line-delimited JSON corpus")->required();
  run->add_option("--theorems", theorems, "Comma-separated check ids (default: all)");
  run->add_option("--out", out_path, "Report path (default: stdout)");
  run->add_option("--cache", cache_dir, "Cache directory for lattices and character tables");
  run->add_flag("--timings", config.timings, "Include per-stage timings in the report");
  add_bounds(run, config);

  auto *show = app.add_subcommand("show", "Print one group's subgroup lattice summary and character table");
  show->add_option("group", group_text, "Constructor expression, or a group name with --corpus")->required();
  show->add_option("--corpus", corpus_path, "Corpus to look the name up in");
  add_bounds(show, config);

  auto *verify = app.add_subcommand("verify-cache", "Recompute cached results and compare them byte for byte");
  verify->add_option("--corpus", corpus_path, "Line-delimited JSON corpus")->required();
  verify->add_option("--cache", cache_dir, "Cache directory")->required();
  verify->add_option("--out", out_path, "Report path (default: stdout)");
  add_bounds(verify, config);

  auto *corpus = app.add_subcommand("default-corpus", "Write the builtin default corpus as JSONL");
  corpus->add_option("--out", out_path, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const &e) {
    return app.exit(e);
  } catch (CLI::CallForAllHelp const &e) {
    return app.exit(e);
  } catch (CLI::ParseError const &e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (!cache_dir.empty())
      config.cache_dir = cache_dir;
    config.theorems = wsm::parse_theorem_list(theorems);
    wsm::validate(config);

    if (*run) {
      auto specs = wsm::parse_corpus_file(corpus_path);
      auto outcome = wsm::run_corpus(config, specs, std::cerr);
      write_output(out_path, outcome.report.dump(2) + "\n");
      auto const &s = outcome.report["summary"];
      std::cerr << s["groups"] << " groups: " << s["pass"] << " pass, " << s["fail"] << " fail, " << s["skipped"]
                << " skipped\n";
      return wsm::exit_code(outcome);
    }

    if (*show) {
      wsm::GroupSpec spec;
      if (!corpus_path.empty()) {
        bool found = false;
        for (auto &s : wsm::parse_corpus_file(corpus_path))
          if (s.name == group_text) {
            spec = std::move(s);
            found = true;
            break;
          }
        if (!found)
          throw wsm::CorpusError("no group named '" + group_text + "' in " + corpus_path);
      } else {
        spec = wsm::parse_group_spec({{"name", group_text}, {"source", group_text}});
      }
      std::cout << wsm::describe_group(spec, config);
      return 0;
    }

    if (*verify) {
      auto specs = wsm::parse_corpus_file(corpus_path);
      auto check = wsm::verify_cache(config, specs);
      write_output(out_path, check.report.dump(2) + "\n");
      return check.all_match ? 0 : 1;
    }

    if (*corpus) {
      std::string text;
      for (auto const &entry : wsm::default_corpus_entries())
        text += entry.dump() + "\n";
      write_output(out_path, text);
      return 0;
    }
  } catch (wsm::CorpusError const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (std::exception const &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  }
  return 0;
}
