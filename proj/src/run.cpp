#include "wsm/run.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <mutex>
#include <regex>
#include <set>
#include <sstream>
#include <thread>

#include "wsm/cache.hpp"
#include "wsm/character_table.hpp"
#include "wsm/verifiers.hpp"

namespace wsm
{

namespace
{

bool needs_lattice(std::string const &id)
{
  return id != "remark_nonsolvable";
}

std::string strip_spaces(std::string s)
{
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  return s;
}

// p for sources of the form direct(alt(p),alt(p)).
std::optional<std::uint64_t> alt_square_degree(std::string const &source)
{
  static const std::regex pattern(R"(direct\(alt\((\d+)\),alt\((\d+)\)\))");
  std::smatch m;
  std::string s = strip_spaces(source);
  if (!std::regex_match(s, m, pattern) || m[1] != m[2])
    return std::nullopt;
  return std::stoull(m[1]);
}

VerificationReport skip(std::string theorem, std::string reason)
{
  VerificationReport r;
  r.theorem = std::move(theorem);
  r.verdict = Verdict::skipped;
  r.reason = std::move(reason);
  return r;
}

class Stopwatch
{
public:
  double seconds() const
  {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

class Logger
{
public:
  explicit Logger(std::ostream &out)
  : out_(out)
  {
  }

  void warn(std::string const &message)
  {
    std::lock_guard lock(mutex_);
    out_ << "warning: " << message << "\n";
  }

private:
  std::ostream &out_;
  std::mutex mutex_;
};

// Lazily computed per-group data shared by the checks.
class GroupWork
{
public:
  GroupWork(GroupSpec const &spec, RunConfig const &config, ResultCache *cache, Logger &log)
  : spec_(spec)
  , config_(config)
  , cache_(cache)
  , log_(log)
  {
    if (cache_) {
      cached_ = cache_->load(spec_.group);
      if (cached_.status == ResultCache::Status::corrupt) {
        log_.warn("discarding cache entry for " + spec_.name + " (" + cached_.problem + "); recomputing");
        cached_.payload = nlohmann::json::object();
      }
    }
  }

  std::uint64_t lattice_limit() const { return std::min<std::uint64_t>(config_.lattice_bound, kLatticeHardCap); }
  bool lattice_available() const { return spec_.group.order() <= lattice_limit(); }
  bool table_available() const { return spec_.group.order() <= config_.char_bound; }

  std::shared_ptr<const ElementTable> element_table()
  {
    if (!elements_)
      elements_ = std::make_shared<const ElementTable>(spec_.group);
    return elements_;
  }

  SubgroupLattice const &lattice()
  {
    if (lattice_)
      return *lattice_;
    Stopwatch clock;
    auto table = element_table();
    bool from_cache = false;
    if (cached_.payload.contains("lattice")) {
      try {
        lattice_ = std::make_shared<const SubgroupLattice>(lattice_from_json(table, cached_.payload["lattice"]));
        from_cache = true;
      } catch (std::exception const &e) {
        log_.warn("discarding cached lattice for " + spec_.name + " (" + e.what() + "); recomputing");
      }
    }
    if (!lattice_) {
      lattice_ = std::make_shared<const SubgroupLattice>(SubgroupLattice::enumerate(table, lattice_limit()));
      if (cache_)
        cache_->store(spec_.group, "lattice", lattice_to_json(*lattice_));
    }
    timings_["lattice"] = {{"seconds", clock.seconds()}, {"cached", from_cache}};
    return *lattice_;
  }

  CharacterTable const &characters()
  {
    if (chars_)
      return *chars_;
    Stopwatch clock;
    auto classes = ConjugacyClasses::compute(element_table(), config_.char_bound);
    bool from_cache = false;
    if (cached_.payload.contains("character_table")) {
      try {
        chars_ = table_from_json(classes, cached_.payload["character_table"]);
        from_cache = true;
      } catch (std::exception const &e) {
        log_.warn("discarding cached character table for " + spec_.name + " (" + e.what() + "); recomputing");
      }
    }
    if (!chars_) {
      chars_ = character_table(classes);
      if (cache_)
        cache_->store(spec_.group, "character_table", table_to_json(*chars_));
    }
    timings_["character_table"] = {{"seconds", clock.seconds()}, {"cached", from_cache}};
    return *chars_;
  }

  std::vector<ChiefModule> const &modules()
  {
    if (!modules_) {
      Stopwatch clock;
      auto const &l = lattice();
      modules_ = chief_factor_modules(l, chief_series(l));
      timings_["chief_modules"] = {{"seconds", clock.seconds()}};
    }
    return *modules_;
  }

  VerificationReport check(std::string const &id)
  {
    if (id == "remark_nonsolvable") {
      auto p = alt_square_degree(spec_.source);
      if (!p)
        return skip(id, "applies only to direct(alt(p),alt(p))");
      return build_nonsolvable_counterexample(*p, config_.index_bound);
    }
    if (id == "remark_order72" && strip_spaces(spec_.source) != "agl1(9)")
      return skip(id, "applies only to agl1(9)");
    if (needs_lattice(id) && !lattice_available())
      return skip(id, "|G| = " + std::to_string(spec_.group.order()) + " exceeds the lattice bound " +
                          std::to_string(lattice_limit()));

    SubgroupLattice const &l = lattice();
    if (id == "A") {
      if (!is_solvable(spec_.group))
        return skip(id, "group is not solvable");
      if (!table_available())
        return skip(id, "|G| = " + std::to_string(spec_.group.order()) + " exceeds the character bound " +
                            std::to_string(config_.char_bound));
      return verify_theorem_A(l, characters());
    }
    if (id == "B")
      return verify_theorem_B(l);
    if (id == "C")
      return verify_theorem_C(l);
    if (id == "key_lemma")
      return verify_key_lemma(l);
    if (id == "lemma_3_1")
      return verify_lemma_3_1(l, modules());
    if (id == "lemma_4_1")
      return verify_lemma_4_1(l, modules());
    if (id == "lemma_4_3")
      return verify_lemma_4_3(l, modules());
    if (id == "remark_supersolvable")
      return verify_remark_supersolvable(l);
    if (id == "remark_order72")
      return verify_remark_order72(l);
    throw CorpusError("unknown check '" + id + "'");
  }

  nlohmann::json evaluate(std::vector<std::string> const &ids, bool with_timings)
  {
    nlohmann::json verdicts = nlohmann::json::array();
    nlohmann::json witnesses = nlohmann::json::array();
    for (auto const &id : ids) {
      Stopwatch clock;
      VerificationReport r;
      try {
        r = check(id);
      } catch (CorpusError const &) {
        throw;
      } catch (std::exception const &e) {
        r = skip(id, std::string("not decided: ") + e.what());
      }
      timings_[id] = {{"seconds", clock.seconds()}};
      for (auto const &w : r.witnesses)
        witnesses.push_back({{"theorem", r.theorem}, {"witness", w}});
      nlohmann::json v = to_json(r);
      v.erase("witnesses");
      verdicts.push_back(std::move(v));
    }

    nlohmann::json out = {{"name", spec_.name}, {"order", spec_.group.order()}, {"degree", spec_.group.degree()}};
    if (!spec_.source.empty())
      out["source"] = spec_.source;
    else
      out["generators"] = spec_.generators;
    out["verdicts"] = std::move(verdicts);
    out["witnesses"] = std::move(witnesses);
    if (with_timings)
      out["timings"] = timings_;
    return out;
  }

private:
  GroupSpec const &spec_;
  RunConfig const &config_;
  ResultCache *cache_;
  Logger &log_;
  ResultCache::Lookup cached_;
  std::shared_ptr<const ElementTable> elements_;
  std::shared_ptr<const SubgroupLattice> lattice_;
  std::optional<CharacterTable> chars_;
  std::optional<std::vector<ChiefModule>> modules_;
  nlohmann::json timings_ = nlohmann::json::object();
};

std::vector<std::string> selected_ids(RunConfig const &config)
{
  if (config.theorems.empty())
    return all_theorem_ids();
  std::vector<std::string> out;
  for (auto const &id : all_theorem_ids())
    if (std::find(config.theorems.begin(), config.theorems.end(), id) != config.theorems.end())
      out.push_back(id);
  return out;
}

template<typename F>
void for_each_parallel(std::size_t count, std::size_t jobs, F &&work)
{
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++)
      work(i);
  };
  jobs = std::max<std::size_t>(1, std::min(jobs, count));
  if (jobs == 1) {
    worker();
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t j = 0; j < jobs; ++j)
    pool.emplace_back(worker);
}

nlohmann::json config_json(RunConfig const &config, std::vector<std::string> const &ids)
{
  return {{"lattice_bound", config.lattice_bound},
          {"char_bound", config.char_bound},
          {"index_bound", config.index_bound},
          {"theorems", ids},
          {"timings", config.timings}};
}

nlohmann::json corpus_checks(nlohmann::json const &groups, std::vector<std::string> const &ids, Logger &log)
{
  nlohmann::json checks = nlohmann::json::object();
  auto find = [](nlohmann::json const &group, std::string const &id) -> nlohmann::json const * {
    for (auto const &v : group["verdicts"])
      if (v["theorem"] == id)
        return &v;
    return nullptr;
  };

  if (std::find(ids.begin(), ids.end(), "remark_supersolvable") != ids.end()) {
    nlohmann::json wsm_only = nlohmann::json::array();
    nlohmann::json ss_not_wsm = nlohmann::json::array();
    std::size_t evaluated = 0;
    for (auto const &g : groups) {
      auto const *v = find(g, "remark_supersolvable");
      if (!v || (*v)["verdict"] == "skipped")
        continue;
      ++evaluated;
      bool ss = (*v)["details"]["supersolvable"], wsm = (*v)["details"]["wsm"];
      if (wsm && !ss)
        wsm_only.push_back(g["name"]);
      if (ss && !wsm)
        ss_not_wsm.push_back(g["name"]);
    }
    nlohmann::json c = {{"groups_evaluated", evaluated},
                        {"wsm_not_supersolvable", wsm_only},
                        {"supersolvable_not_wsm", ss_not_wsm}};
    if (!ss_not_wsm.empty()) {
      c["verdict"] = "fail";
    } else if (wsm_only.empty()) {
      c["verdict"] = "skipped";
      c["reason"] = "no corpus group is WSM without being supersolvable";
    } else {
      c["verdict"] = "pass";
    }
    checks["remark_supersolvable"] = c;
  }

  if (std::find(ids.begin(), ids.end(), "A") != ids.end()) {
    nlohmann::json holds = nlohmann::json::array();
    nlohmann::json broken = nlohmann::json::array();
    for (auto const &g : groups) {
      auto const *v = find(g, "A");
      if (!v || !(*v)["details"].contains("nonvanishing_in_fitting"))
        continue;
      ((*v)["details"]["nonvanishing_in_fitting"].get<bool>() ? holds : broken).push_back(g["name"]);
    }
    for (auto const &name : broken)
      log.warn("non-vanishing element outside F(G) in solvable non-WSM group " + name.get<std::string>() +
               ": possible counterexample to the non-vanishing conjecture");
    checks["nonvanishing_outside_wsm"] = {{"groups_observed", holds.size() + broken.size()},
                                          {"outside_fitting", broken}};
  }
  return checks;
}

} // namespace

std::vector<std::string> parse_theorem_list(std::string const &csv)
{
  std::vector<std::string> out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = strip_spaces(item);
    if (item.empty())
      continue;
    if (std::find(all_theorem_ids().begin(), all_theorem_ids().end(), item) == all_theorem_ids().end())
      throw CorpusError("unknown theorem id '" + item + "'");
    out.push_back(item);
  }
  return out;
}

void validate(RunConfig const &config)
{
  if (config.lattice_bound == 0 || config.char_bound == 0 || config.index_bound == 0)
    throw CorpusError("bounds must be positive");
  if (config.jobs == 0)
    throw CorpusError("--jobs must be positive");
  for (auto const &id : config.theorems)
    if (std::find(all_theorem_ids().begin(), all_theorem_ids().end(), id) == all_theorem_ids().end())
      throw CorpusError("unknown theorem id '" + id + "'");
}

RunOutcome run_corpus(RunConfig const &config, std::vector<GroupSpec> const &corpus, std::ostream &log_stream)
{
  validate(config);
  Logger log(log_stream);
  std::optional<ResultCache> cache;
  if (config.cache_dir)
    cache.emplace(*config.cache_dir);
  auto ids = selected_ids(config);

  std::vector<nlohmann::json> results(corpus.size());
  for_each_parallel(corpus.size(), config.jobs, [&](std::size_t i) {
    GroupWork work(corpus[i], config, cache ? &*cache : nullptr, log);
    results[i] = work.evaluate(ids, config.timings);
  });

  RunOutcome outcome;
  nlohmann::json groups = nlohmann::json::array();
  std::map<std::string, std::map<std::string, std::size_t>> counts;
  for (auto const &id : ids)
    counts[id] = {{"pass", 0}, {"fail", 0}, {"skipped", 0}};
  for (auto &r : results) {
    for (auto const &v : r["verdicts"]) {
      std::string verdict = v["verdict"];
      ++counts[v["theorem"].get<std::string>()][verdict];
      outcome.any_fail = outcome.any_fail || verdict == "fail";
    }
    groups.push_back(std::move(r));
  }

  nlohmann::json by_theorem = nlohmann::json::object();
  std::size_t pass = 0, fail = 0, skipped = 0;
  for (auto const &id : ids) {
    by_theorem[id] = counts[id];
    pass += counts[id]["pass"];
    fail += counts[id]["fail"];
    skipped += counts[id]["skipped"];
  }
  nlohmann::json checks = corpus_checks(groups, ids, log);
  for (auto const &[name, c] : checks.items())
    if (c.contains("verdict") && c["verdict"] == "fail")
      outcome.any_fail = true;

  outcome.report = {{"config", config_json(config, ids)},
                    {"groups", std::move(groups)},
                    {"summary",
                     {{"groups", corpus.size()},
                      {"pass", pass},
                      {"fail", fail},
                      {"skipped", skipped},
                      {"by_theorem", by_theorem}}},
                    {"corpus_checks", checks}};
  return outcome;
}

int exit_code(RunOutcome const &outcome)
{
  return outcome.any_fail ? 1 : 0;
}

CacheCheck verify_cache(RunConfig const &config, std::vector<GroupSpec> const &corpus)
{
  validate(config);
  if (!config.cache_dir)
    throw CorpusError("verify-cache needs --cache");
  ResultCache cache(*config.cache_dir);
  std::uint64_t lattice_limit = std::min<std::uint64_t>(config.lattice_bound, kLatticeHardCap);

  std::vector<nlohmann::json> rows(corpus.size());
  for_each_parallel(corpus.size(), config.jobs, [&](std::size_t i) {
    GroupSpec const &spec = corpus[i];
    nlohmann::json row = {{"name", spec.name}};
    auto lookup = cache.load(spec.group);
    if (lookup.status != ResultCache::Status::hit) {
      row["status"] = lookup.status == ResultCache::Status::missing ? "missing" : "corrupt";
      if (!lookup.problem.empty())
        row["problem"] = lookup.problem;
      rows[i] = std::move(row);
      return;
    }
    std::uint64_t order = spec.group.order();
    std::shared_ptr<const ElementTable> table;
    if (order <= lattice_limit || order <= config.char_bound)
      table = std::make_shared<const ElementTable>(spec.group);
    nlohmann::json fields = nlohmann::json::object();
    bool match = true;
    auto compare = [&](std::string const &field, auto &&fresh) {
      if (!lookup.payload.contains(field)) {
        fields[field] = "absent";
        return;
      }
      bool same = lookup.payload[field].dump() == fresh().dump();
      fields[field] = same ? "match" : "mismatch";
      match = match && same;
    };
    if (order <= lattice_limit)
      compare("lattice", [&] { return lattice_to_json(SubgroupLattice::enumerate(table, lattice_limit)); });
    if (order <= config.char_bound)
      compare("character_table", [&] {
        return table_to_json(character_table(ConjugacyClasses::compute(table, config.char_bound)));
      });
    row["status"] = match ? "match" : "mismatch";
    row["fields"] = fields;
    rows[i] = std::move(row);
  });

  CacheCheck out;
  nlohmann::json groups = nlohmann::json::array();
  std::map<std::string, std::size_t> tally;
  for (auto &r : rows) {
    std::string status = r["status"];
    ++tally[status];
    out.all_match = out.all_match && status != "mismatch" && status != "corrupt";
    groups.push_back(std::move(r));
  }
  out.report = {{"groups", groups}, {"summary", tally}};
  return out;
}

std::string describe_group(GroupSpec const &spec, RunConfig const &config)
{
  std::ostringstream out;
  Group const &g = spec.group;
  out << spec.name << ": order " << g.order() << ", degree " << g.degree() << "\n";
  out << "generators:";
  for (auto const &x : g.generators())
    out << " " << x.to_string();
  out << "\n";

  std::uint64_t lattice_limit = std::min<std::uint64_t>(config.lattice_bound, kLatticeHardCap);
  if (g.order() > lattice_limit && g.order() > config.char_bound) {
    out << "(order exceeds the lattice and character bounds)\n";
    return out.str();
  }
  auto table = std::make_shared<const ElementTable>(g);

  if (g.order() <= lattice_limit) {
    auto l = SubgroupLattice::enumerate(table, lattice_limit);
    std::map<std::uint64_t, std::pair<std::size_t, std::size_t>> by_order;
    for (auto const &cls : l.classes()) {
      auto &entry = by_order[l.order(cls.representative)];
      ++entry.first;
      entry.second += cls.members.size();
    }
    out << "\nsubgroups: " << l.size() << " in " << l.classes().size() << " conjugacy classes\n";
    for (auto const &[order, counts] : by_order)
      out << "  order " << order << ": " << counts.second << " subgroups, " << counts.first << " classes\n";
    out << "maximal subgroups:\n";
    for (auto m : l.maximal_subgroups())
      out << "  " << subgroup_witness(l, m)["generators"].dump() << " order " << l.order(m) << "\n";
    out << "solvable: " << (is_solvable(g) ? "yes" : "no") << ", supersolvable: "
        << (is_supersolvable(l) ? "yes" : "no") << ", WSM: " << (is_wsm(l) ? "yes" : "no") << "\n";
    out << "|Frattini| = " << l.order(frattini(l)) << ", |Fitting| = " << l.order(fitting(l)) << "\n";
    auto series = chief_series(l);
    out << "chief factors:";
    for (auto const &f : series.factors)
      out << " " << f.order << (f.non_frattini ? "" : "*");
    out << "  (* = Frattini)\n";
  }

  if (g.order() <= config.char_bound) {
    auto chars = character_table(ConjugacyClasses::compute(table, config.char_bound));
    auto const &cc = chars.classes();
    out << "\ncharacter table (" << chars.size() << " classes)\n";
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> header;
    for (std::size_t k = 0; k < cc.size(); ++k)
      header.push_back(cc.table().element(cc.representative(k)).to_string());
    std::vector<std::string> sizes;
    for (std::size_t k = 0; k < cc.size(); ++k)
      sizes.push_back(std::to_string(cc.class_size(k)));
    cells.push_back(header);
    cells.push_back(sizes);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      std::vector<std::string> row;
      for (std::size_t k = 0; k < cc.size(); ++k)
        row.push_back(chars.value(i, k).to_string());
      cells.push_back(row);
    }
    std::vector<std::size_t> width(cc.size(), 0);
    for (auto const &row : cells)
      for (std::size_t k = 0; k < row.size(); ++k)
        width[k] = std::max(width[k], row[k].size());
    for (std::size_t r = 0; r < cells.size(); ++r) {
      out << (r == 0 ? "class " : r == 1 ? "size  " : "chi" + std::to_string(r - 1) + std::string(r - 1 < 10 ? 2 : 1, ' '));
      for (std::size_t k = 0; k < cells[r].size(); ++k)
        out << " " << std::string(width[k] - cells[r][k].size(), ' ') << cells[r][k];
      out << "\n";
    }
  }
  return out.str();
}

} // namespace wsm
