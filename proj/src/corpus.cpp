#include "wsm/corpus.hpp"

#include <fstream>
#include <set>

#include "wsm/constructors.hpp"

namespace wsm
{

namespace
{

[[noreturn]] void fail(std::size_t line, std::string const &why)
{
  if (line == 0)
    throw CorpusError(why);
  throw CorpusError("line " + std::to_string(line) + ": " + why);
}

} // namespace

GroupSpec parse_group_spec(nlohmann::json const &object, std::size_t line)
{
  if (!object.is_object())
    fail(line, "expected a JSON object");
  GroupSpec spec;
  spec.line = line;

  if (!object.contains("name") || !object["name"].is_string() || object["name"].get<std::string>().empty())
    fail(line, "missing \"name\"");
  spec.name = object["name"].get<std::string>();

  bool has_source = object.contains("source");
  bool has_generators = object.contains("generators");
  if (has_source == has_generators)
    fail(line, "group '" + spec.name + "' needs exactly one of \"source\" and \"generators\"");

  try {
    if (has_source) {
      if (!object["source"].is_string())
        fail(line, "\"source\" must be a string");
      spec.source = object["source"].get<std::string>();
      spec.group = build_from_source(spec.source);
    } else {
      if (!object["generators"].is_array())
        fail(line, "\"generators\" must be an array of cycle-notation strings");
      std::vector<Perm> perms;
      std::size_t degree = 1;
      if (object.contains("degree")) {
        if (!object["degree"].is_number_unsigned() || object["degree"].get<std::uint64_t>() == 0)
          fail(line, "\"degree\" must be a positive integer");
        degree = object["degree"].get<std::size_t>();
      }
      for (auto const &g : object["generators"]) {
        if (!g.is_string())
          fail(line, "\"generators\" must be an array of cycle-notation strings");
        spec.generators.push_back(g.get<std::string>());
        perms.push_back(Perm::parse(spec.generators.back()));
        if (!object.contains("degree"))
          degree = std::max(degree, perms.back().degree());
      }
      for (auto &p : perms) {
        if (p.degree() > degree)
          fail(line, "generator " + p.to_string() + " moves points beyond degree " + std::to_string(degree));
        p = p.extended(degree);
      }
      spec.group = Group(std::move(perms), degree);
    }
  } catch (CorpusError const &) {
    throw;
  } catch (std::exception const &e) {
    fail(line, "group '" + spec.name + "': " + e.what());
  }

  if (object.contains("expected_order")) {
    if (!object["expected_order"].is_number_unsigned())
      fail(line, "\"expected_order\" must be a non-negative integer");
    spec.expected_order = object["expected_order"].get<std::uint64_t>();
    if (*spec.expected_order != spec.group.order())
      fail(line, "group '" + spec.name + "' has order " + std::to_string(spec.group.order()) + ", expected " +
                     std::to_string(*spec.expected_order));
  }
  return spec;
}

std::vector<GroupSpec> parse_corpus(std::istream &in)
{
  std::vector<GroupSpec> specs;
  std::set<std::string> names;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    auto object = nlohmann::json::parse(text, nullptr, false);
    if (object.is_discarded())
      fail(line, "invalid JSON");
    GroupSpec spec = parse_group_spec(object, line);
    if (!names.insert(spec.name).second)
      fail(line, "duplicate group name '" + spec.name + "'");
    specs.push_back(std::move(spec));
  }
  return specs;
}

std::vector<GroupSpec> parse_corpus_file(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
    throw CorpusError("cannot open corpus file " + path.string());
  return parse_corpus(in);
}

std::vector<nlohmann::json> default_corpus_entries()
{
  std::vector<nlohmann::json> out;
  auto add = [&](std::string name, std::string source) {
    Group g = build_from_source(source);
    out.push_back({{"name", std::move(name)}, {"source", std::move(source)}, {"expected_order", g.order()}});
  };

  for (int n = 1; n <= 200; ++n)
    add("C" + std::to_string(n), "cyclic(" + std::to_string(n) + ")");
  for (int n = 3; n <= 100; ++n)
    add("D" + std::to_string(2 * n), "dihedral(" + std::to_string(n) + ")");
  for (int n = 1; n <= 5; ++n)
    add("S" + std::to_string(n), "sym(" + std::to_string(n) + ")");
  for (int n = 3; n <= 5; ++n)
    add("A" + std::to_string(n), "alt(" + std::to_string(n) + ")");
  for (int p : {2, 3, 5, 7, 11, 13}) {
    int q = p * p;
    for (int n = 2; q <= 200; ++n, q *= p)
      add("C" + std::to_string(p) + "^" + std::to_string(n),
          "elem_abelian(" + std::to_string(p) + "," + std::to_string(n) + ")");
  }
  for (int n = 8; n <= 128; n *= 2)
    add("Q" + std::to_string(n), "quaternion(" + std::to_string(n) + ")");
  for (int q : {4, 5, 7, 8, 9, 11, 13})
    add("AGL1_" + std::to_string(q), "agl1(" + std::to_string(q) + ")");

  struct Factor
  {
    char const *name;
    char const *source;
    std::uint64_t order;
  };
  static const Factor factors[] = {
    {"C2", "cyclic(2)", 2},     {"C3", "cyclic(3)", 3},   {"C4", "cyclic(4)", 4},        {"C2^2", "elem_abelian(2,2)", 4},
    {"S3", "sym(3)", 6},        {"D8", "dihedral(4)", 8}, {"Q8", "quaternion(8)", 8},    {"D10", "dihedral(5)", 10},
    {"A4", "alt(4)", 12},       {"S4", "sym(4)", 24},     {"A5", "alt(5)", 60},
  };
  std::size_t nf = std::size(factors);
  for (std::size_t i = 0; i < nf; ++i)
    for (std::size_t j = i; j < nf; ++j)
      if (factors[i].order * factors[j].order <= 200)
        add(std::string(factors[i].name) + "x" + factors[j].name,
            std::string("direct(") + factors[i].source + "," + factors[j].source + ")");

  add("A7xA7", "direct(alt(7),alt(7))");
  return out;
}

} // namespace wsm
