#include "wsm/cache.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include <openssl/evp.h>

namespace wsm
{

namespace
{

constexpr char const *kFormat = "wsm-cache-2";

std::string read_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string checksum(nlohmann::json const &payload)
{
  return sha256_hex(payload.dump());
}

} // namespace

std::string sha256_hex(std::string const &data)
{
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr);
  static char const *hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < length; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 15];
  }
  return out;
}

std::string group_cache_key(Group const &g)
{
  std::string text = "degree " + std::to_string(g.degree()) + "\n";
  for (auto const &x : g.generators())
    text += x.to_string() + "\n";
  return sha256_hex(text);
}

nlohmann::json lattice_to_json(SubgroupLattice const &lattice)
{
  nlohmann::json nodes = nlohmann::json::array();
  for (auto const &n : lattice.nodes()) {
    nlohmann::json covers = nlohmann::json::array();
    for (auto c : n.covers)
      covers.push_back(c.value);
    nodes.push_back({{"elements", n.elements.to_hex()},
                     {"order", n.order},
                     {"generators", n.generators},
                     {"covers", covers},
                     {"class", n.cls}});
  }
  return {{"group_order", lattice.table().size()}, {"nodes", nodes}};
}

SubgroupLattice lattice_from_json(std::shared_ptr<const ElementTable> table, nlohmann::json const &j)
{
  std::size_t size = table->size();
  if (j.at("group_order").get<std::size_t>() != size)
    throw std::invalid_argument("cached lattice belongs to a group of another order");
  std::vector<SubgroupLattice::Node> nodes;
  auto const &raw = j.at("nodes");
  for (auto const &n : raw) {
    SubgroupLattice::Node node;
    node.elements = Bitset::from_hex(n.at("elements").get<std::string>(), size);
    node.order = n.at("order").get<std::uint64_t>();
    node.generators = n.at("generators").get<std::vector<std::uint32_t>>();
    for (auto g : node.generators)
      if (g >= size)
        throw std::invalid_argument("cached generator index out of range");
    for (auto const &c : n.at("covers")) {
      auto id = c.get<std::uint32_t>();
      if (id >= raw.size())
        throw std::invalid_argument("cached cover index out of range");
      node.covers.push_back(SubgroupId{id});
    }
    node.cls = n.at("class").get<std::size_t>();
    if (node.elements.count() != node.order)
      throw std::invalid_argument("cached subgroup order disagrees with its elements");
    nodes.push_back(std::move(node));
  }
  return SubgroupLattice::from_parts(std::move(table), std::move(nodes));
}

nlohmann::json table_to_json(CharacterTable const &table)
{
  nlohmann::json rows = nlohmann::json::array();
  for (auto const &row : table.characters()) {
    nlohmann::json values = nlohmann::json::array();
    for (auto const &v : row.values) {
      nlohmann::json terms = nlohmann::json::array();
      auto const &coeffs = v.coefficients();
      for (std::size_t i = 0; i < coeffs.size(); ++i)
        if (coeffs[i] != 0)
          terms.push_back({i, coeffs[i]});
      values.push_back({{"conductor", v.conductor()}, {"length", coeffs.size()}, {"terms", terms}});
    }
    nlohmann::json mult = nlohmann::json::array();
    for (auto const &per_class : row.multiplicities) {
      nlohmann::json pairs = nlohmann::json::array();
      for (auto const &[t, m] : per_class)
        pairs.push_back({t, m});
      mult.push_back(std::move(pairs));
    }
    rows.push_back({{"degree", row.degree}, {"values", values}, {"multiplicities", mult}});
  }
  return {{"modulus", table.modulus()}, {"classes", table.classes().size()}, {"rows", rows}};
}

CharacterTable table_from_json(ConjugacyClasses classes, nlohmann::json const &j)
{
  std::size_t nclasses = classes.size();
  if (j.at("classes").get<std::size_t>() != nclasses || j.at("rows").size() != nclasses)
    throw std::invalid_argument("cached table has the wrong number of classes");
  std::vector<Character> rows;
  for (auto const &r : j.at("rows")) {
    Character c;
    c.degree = r.at("degree").get<std::int64_t>();
    for (auto const &v : r.at("values")) {
      auto conductor = v.at("conductor").get<std::uint64_t>();
      std::vector<std::int64_t> coeffs(v.at("length").get<std::size_t>(), 0);
      if (conductor == 0 || coeffs.size() != euler_phi(conductor))
        throw std::invalid_argument("cached value has the wrong length");
      for (auto const &t : v.at("terms"))
        coeffs.at(t.at(0).get<std::size_t>()) = t.at(1).get<std::int64_t>();
      c.values.push_back(CyclotomicInteger::from_coefficients(conductor, std::move(coeffs)));
    }
    for (auto const &per_class : r.at("multiplicities")) {
      std::vector<std::pair<std::uint32_t, std::int64_t>> pairs;
      for (auto const &p : per_class)
        pairs.emplace_back(p.at(0).get<std::uint32_t>(), p.at(1).get<std::int64_t>());
      c.multiplicities.push_back(std::move(pairs));
    }
    if (c.values.size() != nclasses || c.multiplicities.size() != nclasses)
      throw std::invalid_argument("cached character has the wrong length");
    rows.push_back(std::move(c));
  }
  return CharacterTable::from_rows(std::move(classes), std::move(rows), j.at("modulus").get<std::uint64_t>());
}

ResultCache::ResultCache(std::filesystem::path dir)
: dir_(std::move(dir))
{
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ResultCache::entry_path(Group const &g) const
{
  return dir_ / (group_cache_key(g) + ".json");
}

ResultCache::Lookup ResultCache::load(Group const &g) const
{
  Lookup out;
  auto path = entry_path(g);
  if (!std::filesystem::exists(path))
    return out;
  out.status = Status::corrupt;
  auto doc = nlohmann::json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    out.problem = "not valid JSON";
    return out;
  }
  if (doc.value("format", "") != kFormat || doc.value("key", "") != group_cache_key(g)) {
    out.problem = "unexpected format or key";
    return out;
  }
  if (!doc.contains("payload") || !doc["payload"].is_object() || doc.value("checksum", "") != checksum(doc["payload"])) {
    out.problem = "checksum mismatch";
    return out;
  }
  out.status = Status::hit;
  out.payload = std::move(doc["payload"]);
  return out;
}

void ResultCache::store(Group const &g, std::string const &field, nlohmann::json value)
{
  static std::atomic<std::uint64_t> counter{0};
  std::lock_guard lock(mutex_);
  Lookup existing = load(g);
  nlohmann::json payload = existing.status == Status::hit ? existing.payload : nlohmann::json::object();
  payload[field] = std::move(value);

  nlohmann::json generators = nlohmann::json::array();
  for (auto const &x : g.generators())
    generators.push_back(x.to_string());
  nlohmann::json doc = {{"format", kFormat},
                        {"key", group_cache_key(g)},
                        {"degree", g.degree()},
                        {"generators", generators},
                        {"checksum", checksum(payload)},
                        {"payload", payload}};

  auto path = entry_path(g);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id())) + "_" +
         std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump();
    if (!out)
      throw std::runtime_error("cannot write cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace wsm
