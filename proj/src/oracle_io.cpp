#include "ordwb/oracle.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

namespace ordwb {

using nlohmann::json;

namespace {

// bump when the fixed-point operator changes meaning
constexpr const char *kCacheVersion = "v3";

std::string hex(std::uint64_t h) {
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

} // namespace

json relation_to_json(const Leq1Relation &rel) {
  const Grid &g = rel.grid();
  json pts = json::array(), mh = json::array(), matrix = json::array();
  for (std::size_t i = 0; i < g.size(); ++i) {
    pts.push_back(render(g[i]));
    mh.push_back(rel.mhat()[i]);
    std::string row(g.size(), '0');
    for (std::size_t j = i; j < g.size(); ++j)
      if (rel.leq1((int)i, (int)j))
        row[j] = '1';
    matrix.push_back(row);
  }
  return json{{"grid_hash", hex(g.hash())},
              {"subset_cap", rel.subset_cap()},
              {"rounds", rel.stats().rounds},
              {"removed_per_round", rel.stats().removed_per_round},
              {"points", pts},
              {"mhat", mh},
              {"matrix", matrix}};
}

std::string relation_to_dot(const Leq1Relation &rel) {
  const Grid &g = rel.grid();
  const auto &mh = rel.mhat();
  std::ostringstream os;
  os << "digraph leq1 {\n  rankdir=BT;\n";
  for (std::size_t i = 0; i < g.size(); ++i)
    os << "  n" << i << " [label=\"" << render(g[i]) << "\"];\n";
  // covering pairs of <_1: a <_1 b with no a <_1 c <_1 b in between
  for (int a = 0; a < (int)g.size(); ++a) {
    int reach = -1;
    for (int b = a + 1; b <= mh[a]; ++b) {
      if (reach < b)
        os << "  n" << a << " -> n" << b << ";\n";
      reach = std::max(reach, mh[b]);
    }
  }
  os << "}\n";
  return os.str();
}

std::string cache_key(const Grid &g, int subset_cap) {
  return hex(g.hash()) + "-s" + std::to_string(subset_cap) + "-" + kCacheVersion;
}

static std::filesystem::path cache_path(const std::string &dir, const std::string &key) {
  return std::filesystem::path(dir) / ("leq1-" + key + ".json");
}

std::optional<Leq1Relation> cache_load(const std::string &dir, std::shared_ptr<const Grid> g,
                                       int subset_cap) {
  if (dir.empty())
    return std::nullopt;
  std::ifstream in(cache_path(dir, cache_key(*g, subset_cap)));
  if (!in)
    return std::nullopt;
  json j;
  try {
    in >> j;
  } catch (const json::exception &) {
    return std::nullopt;
  }
  // a stale or truncated file is a miss, not an error
  if (j.value("key", "") != cache_key(*g, subset_cap) || !j.contains("mhat") ||
      j.at("mhat").size() != g->size())
    return std::nullopt;
  FixpointStats st;
  st.rounds = j.value("rounds", 0);
  st.removed_per_round = j.value("removed_per_round", std::vector<std::size_t>{});
  st.seconds = j.value("seconds", 0.0);
  return Leq1Relation(std::move(g), j.at("mhat").get<std::vector<int>>(), subset_cap, st);
}

void cache_store(const std::string &dir, const Leq1Relation &rel) {
  if (dir.empty())
    return;
  std::filesystem::create_directories(dir);
  std::string key = cache_key(rel.grid(), rel.subset_cap());
  json j{{"key", key},
         {"rounds", rel.stats().rounds},
         {"removed_per_round", rel.stats().removed_per_round},
         {"seconds", rel.stats().seconds},
         {"mhat", rel.mhat()}};
  auto path = cache_path(dir, key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp);
    out << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

Leq1Relation leq1_cached(const std::string &dir, std::shared_ptr<const Grid> g, int subset_cap) {
  if (auto hit = cache_load(dir, g, subset_cap))
    return *hit;
  Leq1Relation rel = leq1_fixpoint(std::move(g), subset_cap);
  cache_store(dir, rel);
  return rel;
}

} // namespace ordwb
