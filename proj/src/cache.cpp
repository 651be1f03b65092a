#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "fibrcheck/analyze.hpp"
#include "fibrcheck/error.hpp"

namespace fibrcheck {

using nlohmann::json;

namespace {

constexpr int kCacheVersion = 1;

bool well_formed(const json& doc) {
  if (!doc.is_object() || doc.value("version", 0) != kCacheVersion) return false;
  const auto it = doc.find("entries");
  if (it == doc.end() || !it->is_array()) return false;
  for (const auto& e : *it) {
    if (!e.is_object() || !e.contains("presentation_hash") || !e["presentation_hash"].is_string() ||
        !e.contains("group") || !e["group"].is_string() || !e.contains("homs") || !e["homs"].is_array()) {
      return false;
    }
    for (const auto& table : e["homs"]) {
      if (!table.is_array()) return false;
      for (const auto& perm : table) {
        if (!perm.is_array()) return false;
        for (const auto& v : perm) {
          if (!v.is_number_unsigned()) return false;
        }
      }
    }
  }
  return true;
}

}  // namespace

EpimorphismCache::EpimorphismCache(std::filesystem::path path) : path_(std::move(path)) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    json doc = json::parse(buf.str());
    if (!well_formed(doc)) throw Error(Errc::CorruptCache, "cli", "unexpected cache layout");
    entries_ = std::move(doc["entries"]);
  } catch (const std::exception& e) {
    spdlog::warn("ignoring corrupt epimorphism cache '{}': {}", path_.string(), e.what());
    corrupt_ = true;
    entries_ = json::array();
  }
}

std::optional<std::vector<GroupHom>> EpimorphismCache::lookup(const std::string& hash, const TargetGroup& group) const {
  for (const auto& e : entries_) {
    if (e["presentation_hash"] != hash || e["group"] != group.name()) continue;
    std::vector<GroupHom> homs;
    try {
      for (const auto& table : e["homs"]) {
        GroupHom h{group, {}, true};
        for (const auto& perm : table) h.images.emplace_back(perm.get<std::vector<std::uint8_t>>());
        homs.push_back(std::move(h));
      }
    } catch (const std::exception& ex) {
      spdlog::warn("ignoring malformed cache entry for {}: {}", group.name(), ex.what());
      return std::nullopt;
    }
    return homs;
  }
  return std::nullopt;
}

void EpimorphismCache::store(const std::string& hash, const TargetGroup& group, const std::vector<GroupHom>& homs) {
  json tables = json::array();
  for (const auto& h : homs) {
    json table = json::array();
    for (const auto& p : h.images) table.push_back(p.images());
    tables.push_back(std::move(table));
  }
  for (auto& e : entries_) {
    if (e["presentation_hash"] == hash && e["group"] == group.name()) {
      e["homs"] = std::move(tables);
      return;
    }
  }
  entries_.push_back({{"presentation_hash", hash}, {"group", group.name()}, {"homs", std::move(tables)}});
}

void EpimorphismCache::save() const {
  const json doc = {{"version", kCacheVersion}, {"entries", entries_}};
  const auto tmp = path_.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::Io, "cli", "cannot write cache '" + tmp + "'");
    out << doc.dump() << '\n';
  }
  std::filesystem::rename(tmp, path_);
}

}  // namespace fibrcheck
