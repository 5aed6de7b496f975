#include "mzeta/mzv.hpp"

#include <nlohmann/json.hpp>

#include <cstdlib>
#include <fstream>

namespace mzeta {

std::string record_to_json_line(const MzvCacheRecord& rec) {
  nlohmann::json j;
  j["index"] = rec.index.vec();
  j["value"] = rec.value;
  j["error"] = rec.error;
  j["method"] = rec.method;
  j["digits"] = rec.digits;
  return j.dump();
}

std::optional<MzvCacheRecord> record_from_json_line(const std::string& line) {
  try {
    auto j = nlohmann::json::parse(line);
    MzvCacheRecord r;
    r.index = Index(j.at("index").get<std::vector<int>>());
    r.value = j.at("value").get<std::string>();
    r.error = j.at("error").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.digits = j.at("digits").get<unsigned>();
    // reject numbers that do not parse
    Real v(r.value), e(r.error);
    if (e < 0) return std::nullopt;
    return r;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

MzvCache::MzvCache(std::optional<std::filesystem::path> file) : file_(std::move(file)) { load(); }

std::optional<std::filesystem::path> MzvCache::location(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return std::filesystem::path(*flag);
  if (const char* env = std::getenv("MZETA_CACHE"); env && *env) return std::filesystem::path(env);
  return std::nullopt;
}

void MzvCache::load() {
  if (!file_) return;
  std::ifstream in(*file_);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    if (auto r = record_from_json_line(line)) entries_[{r->index.vec(), r->method, r->digits}] = *r;
  }
}

std::optional<MzvCacheRecord> MzvCache::lookup(const Index& k, const std::string& method, unsigned digits,
                                               double max_error) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find({k.vec(), method, digits});
  if (it == entries_.end() || Real(it->second.error) > max_error) {
    ++misses_;
    return std::nullopt;
  }
  ++hits_;
  return it->second;
}

void MzvCache::store(const MzvCacheRecord& rec) {
  std::unique_lock lock(mu_);
  entries_[{rec.index.vec(), rec.method, rec.digits}] = rec;
  if (file_) {
    std::ofstream out(*file_, std::ios::app);
    if (out) out << record_to_json_line(rec) << '\n';
  }
}

std::vector<MzvCacheRecord> MzvCache::records() const {
  std::shared_lock lock(mu_);
  std::vector<MzvCacheRecord> out;
  for (auto& [k, r] : entries_) out.push_back(r);
  return out;
}

void MzvCache::clear() {
  std::unique_lock lock(mu_);
  entries_.clear();
  if (file_) std::ofstream(*file_, std::ios::trunc);
}

std::size_t MzvCache::hits() const { return hits_; }
std::size_t MzvCache::misses() const { return misses_; }

}  // namespace mzeta
