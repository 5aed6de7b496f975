#pragma once

#include "mzeta/chainsum.hpp"
#include "mzeta/index.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

namespace mzeta {

// Sum over 0 < n_1 < ... < n_r of prod n_j^-k_j.
SumExpr zeta_expr(const Index& k);

Approx zeta_series(const Index& k, const EvalConfig& cfg);

// Midpoint split of the iterated-integral word; geometric convergence.
Approx zeta_fast(const Index& k, const EvalConfig& cfg);

struct MzvCacheRecord {
  Index index;
  std::string value;
  std::string error;
  std::string method;  // "reference" or "fast"
  unsigned digits = 0;
};

// JSON-lines cache. Many readers, one writer at a time; unreadable lines are
// skipped, so a damaged file only costs recomputation.
class MzvCache {
 public:
  MzvCache() = default;  // in memory only
  explicit MzvCache(std::optional<std::filesystem::path> file);
  // --cache flag wins over MZETA_CACHE; neither means memory only.
  static std::optional<std::filesystem::path> location(const std::optional<std::string>& flag);

  std::optional<MzvCacheRecord> lookup(const Index& k, const std::string& method, unsigned digits,
                                       double max_error) const;
  void store(const MzvCacheRecord& rec);
  std::vector<MzvCacheRecord> records() const;
  void clear();

  const std::optional<std::filesystem::path>& path() const { return file_; }
  std::size_t hits() const;
  std::size_t misses() const;

 private:
  using Key = std::tuple<std::vector<int>, std::string, unsigned>;
  void load();

  std::optional<std::filesystem::path> file_;
  mutable std::shared_mutex mu_;
  std::map<Key, MzvCacheRecord> entries_;
  mutable std::atomic<std::size_t> hits_{0}, misses_{0};
};

std::string record_to_json_line(const MzvCacheRecord& rec);
std::optional<MzvCacheRecord> record_from_json_line(const std::string& line);

// Sum of coeff * zeta(index), error sum of |coeff| * error.
Approx zeta_combination(const IndexCombination& c, const EvalConfig& cfg, MzvCache* cache = nullptr);

// Cached single value: fast evaluator, falling back to the series.
Approx zeta_value(const Index& k, const EvalConfig& cfg, MzvCache* cache = nullptr);

}  // namespace mzeta
