#pragma once

// Internal evaluator for SumExpr: variables are split recursively into
// independent components; each inner component is memoized on the values of
// the outer linear forms it depends on.

#include "mzeta/chainsum.hpp"

#include <array>
#include <deque>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace mzeta::detail {

struct CForm {
  std::vector<std::pair<int, long>> terms;
  long constant = 0;
  long eval(const long* val) const {
    long s = constant;
    for (const auto& [v, k] : terms) s += k * val[v];
    return s;
  }
};

struct Key {
  static constexpr std::size_t kMax = 6;
  std::array<long, kMax> v{};
  int n = 0;
  bool operator==(const Key& o) const {
    if (n != o.n) return false;
    for (int i = 0; i < n; ++i)
      if (v[static_cast<std::size_t>(i)] != o.v[static_cast<std::size_t>(i)]) return false;
    return true;
  }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const;
};

struct Table {
  long anchor = 0;
  std::deque<Real> vals;
};

struct Child;

struct Node {
  int var = 0;
  bool has_lo = false, has_hi = false;
  CForm lo, hi;
  long lo_adj = 0, hi_adj = 0;
  std::vector<std::pair<CForm, int>> self_factors, mixed_factors;
  std::vector<std::unique_ptr<Child>> self_children, mixed_children;
  bool self_cached = false;
  // single variable, unit coefficients: summed through harmonic tables
  bool closed_leaf = false;
  std::vector<std::pair<CForm, int>> leaf_factors;  // shift forms
  // runtime
  std::vector<Real> g;
  std::vector<char> have;
};

struct Child {
  enum class Mode { Const, Direct, RecUpper, RecLower, NoMemo };
  std::unique_ptr<Node> node;
  std::vector<CForm> iface;
  Mode mode = Mode::Const;
  int moving = -1;
  long rec_const = 0;
  bool self = false;
  // runtime
  bool have_const = false;
  Real const_value;
  std::unordered_map<Key, Real, KeyHash> direct;
  std::unordered_map<Key, Table, KeyHash> tables;
  std::size_t entries = 0;
};

class Engine {
 public:
  explicit Engine(const SumExpr& e);
  ~Engine();
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  PartialSum run(long cutoff);

 private:
  struct VarInfo {
    std::optional<LinearForm> lo, hi;
    long lo_adj = 0, hi_adj = 0;
  };
  struct FactorSpec {
    LinearForm form;
    int exponent;
  };
  static constexpr std::size_t kMemoCap = 2'000'000;
  static constexpr int kMaxExponent = 64;

  void reduce(const SumExpr& e);
  std::vector<std::vector<int>> components(const std::vector<int>& set) const;
  std::unique_ptr<Node> build_node(const std::vector<int>& set);
  std::unique_ptr<Child> make_child(const std::vector<int>& comp, int parent_var);

  void reset(Child& c);
  void reset(Node& nd);
  Real eval_node(Node& nd);
  void body(Node& nd, Real& out);
  const Real& self_value(Node& nd, long x);
  Real closed_sum(Node& nd, long lo, long hi);
  const Real& child_value(Child& c);
  Key make_key(const Child& c, int skip) const;
  void account(Child& c, std::size_t added);
  void maybe_evict(Child& c);

  const Real& rpow(int e, long n);
  Real harmonic_diff(int e, long hi, long lo);

  int n_ = 0;
  std::vector<VarInfo> info_;
  std::vector<FactorSpec> factors_;
  std::vector<std::pair<long, int>> const_factors_;
  std::vector<std::unique_ptr<Child>> roots_;

  long cap_ = 0;
  std::int64_t steps_ = 0;
  std::size_t memo_entries_ = 0;
  std::vector<long> val_;
  std::vector<std::deque<Real>> rp_;  // rp_[e][n] = n^-e
  std::vector<std::deque<Real>> h_;   // h_[e][n] = sum_{m<=n} m^-e
  Real zero_{0};
};

}  // namespace mzeta::detail
