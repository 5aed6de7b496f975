#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace mzeta {

using Rational = boost::multiprecision::mpq_rational;

// Composition whose last entry may be 0. Plain indices are the special case
// with every entry >= 1.
class PaddedIndex {
 public:
  PaddedIndex() = default;
  explicit PaddedIndex(std::vector<int> parts);
  PaddedIndex(std::initializer_list<int> parts);

  std::span<const int> parts() const { return parts_; }
  const std::vector<int>& vec() const { return parts_; }
  int depth() const { return static_cast<int>(parts_.size()); }
  int weight() const;
  bool empty() const { return parts_.empty(); }
  int last() const { return parts_.back(); }
  int operator[](std::size_t i) const { return parts_[i]; }

  // True when no entry is 0.
  bool is_index() const;

  std::string str() const;

  auto operator<=>(const PaddedIndex&) const = default;
  bool operator==(const PaddedIndex&) const = default;

 private:
  std::vector<int> parts_;
};

class Index : public PaddedIndex {
 public:
  Index() = default;
  explicit Index(std::vector<int> parts);
  Index(std::initializer_list<int> parts);
  // Throws unless every part is positive.
  static Index from(const PaddedIndex& p);

  bool admissible() const { return empty() || last() > 1; }
};

inline int weight(const PaddedIndex& k) { return k.weight(); }
inline int depth(const PaddedIndex& k) { return k.depth(); }
inline bool is_admissible(const Index& k) { return k.admissible(); }

struct JSet {
  int weight = 0;
  std::set<int> members;
  bool operator==(const JSet&) const = default;
};

JSet j_set(const Index& k);
Index index_from_jset(const JSet& j);

bool is_refinement(const Index& a, const Index& b);
std::vector<Index> refinements(const Index& k);
std::vector<Index> indices_of(int weight, int depth);
// Every index of the given weight, ordered as j-set bitmasks ascend.
std::vector<Index> indices_of_weight(int weight);

Index hoffman_dual(const Index& k);

// Exact rational combination of padded indices; ordering lexicographic.
class IndexCombination {
 public:
  using Map = std::map<PaddedIndex, Rational>;

  IndexCombination() = default;
  explicit IndexCombination(const PaddedIndex& k, const Rational& c = 1);

  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  Rational coeff(const PaddedIndex& k) const;

  void add_term(const PaddedIndex& k, const Rational& c);
  IndexCombination& operator+=(const IndexCombination& o);
  IndexCombination& operator-=(const IndexCombination& o);
  IndexCombination& operator*=(const Rational& c);

  bool operator==(const IndexCombination&) const = default;

  // "c1*(..) + c2*(..)", "0" when empty.
  std::string str() const;

 private:
  Map terms_;
};

IndexCombination operator+(IndexCombination a, const IndexCombination& b);
IndexCombination operator-(IndexCombination a, const IndexCombination& b);
IndexCombination operator*(const Rational& c, IndexCombination a);

IndexCombination add(const IndexCombination& a, const IndexCombination& b);
IndexCombination scale(const Rational& c, const IndexCombination& a);
IndexCombination map_terms(const IndexCombination& a,
                           const std::function<IndexCombination(const PaddedIndex&)>& f);

IndexCombination star(const PaddedIndex& k);
IndexCombination star(const IndexCombination& a);
IndexCombination harmonic_product(const PaddedIndex& a, const PaddedIndex& b);
IndexCombination harmonic_product(const IndexCombination& a, const IndexCombination& b);
IndexCombination circledast(const PaddedIndex& a, const PaddedIndex& b);
IndexCombination circledast(const IndexCombination& a, const IndexCombination& b);
// Left-associated fold.
IndexCombination circledast(std::span<const IndexCombination> operands);

// Builders for repeated parts.
PaddedIndex repeated(int value, int count, bool trailing_zero = false);

std::string rational_str(const Rational& q);
Rational parse_rational(const std::string& s);

}  // namespace mzeta
