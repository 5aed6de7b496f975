#include "mzeta/index.hpp"

#include <stdexcept>
#include <utility>

namespace mzeta {

PaddedIndex::PaddedIndex(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    bool is_last = i + 1 == parts_.size();
    if (parts_[i] < 0 || (parts_[i] == 0 && !is_last))
      throw std::invalid_argument("invalid padded index entry " + std::to_string(parts_[i]));
  }
}

PaddedIndex::PaddedIndex(std::initializer_list<int> parts)
    : PaddedIndex(std::vector<int>(parts)) {}

int PaddedIndex::weight() const {
  int w = 0;
  for (int p : parts_) w += p;
  return w;
}

bool PaddedIndex::is_index() const { return parts_.empty() || parts_.back() > 0; }

std::string PaddedIndex::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + ")";
}

Index::Index(std::vector<int> parts) : PaddedIndex(std::move(parts)) {
  if (!is_index()) throw std::invalid_argument("index entries must be positive");
}

Index::Index(std::initializer_list<int> parts) : Index(std::vector<int>(parts)) {}

Index Index::from(const PaddedIndex& p) { return Index(p.vec()); }

JSet j_set(const Index& k) {
  if (k.empty()) throw std::invalid_argument("j-set undefined for depth 0");
  JSet j;
  j.weight = k.weight();
  int acc = 0;
  for (int i = 0; i + 1 < k.depth(); ++i) {
    acc += k[i];
    j.members.insert(acc);
  }
  return j;
}

Index index_from_jset(const JSet& j) {
  if (j.weight < 1) throw std::invalid_argument("j-set weight must be positive");
  std::vector<int> parts;
  int prev = 0;
  for (int m : j.members) {
    if (m <= prev || m >= j.weight) throw std::invalid_argument("j-set member out of range");
    parts.push_back(m - prev);
    prev = m;
  }
  parts.push_back(j.weight - prev);
  return Index(std::move(parts));
}

namespace {

// Index whose j-set is given by bit (i-1) of mask for i in 1..w-1.
Index index_from_mask(int w, unsigned long mask) {
  std::vector<int> parts;
  int prev = 0;
  for (int i = 1; i < w; ++i) {
    if (mask >> (i - 1) & 1UL) {
      parts.push_back(i - prev);
      prev = i;
    }
  }
  parts.push_back(w - prev);
  return Index(std::move(parts));
}

unsigned long mask_of(const Index& k) {
  unsigned long m = 0;
  for (int j : j_set(k).members) m |= 1UL << (j - 1);
  return m;
}

}  // namespace

bool is_refinement(const Index& a, const Index& b) {
  if (a.weight() != b.weight()) return false;
  if (a.empty() || b.empty()) return a.empty() && b.empty();
  auto ma = mask_of(a), mb = mask_of(b);
  return (ma & mb) == mb;
}

std::vector<Index> refinements(const Index& k) {
  if (k.empty()) throw std::invalid_argument("refinements undefined for depth 0");
  int w = k.weight();
  if (w > 40) throw std::invalid_argument("weight too large to enumerate");
  unsigned long base = mask_of(k);
  unsigned long full = w > 1 ? (1UL << (w - 1)) - 1 : 0;
  unsigned long free = full & ~base;
  std::vector<Index> out;
  // Enumerate subsets of the free boundaries in increasing order.
  unsigned long sub = 0;
  while (true) {
    out.push_back(index_from_mask(w, base | sub));
    if (sub == free) break;
    sub = (sub - free) & free;
  }
  return out;
}

std::vector<Index> indices_of_weight(int weight) {
  std::vector<Index> out;
  if (weight < 1) return out;
  for (unsigned long m = 0; m < (1UL << (weight - 1)); ++m) out.push_back(index_from_mask(weight, m));
  return out;
}

std::vector<Index> indices_of(int weight, int depth) {
  std::vector<Index> out;
  for (auto& k : indices_of_weight(weight))
    if (k.depth() == depth) out.push_back(k);
  return out;
}

Index hoffman_dual(const Index& k) {
  if (k.empty()) throw std::invalid_argument("hoffman dual undefined for depth 0");
  int w = k.weight();
  unsigned long full = w > 1 ? (1UL << (w - 1)) - 1 : 0;
  return index_from_mask(w, full & ~mask_of(k));
}

IndexCombination::IndexCombination(const PaddedIndex& k, const Rational& c) { add_term(k, c); }

Rational IndexCombination::coeff(const PaddedIndex& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Rational(0) : it->second;
}

void IndexCombination::add_term(const PaddedIndex& k, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(k, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

IndexCombination& IndexCombination::operator+=(const IndexCombination& o) {
  for (auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

IndexCombination& IndexCombination::operator-=(const IndexCombination& o) {
  for (auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

IndexCombination& IndexCombination::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& kv : terms_) kv.second *= c;
  return *this;
}

std::string rational_str(const Rational& q) {
  return q.str();
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos && s.find_first_not_of("0 ", slash + 1) == std::string::npos)
    throw std::invalid_argument("zero denominator in " + s);
  return Rational(s);
}

std::string IndexCombination::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& [k, c] : terms_) {
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) s += "-";
    } else {
      s += c < 0 ? " - " : " + ";
    }
    s += rational_str(mag) + "*" + k.str();
    first = false;
  }
  return s;
}

IndexCombination operator+(IndexCombination a, const IndexCombination& b) { return a += b; }
IndexCombination operator-(IndexCombination a, const IndexCombination& b) { return a -= b; }
IndexCombination operator*(const Rational& c, IndexCombination a) { return a *= c; }

IndexCombination add(const IndexCombination& a, const IndexCombination& b) { return a + b; }
IndexCombination scale(const Rational& c, const IndexCombination& a) { return c * a; }

IndexCombination map_terms(const IndexCombination& a,
                           const std::function<IndexCombination(const PaddedIndex&)>& f) {
  IndexCombination out;
  for (auto& [k, c] : a.terms()) out += c * f(k);
  return out;
}

IndexCombination star(const PaddedIndex& k) {
  if (k.empty()) throw std::invalid_argument("star undefined for depth 0");
  int r = k.depth();
  if (r > 30) throw std::invalid_argument("depth too large for star");
  IndexCombination out;
  for (unsigned long keep = 0; keep < (1UL << (r - 1)); ++keep) {
    // bit i set: boundary after part i is kept
    std::vector<int> parts;
    int acc = k[0];
    for (int i = 1; i < r; ++i) {
      if (keep >> (i - 1) & 1UL) {
        parts.push_back(acc);
        acc = k[i];
      } else {
        acc += k[i];
      }
    }
    parts.push_back(acc);
    out.add_term(PaddedIndex(std::move(parts)), 1);
  }
  return out;
}

IndexCombination star(const IndexCombination& a) {
  return map_terms(a, [](const PaddedIndex& k) { return star(k); });
}

namespace {

using Parts = std::vector<int>;
using Memo = std::map<std::pair<Parts, Parts>, std::map<Parts, Rational>>;

// Stuffle on raw part lists; entries may be arbitrary nonnegative integers.
const std::map<Parts, Rational>& stuffle(const Parts& a, const Parts& b, Memo& memo) {
  auto key = std::make_pair(a, b);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::map<Parts, Rational> out;
  if (a.empty() || b.empty()) {
    out[a.empty() ? b : a] = 1;
  } else {
    Parts a1(a.begin(), a.end() - 1), b1(b.begin(), b.end() - 1);
    auto append = [&](const std::map<Parts, Rational>& src, int tail) {
      for (auto& [p, c] : src) {
        Parts q = p;
        q.push_back(tail);
        out[q] += c;
      }
    };
    append(stuffle(a1, b, memo), a.back());
    append(stuffle(a, b1, memo), b.back());
    append(stuffle(a1, b1, memo), a.back() + b.back());
  }
  return memo.emplace(key, std::move(out)).first->second;
}

IndexCombination to_combination(const std::map<Parts, Rational>& m) {
  IndexCombination out;
  for (auto& [p, c] : m) out.add_term(PaddedIndex(p), c);
  return out;
}

}  // namespace

IndexCombination harmonic_product(const PaddedIndex& a, const PaddedIndex& b) {
  Memo memo;
  return to_combination(stuffle(a.vec(), b.vec(), memo));
}

IndexCombination harmonic_product(const IndexCombination& a, const IndexCombination& b) {
  IndexCombination out;
  for (auto& [x, cx] : a.terms())
    for (auto& [y, cy] : b.terms()) out += (cx * cy) * harmonic_product(x, y);
  return out;
}

IndexCombination circledast(const PaddedIndex& a, const PaddedIndex& b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("⊛ requires nonempty operands");
  Parts a1(a.vec().begin(), a.vec().end() - 1), b1(b.vec().begin(), b.vec().end() - 1);
  Memo memo;
  int tail = a.last() + b.last();
  std::map<Parts, Rational> out;
  for (auto& [p, c] : stuffle(a1, b1, memo)) {
    Parts q = p;
    q.push_back(tail);
    out[q] += c;
  }
  return to_combination(out);
}

IndexCombination circledast(const IndexCombination& a, const IndexCombination& b) {
  IndexCombination out;
  for (auto& [x, cx] : a.terms())
    for (auto& [y, cy] : b.terms()) out += (cx * cy) * circledast(x, y);
  return out;
}

IndexCombination circledast(std::span<const IndexCombination> operands) {
  if (operands.empty()) throw std::invalid_argument("⊛ requires nonempty operands");
  IndexCombination acc = operands[0];
  for (std::size_t i = 1; i < operands.size(); ++i) acc = circledast(acc, operands[i]);
  return acc;
}

PaddedIndex repeated(int value, int count, bool trailing_zero) {
  std::vector<int> parts(static_cast<std::size_t>(count), value);
  if (trailing_zero) parts.push_back(0);
  return PaddedIndex(std::move(parts));
}

}  // namespace mzeta
