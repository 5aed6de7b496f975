#include "mzeta_cli/query.hpp"

#include <array>
#include <cctype>
#include <climits>
#include <utility>

namespace mzeta::cli {

namespace {

struct Shape {
  const char* name;
  QueryKind kind;
  int groups;         // 1 or 2
  bool scalar_second; // second group is a single int
};

constexpr std::array<Shape, 10> kShapes{{
    {"zeta", QueryKind::Zeta, 1, false},
    {"eta", QueryKind::Eta, 2, false},
    {"etakt", QueryKind::EtaKt, 2, true},
    {"xi", QueryKind::Xi, 2, true},
    {"star", QueryKind::Star, 1, false},
    {"hp", QueryKind::Hp, 2, false},
    {"circ", QueryKind::Circ, 2, false},
    {"dual", QueryKind::Dual, 1, false},
    {"sumformula-rhs", QueryKind::SumformulaRhs, 1, false},
    {"appendix-rhs", QueryKind::AppendixRhs, 2, true},
}};

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  Query run() {
    skip();
    const std::size_t name_at = pos_;
    std::string name;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-')) name += s_[pos_++];
    if (name.empty()) fail(name_at, "expected a function name");
    const Shape* shape = nullptr;
    for (const auto& sh : kShapes)
      if (name == sh.name) shape = &sh;
    if (!shape) fail(name_at, "unknown function '" + name + "'");

    expect('(');
    Query q{shape->kind, {}, {}, false};
    const std::size_t first_at = here();
    q.first = intlist();
    if (peek() == ';') {
      const std::size_t semi = pos_;
      ++pos_;
      if (shape->groups == 1) fail(semi, "expected ')' (" + name + " takes a single argument list)");
      const std::size_t second_at = here();
      q.second = intlist();
      q.has_second = true;
      if (shape->scalar_second && q.second.size() != 1) fail(second_at, "expected a single integer after ';'");
      if (shape->kind == QueryKind::Eta && q.second.size() != q.first.size())
        fail(second_at, "depth mismatch: eta needs equal depths (" + std::to_string(q.first.size()) + " vs " +
                            std::to_string(q.second.size()) + ")");
    } else if (shape->groups == 2) {
      fail(here(), "expected ';'");
    }
    if (shape->kind == QueryKind::SumformulaRhs && q.first.size() != 3)
      fail(first_at, "sumformula-rhs expects three integers k,l,r");
    expect(')');
    skip();
    if (pos_ != s_.size()) fail(pos_, "expected end of input");
    return q;
  }

 private:
  [[noreturn]] void fail(std::size_t at, const std::string& msg) { throw ParseError(at, msg); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::size_t here() {
    skip();
    return pos_;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(pos_, std::string("expected '") + c + "'");
    ++pos_;
  }

  int integer() {
    const std::size_t at = here();
    if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail(at, "expected a positive integer");
    long v = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      v = v * 10 + (s_[pos_++] - '0');
      if (v > INT_MAX) fail(at, "integer too large");
    }
    if (v == 0) fail(at, "expected a positive integer");
    return static_cast<int>(v);
  }

  std::vector<int> intlist() {
    std::vector<int> out{integer()};
    while (peek() == ',') {
      ++pos_;
      out.push_back(integer());
    }
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

bool Query::is_formal() const {
  switch (kind) {
    case QueryKind::Star:
    case QueryKind::Hp:
    case QueryKind::Circ:
    case QueryKind::Dual:
    case QueryKind::SumformulaRhs:
    case QueryKind::AppendixRhs: return true;
    default: return false;
  }
}

ParseError::ParseError(std::size_t offset, const std::string& what)
    : std::runtime_error("syntax error at byte " + std::to_string(offset) + ": " + what), offset_(offset) {}

Query parse_query(std::string_view text) { return Parser(text).run(); }

std::string kind_name(QueryKind k) {
  for (const auto& sh : kShapes)
    if (sh.kind == k) return sh.name;
  return "?";
}

}  // namespace mzeta::cli
