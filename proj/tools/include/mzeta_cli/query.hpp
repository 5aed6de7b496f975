#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mzeta::cli {

enum class QueryKind { Zeta, Eta, EtaKt, Xi, Star, Hp, Circ, Dual, SumformulaRhs, AppendixRhs };

struct Query {
  QueryKind kind;
  std::vector<int> first;
  std::vector<int> second;  // empty unless the query has a ";" group
  bool has_second = false;

  // true for queries that denote an index combination rather than a number
  bool is_formal() const;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& what);
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// query := name "(" args ")"
// args  := intlist | intlist ";" intlist | intlist ";" int
Query parse_query(std::string_view text);

std::string kind_name(QueryKind k);

}  // namespace mzeta::cli
