#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "orderly/term.hpp"

namespace orderly {

using Integer = boost::multiprecision::cpp_int;

class Value;

// Value of the index-set orderly algebra: the variables occurring in a term.
struct IndexSet {
  std::vector<VarIndex> indices;  // sorted, distinct
};

// Value of the free orderly algebra: the term itself, in canonical text.
struct TermText {
  std::string text;
};

// An element of some universe. Opaque apart from structural equality and a
// total order used for canonical listings.
class Value {
 public:
  using Tuple = std::vector<Value>;

  Value() : data_(Integer(0)) {}
  Value(Integer n) : data_(std::move(n)) {}            // NOLINT
  Value(int n) : data_(Integer(n)) {}                  // NOLINT
  Value(std::string s) : data_(std::move(s)) {}        // NOLINT
  Value(const char* s) : data_(std::string(s)) {}      // NOLINT
  Value(Tuple t) : data_(std::move(t)) {}              // NOLINT
  Value(IndexSet s) : data_(std::move(s)) {}           // NOLINT
  Value(TermText t) : data_(std::move(t)) {}           // NOLINT

  static Value pair(Value a, Value b) { return Value(Tuple{std::move(a), std::move(b)}); }
  static Value indices(const std::set<VarIndex>& s) {
    return Value(IndexSet{{s.begin(), s.end()}});
  }

  const Integer* as_integer() const { return std::get_if<Integer>(&data_); }
  const std::string* as_symbol() const { return std::get_if<std::string>(&data_); }
  const Tuple* as_tuple() const { return std::get_if<Tuple>(&data_); }
  const IndexSet* as_index_set() const { return std::get_if<IndexSet>(&data_); }
  const TermText* as_term() const { return std::get_if<TermText>(&data_); }

  std::size_t kind() const { return data_.index(); }

  friend bool operator==(const Value& a, const Value& b);
  friend bool operator<(const Value& a, const Value& b);
  friend bool operator!=(const Value& a, const Value& b) { return !(a == b); }

 private:
  std::variant<Integer, std::string, Tuple, IndexSet, TermText> data_;
};

// Compact human-readable form: 3, x, (1,2), {0,3}, [f v0 v1].
std::string to_string(const Value& v);

using Assignment = std::vector<Value>;

}  // namespace orderly
