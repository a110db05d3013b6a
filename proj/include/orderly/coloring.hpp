#pragma once

#include <memory>
#include <set>
#include <string>
#include <variant>

#include "orderly/value.hpp"

namespace orderly {

enum class Parity { Even, Odd };

class Coloring;

struct MemberColoring {
  std::set<Value> members;
};

// Integers whose residue mod `modulus` is accepted.
struct ResidueColoring {
  Integer modulus;
  std::set<Integer> accept;
};

// Colors a tuple by one of its components.
struct ComponentColoring {
  std::shared_ptr<const Coloring> inner;
  std::size_t index = 0;
};

// Free-algebra values (terms) by the parity of the number of occurrences of
// `symbol` before the first variable.
struct LeadingParityColoring {
  std::string symbol;
  Parity parity = Parity::Even;
};

// A decidable subset X of a universe. Asking about a value of the wrong
// shape (a pair for a residue class, say) throws ColoringMismatch.
class Coloring {
 public:
  static Coloring member(std::set<Value> members);
  static Coloring residue(Integer modulus, std::set<Integer> accept);
  static Coloring component(Coloring inner, std::size_t index);
  static Coloring leading_parity(std::string symbol, Parity parity = Parity::Even);

  bool contains(const Value& v) const;
  std::string describe() const;

  template <typename T>
  const T* as() const { return std::get_if<T>(&rule_); }

 private:
  using Rule = std::variant<MemberColoring, ResidueColoring, ComponentColoring,
                            LeadingParityColoring>;
  explicit Coloring(Rule rule) : rule_(std::move(rule)) {}

  Rule rule_;
};

// Occurrences of `symbol` before the first variable of a term's text.
std::size_t leading_symbol_count(const std::string& term_text, const std::string& symbol);

}  // namespace orderly
