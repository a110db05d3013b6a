#include "orderly/coloring.hpp"

#include <sstream>

#include "orderly/error.hpp"

namespace orderly {

namespace {

bool is_variable_word(const std::string& w) {
  if (w.size() < 2 || w[0] != 'v') return false;
  for (std::size_t i = 1; i < w.size(); ++i) {
    if (w[i] < '0' || w[i] > '9') return false;
  }
  return true;
}

}  // namespace

std::size_t leading_symbol_count(const std::string& term_text,
                                 const std::string& symbol) {
  std::istringstream in(term_text);
  std::string word;
  std::size_t count = 0;
  while (in >> word) {
    if (is_variable_word(word)) break;
    if (word == symbol) ++count;
  }
  return count;
}

Coloring Coloring::member(std::set<Value> members) {
  return Coloring(MemberColoring{std::move(members)});
}

Coloring Coloring::residue(Integer modulus, std::set<Integer> accept) {
  if (modulus < 2) {
    throw Error(ErrorKind::InvalidInput, "residue modulus must be at least 2");
  }
  for (const auto& r : accept) {
    if (r < 0 || r >= modulus) {
      throw Error(ErrorKind::InvalidInput,
                  "accepted residue " + r.str() + " is outside 0.." +
                      Integer(modulus - 1).str());
    }
  }
  return Coloring(ResidueColoring{std::move(modulus), std::move(accept)});
}

Coloring Coloring::component(Coloring inner, std::size_t index) {
  return Coloring(
      ComponentColoring{std::make_shared<const Coloring>(std::move(inner)), index});
}

Coloring Coloring::leading_parity(std::string symbol, Parity parity) {
  return Coloring(LeadingParityColoring{std::move(symbol), parity});
}

bool Coloring::contains(const Value& v) const {
  return std::visit(
      [&](const auto& rule) -> bool {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, MemberColoring>) {
          return rule.members.contains(v);
        } else if constexpr (std::is_same_v<T, ResidueColoring>) {
          const auto* n = v.as_integer();
          if (n == nullptr) {
            throw Error(ErrorKind::ColoringMismatch,
                        "residue coloring applied to non-integer '" + to_string(v) + "'");
          }
          Integer r = *n % rule.modulus;
          if (r < 0) r += rule.modulus;
          return rule.accept.contains(r);
        } else if constexpr (std::is_same_v<T, ComponentColoring>) {
          const auto* t = v.as_tuple();
          if (t == nullptr || rule.index >= t->size()) {
            throw Error(ErrorKind::ColoringMismatch,
                        "component " + std::to_string(rule.index) +
                            " coloring applied to '" + to_string(v) + "'");
          }
          return rule.inner->contains((*t)[rule.index]);
        } else {
          const auto* t = v.as_term();
          if (t == nullptr) {
            throw Error(ErrorKind::ColoringMismatch,
                        "leading-parity coloring needs free-algebra values, got '" +
                            to_string(v) + "'");
          }
          const bool even = leading_symbol_count(t->text, rule.symbol) % 2 == 0;
          return even == (rule.parity == Parity::Even);
        }
      },
      rule_);
}

std::string Coloring::describe() const {
  return std::visit(
      [](const auto& rule) -> std::string {
        using T = std::decay_t<decltype(rule)>;
        if constexpr (std::is_same_v<T, MemberColoring>) {
          return "member set of " + std::to_string(rule.members.size()) + " values";
        } else if constexpr (std::is_same_v<T, ResidueColoring>) {
          std::string out = "residue mod " + rule.modulus.str() + " in {";
          bool first = true;
          for (const auto& r : rule.accept) {
            out += (first ? "" : ",") + r.str();
            first = false;
          }
          return out + "}";
        } else if constexpr (std::is_same_v<T, ComponentColoring>) {
          return "component " + std::to_string(rule.index) + " " + rule.inner->describe();
        } else {
          return std::string("leading '") + rule.symbol + "' count " +
                 (rule.parity == Parity::Even ? "even" : "odd");
        }
      },
      rule_);
}

}  // namespace orderly
