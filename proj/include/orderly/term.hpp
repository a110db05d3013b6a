#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace orderly {

using SymbolId = std::uint32_t;
using VarIndex = std::uint32_t;

struct Symbol {
  std::string name;
  std::size_t arity = 0;

  bool operator==(const Symbol&) const = default;
};

// The function symbols of a purely functional language. No constants:
// every arity is at least one, so every term mentions a variable.
class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<Symbol> symbols);

  // The one-binary-symbol language {f}.
  static Signature binary(std::string name = "f");

  std::span<const Symbol> symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  const Symbol& operator[](SymbolId id) const { return symbols_.at(id); }

  std::optional<SymbolId> find(std::string_view name) const;
  SymbolId id_of(std::string_view name) const;  // throws UnknownSymbol

  // The symbol id when the language is exactly one binary symbol.
  std::optional<SymbolId> single_binary() const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<Symbol> symbols_;
};

// One position of a term in Polish (prefix) notation.
class Token {
 public:
  static constexpr Token var(VarIndex index) { return Token(index, 0); }
  static constexpr Token sym(SymbolId id, std::size_t arity) {
    return Token(id, static_cast<std::uint32_t>(arity));
  }

  constexpr bool is_var() const { return arity_ == 0; }
  constexpr VarIndex index() const { return value_; }
  constexpr SymbolId symbol() const { return value_; }
  constexpr std::size_t arity() const { return arity_; }

  constexpr bool operator==(const Token&) const = default;

 private:
  constexpr Token(std::uint32_t value, std::uint32_t arity)
      : value_(value), arity_(arity) {}

  std::uint32_t value_;
  std::uint32_t arity_;
};

// A term stored as its Polish token sequence. Well-formedness is established
// by the factory functions and the parser; the token vector is never exposed
// mutably.
class Term {
 public:
  static Term var(VarIndex index);
  static Term apply(const Signature& sig, SymbolId symbol,
                    std::span<const Term> args);
  static Term apply(const Signature& sig, std::string_view symbol,
                    std::span<const Term> args);
  static Term from_tokens(std::vector<Token> tokens);  // checks arity balance

  std::span<const Token> tokens() const { return tokens_; }
  std::size_t size() const { return tokens_.size(); }
  bool is_var() const { return tokens_.size() == 1; }

  VarIndex first_var() const;
  VarIndex last_var() const;
  VarIndex max_var() const;

  // Head symbol and immediate subterms; empty for a variable.
  std::vector<Term> arguments() const;

  bool operator==(const Term&) const = default;

 private:
  explicit Term(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  std::vector<Token> tokens_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept;
};

// Canonical order: size first, then token by token, where a variable compares
// as the text "v" followed by its numeric index and a symbol by its name.
class CanonicalLess {
 public:
  explicit CanonicalLess(const Signature& sig) : sig_(&sig) {}
  bool operator()(const Term& a, const Term& b) const;

 private:
  const Signature* sig_;
};

Term parse_term(std::string_view text, const Signature& sig);
std::string to_string(const Term& t, const Signature& sig);

bool is_orderly(const Term& t);

// Variable indices in order of occurrence; for orderly terms this is the
// sorted variable set.
std::vector<VarIndex> variable_sequence(const Term& t);
std::set<VarIndex> variables_of(const Term& t);

// A term whose variable indices strictly increase left to right.
class OrderlyTerm {
 public:
  explicit OrderlyTerm(Term term);  // throws NotOrderly
  static OrderlyTerm var(VarIndex index) { return OrderlyTerm(Term::var(index)); }
  static OrderlyTerm parse(std::string_view text, const Signature& sig);

  const Term& term() const { return term_; }
  operator const Term&() const { return term_; }  // NOLINT
  std::size_t size() const { return term_.size(); }
  VarIndex first_var() const { return term_.first_var(); }
  VarIndex last_var() const { return term_.last_var(); }

  bool operator==(const OrderlyTerm&) const = default;

 private:
  Term term_;
};

// s < t: the last variable of s precedes the first variable of t.
bool term_lt(const OrderlyTerm& s, const OrderlyTerm& t);

// A nonempty finite prefix of an admissible sequence.
class AdmissiblePrefix {
 public:
  explicit AdmissiblePrefix(std::vector<OrderlyTerm> terms);  // throws NotAdmissible
  static AdmissiblePrefix identity(std::size_t length);
  static AdmissiblePrefix parse(std::span<const std::string> texts,
                                const Signature& sig);

  std::span<const OrderlyTerm> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  const OrderlyTerm& operator[](std::size_t i) const { return terms_.at(i); }

  bool operator==(const AdmissiblePrefix&) const = default;

 private:
  std::vector<OrderlyTerm> terms_;
};

// Whether a (possibly empty) list of orderly terms is <-increasing.
bool is_admissible(std::span<const OrderlyTerm> terms);

// s[t]: every v_i in s replaced by t(i). Throws IndexBeyondPrefix when s
// mentions an index the prefix does not reach.
OrderlyTerm substitute(const OrderlyTerm& s, std::span<const OrderlyTerm> prefix);
OrderlyTerm substitute(const OrderlyTerm& s, const AdmissiblePrefix& prefix);

// The witness of a reduction of a reduction: <t(i)[u]>_i, keeping only the
// leading entries that u covers. May be empty.
std::vector<OrderlyTerm> compose(std::span<const OrderlyTerm> outer,
                                 std::span<const OrderlyTerm> inner);

// Size counts symbol and variable occurrences.
struct Bounds {
  std::size_t max_size = 1;
  VarIndex max_index = 0;

  bool operator==(const Bounds&) const = default;
};

// Every orderly term within the bounds, in canonical order.
std::vector<OrderlyTerm> enumerate_orderly_terms(const Signature& sig,
                                                 std::size_t max_size,
                                                 VarIndex max_var_index);

// Streams the <-increasing lists of `length` terms drawn from a canonical
// term list, in lexicographic order over positions. Restartable via reset().
class AdmissiblePrefixStream {
 public:
  AdmissiblePrefixStream(std::vector<OrderlyTerm> pool, std::size_t length);
  AdmissiblePrefixStream(const Signature& sig, std::size_t length,
                         std::size_t max_size, VarIndex max_var_index);

  std::optional<AdmissiblePrefix> next();
  void reset();

 private:
  bool fill_from(std::size_t level, std::size_t start);
  bool fits(std::size_t level, std::size_t candidate) const;

  std::vector<OrderlyTerm> pool_;
  std::size_t length_;
  std::vector<std::size_t> positions_;
  bool started_ = false;
  bool done_ = false;
};

// Calls fn with every list of pool indices whose terms are <-increasing,
// lexicographically over positions; stops early when fn returns false.
void for_each_increasing_tuple(
    std::span<const OrderlyTerm> pool, std::size_t n,
    const std::function<bool(std::span<const std::size_t>)>& fn);

std::vector<AdmissiblePrefix> enumerate_admissible_prefixes(
    const Signature& sig, std::size_t length, std::size_t max_size,
    VarIndex max_var_index);

}  // namespace orderly
