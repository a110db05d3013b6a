#include "orderly/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <unordered_set>

#include "orderly/error.hpp"

namespace orderly {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidSignature: return "InvalidSignature";
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::MalformedVariable: return "MalformedVariable";
    case ErrorKind::NotOrderly: return "NotOrderly";
    case ErrorKind::NotAdmissible: return "NotAdmissible";
    case ErrorKind::IndexBeyondPrefix: return "IndexBeyondPrefix";
    case ErrorKind::UniverseViolation: return "UniverseViolation";
    case ErrorKind::AlphabetContainsVariable: return "AlphabetContainsVariable";
    case ErrorKind::WrongSignature: return "WrongSignature";
    case ErrorKind::CongruenceViolation: return "CongruenceViolation";
    case ErrorKind::UniverseOverflow: return "UniverseOverflow";
    case ErrorKind::OddLength: return "OddLength";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::ColoringMismatch: return "ColoringMismatch";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

namespace {

bool looks_like_variable(std::string_view name) {
  return name.size() >= 2 && name[0] == 'v' &&
         std::all_of(name.begin() + 1, name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<VarIndex> parse_variable(std::string_view token) {
  if (token.size() < 2 || token[0] != 'v') return std::nullopt;
  auto digits = token.substr(1);
  if (digits.size() > 1 && digits[0] == '0') return std::nullopt;
  VarIndex index = 0;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    return std::nullopt;
  }
  return index;
}

// One past the end of the subterm starting at `start`.
std::size_t subterm_end(std::span<const Token> tokens, std::size_t start) {
  std::size_t pending = 1;
  std::size_t i = start;
  while (pending > 0) {
    pending = pending - 1 + tokens[i].arity();
    ++i;
  }
  return i;
}

}  // namespace

// Signature --------------------------------------------------------------

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
  std::unordered_set<std::string> seen;
  for (const auto& s : symbols_) {
    if (s.name.empty() ||
        std::any_of(s.name.begin(), s.name.end(),
                    [](unsigned char c) { return std::isspace(c); })) {
      throw Error(ErrorKind::InvalidSignature,
                  "symbol name '" + s.name + "' is empty or contains whitespace");
    }
    if (looks_like_variable(s.name)) {
      throw Error(ErrorKind::InvalidSignature,
                  "symbol name '" + s.name + "' collides with variable syntax");
    }
    if (s.arity == 0) {
      throw Error(ErrorKind::InvalidSignature,
                  "symbol '" + s.name + "' is nullary");
    }
    if (!seen.insert(s.name).second) {
      throw Error(ErrorKind::InvalidSignature,
                  "duplicate symbol '" + s.name + "'");
    }
  }
}

Signature Signature::binary(std::string name) {
  return Signature({Symbol{std::move(name), 2}});
}

std::optional<SymbolId> Signature::find(std::string_view name) const {
  for (SymbolId i = 0; i < symbols_.size(); ++i) {
    if (symbols_[i].name == name) return i;
  }
  return std::nullopt;
}

SymbolId Signature::id_of(std::string_view name) const {
  if (auto id = find(name)) return *id;
  throw Error(ErrorKind::UnknownSymbol,
              "unknown symbol '" + std::string(name) + "'");
}

std::optional<SymbolId> Signature::single_binary() const {
  if (symbols_.size() == 1 && symbols_[0].arity == 2) return SymbolId{0};
  return std::nullopt;
}

// Term -------------------------------------------------------------------

Term Term::var(VarIndex index) { return Term({Token::var(index)}); }

Term Term::apply(const Signature& sig, SymbolId symbol,
                 std::span<const Term> args) {
  const auto& s = sig[symbol];
  if (args.size() != s.arity) {
    throw Error(ErrorKind::ArityMismatch,
                "symbol '" + s.name + "' expects " + std::to_string(s.arity) +
                    " arguments, got " + std::to_string(args.size()));
  }
  std::vector<Token> tokens{Token::sym(symbol, s.arity)};
  for (const auto& a : args) {
    tokens.insert(tokens.end(), a.tokens_.begin(), a.tokens_.end());
  }
  return Term(std::move(tokens));
}

Term Term::apply(const Signature& sig, std::string_view symbol,
                 std::span<const Term> args) {
  return apply(sig, sig.id_of(symbol), args);
}

Term Term::from_tokens(std::vector<Token> tokens) {
  std::size_t pending = 1;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (pending == 0) {
      throw Error(ErrorKind::ArityMismatch, "extra tokens after complete term");
    }
    pending = pending - 1 + tokens[i].arity();
  }
  if (pending != 0) {
    throw Error(ErrorKind::ArityMismatch, "term is missing arguments");
  }
  return Term(std::move(tokens));
}

VarIndex Term::first_var() const {
  for (const auto& t : tokens_) {
    if (t.is_var()) return t.index();
  }
  return 0;  // unreachable for well-formed terms
}

VarIndex Term::last_var() const {
  for (auto it = tokens_.rbegin(); it != tokens_.rend(); ++it) {
    if (it->is_var()) return it->index();
  }
  return 0;
}

VarIndex Term::max_var() const {
  VarIndex m = 0;
  for (const auto& t : tokens_) {
    if (t.is_var()) m = std::max(m, t.index());
  }
  return m;
}

std::vector<Term> Term::arguments() const {
  std::vector<Term> out;
  if (is_var()) return out;
  std::size_t pos = 1;
  for (std::size_t k = 0; k < tokens_.front().arity(); ++k) {
    std::size_t end = subterm_end(tokens_, pos);
    out.push_back(Term(std::vector<Token>(tokens_.begin() + static_cast<std::ptrdiff_t>(pos),
                                          tokens_.begin() + static_cast<std::ptrdiff_t>(end))));
    pos = end;
  }
  return out;
}

std::size_t TermHash::operator()(const Term& t) const noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& tok : t.tokens()) {
    std::uint64_t word = (static_cast<std::uint64_t>(tok.arity()) << 32) | tok.index();
    h ^= word;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

bool CanonicalLess::operator()(const Term& a, const Term& b) const {
  if (a.size() != b.size()) return a.size() < b.size();
  auto ta = a.tokens();
  auto tb = b.tokens();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    const Token x = ta[i];
    const Token y = tb[i];
    if (x == y) continue;
    if (x.is_var() && y.is_var()) return x.index() < y.index();
    std::string_view nx = x.is_var() ? std::string_view("v") : (*sig_)[x.symbol()].name;
    std::string_view ny = y.is_var() ? std::string_view("v") : (*sig_)[y.symbol()].name;
    if (nx != ny) return nx < ny;
    return x.is_var() < y.is_var();
  }
  return false;
}

// Parsing and printing ----------------------------------------------------

Term parse_term(std::string_view text, const Signature& sig) {
  std::vector<std::string> words;
  {
    std::istringstream in{std::string(text)};
    std::string w;
    while (in >> w) words.push_back(std::move(w));
  }
  if (words.empty()) {
    throw Error(ErrorKind::ArityMismatch, "empty term");
  }
  std::vector<Token> tokens;
  tokens.reserve(words.size());
  std::size_t pending = 1;
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto& w = words[i];
    if (pending == 0) {
      throw Error(ErrorKind::ArityMismatch,
                  "extra tokens starting at '" + w + "'");
    }
    if (auto id = sig.find(w)) {
      tokens.push_back(Token::sym(*id, sig[*id].arity));
    } else if (auto index = parse_variable(w)) {
      tokens.push_back(Token::var(*index));
    } else if (!w.empty() && w[0] == 'v') {
      throw Error(ErrorKind::MalformedVariable,
                  "malformed variable '" + w + "'");
    } else {
      throw Error(ErrorKind::UnknownSymbol, "unknown symbol '" + w + "'");
    }
    pending = pending - 1 + tokens.back().arity();
  }
  if (pending != 0) {
    throw Error(ErrorKind::ArityMismatch,
                "term '" + std::string(text) + "' is missing " +
                    std::to_string(pending) + " argument(s)");
  }
  return Term::from_tokens(std::move(tokens));
}

std::string to_string(const Term& t, const Signature& sig) {
  std::string out;
  for (const auto& tok : t.tokens()) {
    if (!out.empty()) out += ' ';
    if (tok.is_var()) {
      out += 'v';
      out += std::to_string(tok.index());
    } else {
      out += sig[tok.symbol()].name;
    }
  }
  return out;
}

bool is_orderly(const Term& t) {
  bool seen = false;
  VarIndex previous = 0;
  for (const auto& tok : t.tokens()) {
    if (!tok.is_var()) continue;
    if (seen && tok.index() <= previous) return false;
    previous = tok.index();
    seen = true;
  }
  return true;
}

std::vector<VarIndex> variable_sequence(const Term& t) {
  std::vector<VarIndex> out;
  for (const auto& tok : t.tokens()) {
    if (tok.is_var()) out.push_back(tok.index());
  }
  return out;
}

std::set<VarIndex> variables_of(const Term& t) {
  auto seq = variable_sequence(t);
  return {seq.begin(), seq.end()};
}

// Orderly terms and admissible prefixes ----------------------------------

OrderlyTerm::OrderlyTerm(Term term) : term_(std::move(term)) {
  if (!is_orderly(term_)) {
    throw Error(ErrorKind::NotOrderly, "term is not orderly");
  }
}

OrderlyTerm OrderlyTerm::parse(std::string_view text, const Signature& sig) {
  Term t = parse_term(text, sig);
  if (!is_orderly(t)) {
    throw Error(ErrorKind::NotOrderly,
                "term '" + std::string(text) + "' is not orderly");
  }
  return OrderlyTerm(std::move(t));
}

bool term_lt(const OrderlyTerm& s, const OrderlyTerm& t) {
  return s.last_var() < t.first_var();
}

bool is_admissible(std::span<const OrderlyTerm> terms) {
  for (std::size_t i = 1; i < terms.size(); ++i) {
    if (!term_lt(terms[i - 1], terms[i])) return false;
  }
  return true;
}

AdmissiblePrefix::AdmissiblePrefix(std::vector<OrderlyTerm> terms)
    : terms_(std::move(terms)) {
  if (terms_.empty()) {
    throw Error(ErrorKind::NotAdmissible, "admissible prefix is empty");
  }
  for (std::size_t i = 1; i < terms_.size(); ++i) {
    if (!term_lt(terms_[i - 1], terms_[i])) {
      throw Error(ErrorKind::NotAdmissible,
                  "entries " + std::to_string(i - 1) + " and " +
                      std::to_string(i) + " are not <-increasing");
    }
  }
}

AdmissiblePrefix AdmissiblePrefix::identity(std::size_t length) {
  std::vector<OrderlyTerm> terms;
  terms.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    terms.push_back(OrderlyTerm::var(static_cast<VarIndex>(i)));
  }
  return AdmissiblePrefix(std::move(terms));
}

AdmissiblePrefix AdmissiblePrefix::parse(std::span<const std::string> texts,
                                         const Signature& sig) {
  std::vector<OrderlyTerm> terms;
  terms.reserve(texts.size());
  for (const auto& text : texts) terms.push_back(OrderlyTerm::parse(text, sig));
  return AdmissiblePrefix(std::move(terms));
}

OrderlyTerm substitute(const OrderlyTerm& s, std::span<const OrderlyTerm> prefix) {
  std::vector<Token> out;
  out.reserve(s.size() * 3);
  for (const auto& tok : s.term().tokens()) {
    if (!tok.is_var()) {
      out.push_back(tok);
      continue;
    }
    if (tok.index() >= prefix.size()) {
      throw Error(ErrorKind::IndexBeyondPrefix,
                  "index " + std::to_string(tok.index()) + " beyond prefix " +
                      std::to_string(prefix.size()));
    }
    auto repl = prefix[tok.index()].term().tokens();
    out.insert(out.end(), repl.begin(), repl.end());
  }
  return OrderlyTerm(Term::from_tokens(std::move(out)));
}

OrderlyTerm substitute(const OrderlyTerm& s, const AdmissiblePrefix& prefix) {
  return substitute(s, prefix.terms());
}

std::vector<OrderlyTerm> compose(std::span<const OrderlyTerm> outer,
                                 std::span<const OrderlyTerm> inner) {
  std::vector<OrderlyTerm> out;
  for (const auto& t : outer) {
    if (t.last_var() >= inner.size()) break;
    out.push_back(substitute(t, inner));
  }
  return out;
}

// Enumeration --------------------------------------------------------------

namespace {

class TermGenerator {
 public:
  TermGenerator(const Signature& sig, VarIndex max_index)
      : sig_(sig), max_index_(max_index) {}

  // All orderly terms of exactly `size` whose variables lie in [lo, max].
  const std::vector<Term>& exact(std::size_t size, VarIndex lo) {
    auto key = std::make_pair(size, lo);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    std::vector<Term> out;
    if (size == 1) {
      for (VarIndex i = lo; i <= max_index_; ++i) out.push_back(Term::var(i));
    } else {
      for (SymbolId f = 0; f < sig_.size(); ++f) {
        const std::size_t arity = sig_[f].arity;
        if (arity + 1 > size) continue;
        std::vector<Term> args;
        extend(f, arity, size - 1, lo, args, out);
      }
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  void extend(SymbolId f, std::size_t arity, std::size_t remaining, VarIndex lo,
              std::vector<Term>& args, std::vector<Term>& out) {
    const std::size_t left = arity - args.size();
    if (left == 0) {
      if (remaining == 0) out.push_back(Term::apply(sig_, f, args));
      return;
    }
    if (lo > max_index_) return;
    for (std::size_t s = 1; s + (left - 1) <= remaining; ++s) {
      const auto& candidates = exact(s, lo);
      for (const auto& t : candidates) {
        args.push_back(t);
        extend(f, arity, remaining - s, t.last_var() + 1, args, out);
        args.pop_back();
      }
    }
  }

  const Signature& sig_;
  VarIndex max_index_;
  std::map<std::pair<std::size_t, VarIndex>, std::vector<Term>> memo_;
};

}  // namespace

std::vector<OrderlyTerm> enumerate_orderly_terms(const Signature& sig,
                                                 std::size_t max_size,
                                                 VarIndex max_var_index) {
  TermGenerator gen(sig, max_var_index);
  std::vector<Term> all;
  for (std::size_t size = 1; size <= max_size; ++size) {
    const auto& layer = gen.exact(size, 0);
    all.insert(all.end(), layer.begin(), layer.end());
  }
  std::sort(all.begin(), all.end(), CanonicalLess(sig));
  std::vector<OrderlyTerm> out;
  out.reserve(all.size());
  for (auto& t : all) out.emplace_back(std::move(t));
  return out;
}

AdmissiblePrefixStream::AdmissiblePrefixStream(std::vector<OrderlyTerm> pool,
                                               std::size_t length)
    : pool_(std::move(pool)), length_(length), positions_(length, 0) {}

AdmissiblePrefixStream::AdmissiblePrefixStream(const Signature& sig,
                                               std::size_t length,
                                               std::size_t max_size,
                                               VarIndex max_var_index)
    : AdmissiblePrefixStream(enumerate_orderly_terms(sig, max_size, max_var_index),
                             length) {}

void AdmissiblePrefixStream::reset() {
  started_ = false;
  done_ = false;
}

bool AdmissiblePrefixStream::fits(std::size_t level, std::size_t candidate) const {
  return level == 0 || term_lt(pool_[positions_[level - 1]], pool_[candidate]);
}

bool AdmissiblePrefixStream::fill_from(std::size_t level, std::size_t start) {
  if (level == length_) return true;
  for (std::size_t j = start; j < pool_.size(); ++j) {
    if (!fits(level, j)) continue;
    positions_[level] = j;
    if (fill_from(level + 1, 0)) return true;
  }
  return false;
}

std::optional<AdmissiblePrefix> AdmissiblePrefixStream::next() {
  if (done_ || length_ == 0) return std::nullopt;
  bool ok = false;
  if (!started_) {
    started_ = true;
    ok = fill_from(0, 0);
  } else {
    // Advance the deepest position that still has a successor.
    for (std::size_t level = length_; level-- > 0;) {
      if (fill_from(level, positions_[level] + 1)) {
        ok = true;
        break;
      }
    }
  }
  if (!ok) {
    done_ = true;
    return std::nullopt;
  }
  std::vector<OrderlyTerm> terms;
  terms.reserve(length_);
  for (auto p : positions_) terms.push_back(pool_[p]);
  return AdmissiblePrefix(std::move(terms));
}

namespace {

bool increasing_tuples(std::span<const OrderlyTerm> pool, std::size_t n,
                       std::vector<std::size_t>& chosen,
                       const std::function<bool(std::span<const std::size_t>)>& fn) {
  if (chosen.size() == n) return fn(chosen);
  for (std::size_t j = 0; j < pool.size(); ++j) {
    if (!chosen.empty() && !term_lt(pool[chosen.back()], pool[j])) continue;
    chosen.push_back(j);
    bool keep_going = increasing_tuples(pool, n, chosen, fn);
    chosen.pop_back();
    if (!keep_going) return false;
  }
  return true;
}

}  // namespace

void for_each_increasing_tuple(
    std::span<const OrderlyTerm> pool, std::size_t n,
    const std::function<bool(std::span<const std::size_t>)>& fn) {
  if (n == 0) return;
  std::vector<std::size_t> chosen;
  chosen.reserve(n);
  increasing_tuples(pool, n, chosen, fn);
}

std::vector<AdmissiblePrefix> enumerate_admissible_prefixes(
    const Signature& sig, std::size_t length, std::size_t max_size,
    VarIndex max_var_index) {
  AdmissiblePrefixStream stream(sig, length, max_size, max_var_index);
  std::vector<AdmissiblePrefix> out;
  while (auto p = stream.next()) out.push_back(std::move(*p));
  return out;
}

}  // namespace orderly
