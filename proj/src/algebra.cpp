#include "orderly/algebra.hpp"

#include <algorithm>
#include <cctype>

#include "orderly/error.hpp"

namespace orderly {

namespace {

constexpr char kVariableLetter = 'v';

[[noreturn]] void universe_violation(const std::string& what) {
  throw Error(ErrorKind::UniverseViolation, what);
}

bool is_variable_word(const std::string& w, const std::string& alphabet) {
  bool has_var = false;
  for (char c : w) {
    if (c == kVariableLetter) {
      has_var = true;
    } else if (alphabet.find(c) == std::string::npos) {
      return false;
    }
  }
  return has_var;
}

std::string substitute_letter(std::string w, char letter) {
  std::replace(w.begin(), w.end(), kVariableLetter, letter);
  return w;
}

const std::string& word_arg(const Value& v, const std::string& alphabet) {
  const auto* s = v.as_symbol();
  if (s == nullptr || !is_variable_word(*s, alphabet)) {
    universe_violation("'" + to_string(v) + "' is not a variable word over '" +
                       alphabet + "'");
  }
  return *s;
}

// Enumerates U^arity in table order (first argument most significant).
template <typename Fn>
void for_each_cell(std::size_t universe_size, std::size_t arity, Fn&& fn) {
  std::vector<std::size_t> digits(arity, 0);
  std::size_t total = 1;
  for (std::size_t i = 0; i < arity; ++i) total *= universe_size;
  for (std::size_t cell = 0; cell < total; ++cell) {
    fn(cell, std::span<const std::size_t>(digits));
    for (std::size_t k = arity; k-- > 0;) {
      if (++digits[k] < universe_size) break;
      digits[k] = 0;
    }
  }
}

}  // namespace

std::string concat_right_name(char letter) { return std::string("catr_") + letter; }
std::string concat_left_name(char letter) { return std::string("catl_") + letter; }

Algebra Algebra::table(Signature sig, std::vector<Value> universe,
                       const std::map<std::string, OperationTable>& ops) {
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  if (universe.empty()) {
    throw Error(ErrorKind::InvalidInput, "table algebra has an empty universe");
  }
  TableOps t;
  t.universe = std::move(universe);
  for (std::size_t i = 0; i < t.universe.size(); ++i) t.position[t.universe[i]] = i;

  for (const auto& [name, _] : ops) {
    if (!sig.find(name)) {
      throw Error(ErrorKind::UnknownSymbol,
                  "table given for unknown symbol '" + name + "'");
    }
  }
  const std::size_t n = t.universe.size();
  for (SymbolId f = 0; f < sig.size(); ++f) {
    const auto& sym = sig[f];
    auto it = ops.find(sym.name);
    if (it == ops.end()) {
      universe_violation("no table for symbol '" + sym.name + "'");
    }
    std::vector<std::size_t> cells;
    std::vector<Value> args(sym.arity);
    for_each_cell(n, sym.arity, [&](std::size_t, std::span<const std::size_t> digits) {
      for (std::size_t k = 0; k < sym.arity; ++k) args[k] = t.universe[digits[k]];
      auto entry = it->second.find(args);
      if (entry == it->second.end()) {
        std::string key;
        for (const auto& a : args) key += (key.empty() ? "" : ",") + to_string(a);
        universe_violation("table for '" + sym.name + "' has no entry for (" + key + ")");
      }
      auto pos = t.position.find(entry->second);
      if (pos == t.position.end()) {
        universe_violation("table for '" + sym.name + "' leaves the universe with '" +
                           to_string(entry->second) + "'");
      }
      cells.push_back(pos->second);
    });
    if (it->second.size() != cells.size()) {
      universe_violation("table for '" + sym.name + "' has entries outside the universe");
    }
    t.cells.push_back(std::move(cells));
  }
  return Algebra(std::move(sig), std::move(t));
}

Algebra Algebra::nat_add(std::string symbol) {
  return Algebra(Signature::binary(std::move(symbol)), NatAddOps{});
}

Algebra Algebra::variable_words(std::string alphabet) {
  if (alphabet.empty()) {
    throw Error(ErrorKind::InvalidInput, "variable-word alphabet is empty");
  }
  std::string seen;
  for (char c : alphabet) {
    if (c == kVariableLetter) {
      throw Error(ErrorKind::AlphabetContainsVariable,
                  "alphabet '" + alphabet + "' contains the variable letter 'v'");
    }
    if (!std::isalnum(static_cast<unsigned char>(c)) ||
        seen.find(c) != std::string::npos) {
      throw Error(ErrorKind::InvalidInput,
                  "alphabet letters must be distinct alphanumerics");
    }
    seen += c;
  }
  std::vector<Symbol> symbols{{"cat", 2}};
  for (char c : alphabet) {
    symbols.push_back({concat_right_name(c), 2});
    symbols.push_back({concat_left_name(c), 2});
  }
  return Algebra(Signature(std::move(symbols)), VariableWordOps{std::move(alphabet)});
}

Algebra Algebra::pair(Algebra inner) {
  if (!inner.signature().single_binary()) {
    throw Error(ErrorKind::WrongSignature,
                "pair algebra needs an inner algebra with exactly one binary symbol");
  }
  Signature sig = inner.signature();
  return Algebra(std::move(sig),
                 PairOps{std::make_shared<const Algebra>(std::move(inner))});
}

Value Algebra::apply(SymbolId symbol, std::span<const Value> args) const {
  return std::visit(
      [&](const auto& ops) -> Value {
        using T = std::decay_t<decltype(ops)>;
        if constexpr (std::is_same_v<T, TableOps>) {
          std::size_t offset = 0;
          for (const auto& a : args) {
            auto it = ops.position.find(a);
            if (it == ops.position.end()) {
              universe_violation("'" + to_string(a) + "' is not in the table universe");
            }
            offset = offset * ops.universe.size() + it->second;
          }
          return ops.universe[ops.cells[symbol][offset]];
        } else if constexpr (std::is_same_v<T, NatAddOps>) {
          Integer sum = 0;
          for (const auto& a : args) {
            const auto* n = a.as_integer();
            if (n == nullptr || *n < 1) {
              universe_violation("'" + to_string(a) + "' is not a positive integer");
            }
            sum += *n;
          }
          return Value(std::move(sum));
        } else if constexpr (std::is_same_v<T, VariableWordOps>) {
          const auto& w = word_arg(args[0], ops.alphabet);
          const auto& w2 = word_arg(args[1], ops.alphabet);
          if (symbol == 0) return Value(w + w2);
          const char letter = ops.alphabet[(symbol - 1) / 2];
          if ((symbol - 1) % 2 == 0) return Value(w + substitute_letter(w2, letter));
          return Value(substitute_letter(w, letter) + w2);
        } else {
          const auto* p = args[0].as_tuple();
          const auto* q = args[1].as_tuple();
          if (p == nullptr || q == nullptr || p->size() != 2 || q->size() != 2) {
            universe_violation("pair algebra arguments must be pairs");
          }
          return Value::pair(ops.inner->apply(0, *p), ops.inner->apply(0, *q));
        }
      },
      ops_);
}

bool Algebra::contains(const Value& v) const {
  return std::visit(
      [&](const auto& ops) -> bool {
        using T = std::decay_t<decltype(ops)>;
        if constexpr (std::is_same_v<T, TableOps>) {
          return ops.position.contains(v);
        } else if constexpr (std::is_same_v<T, NatAddOps>) {
          const auto* n = v.as_integer();
          return n != nullptr && *n >= 1;
        } else if constexpr (std::is_same_v<T, VariableWordOps>) {
          const auto* s = v.as_symbol();
          return s != nullptr && is_variable_word(*s, ops.alphabet);
        } else {
          const auto* p = v.as_tuple();
          return p != nullptr && p->size() == 2 && ops.inner->contains((*p)[0]) &&
                 ops.inner->contains((*p)[1]);
        }
      },
      ops_);
}

void Algebra::check_assignment(std::span<const Value> a) const {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!contains(a[i])) {
      universe_violation("assignment entry " + std::to_string(i) + " ('" +
                         to_string(a[i]) + "') is outside the universe of " + name());
    }
  }
}

std::optional<std::span<const Value>> Algebra::finite_universe() const {
  if (const auto* t = as_table()) return std::span<const Value>(t->universe);
  return std::nullopt;
}

OperationTable Algebra::table_of(SymbolId symbol) const {
  OperationTable out;
  const auto* t = as_table();
  if (t == nullptr) return out;
  const std::size_t arity = sig_[symbol].arity;
  std::vector<Value> args(arity);
  for_each_cell(t->universe.size(), arity,
                [&](std::size_t cell, std::span<const std::size_t> digits) {
                  for (std::size_t k = 0; k < arity; ++k) args[k] = t->universe[digits[k]];
                  out.emplace(args, t->universe[t->cells[symbol][cell]]);
                });
  return out;
}

std::string Algebra::name() const {
  return std::visit(
      [](const auto& ops) -> std::string {
        using T = std::decay_t<decltype(ops)>;
        if constexpr (std::is_same_v<T, TableOps>) {
          return "table";
        } else if constexpr (std::is_same_v<T, NatAddOps>) {
          return "nat-add";
        } else if constexpr (std::is_same_v<T, VariableWordOps>) {
          return "variable-words:" + ops.alphabet;
        } else {
          return "pair:" + ops.inner->name();
        }
      },
      ops_);
}

Value eval(const Term& t, const Algebra& alg, std::span<const Value> a) {
  auto tokens = t.tokens();
  std::vector<Value> stack;
  stack.reserve(tokens.size());
  std::vector<Value> args;
  for (auto it = tokens.rbegin(); it != tokens.rend(); ++it) {
    if (it->is_var()) {
      if (it->index() >= a.size()) {
        throw Error(ErrorKind::IndexBeyondPrefix,
                    "index " + std::to_string(it->index()) + " beyond prefix " +
                        std::to_string(a.size()));
      }
      stack.push_back(a[it->index()]);
      continue;
    }
    args.clear();
    for (std::size_t k = 0; k < it->arity(); ++k) {
      args.push_back(std::move(stack.back()));
      stack.pop_back();
    }
    stack.push_back(alg.apply(it->symbol(), args));
  }
  return std::move(stack.back());
}

Assignment reduce_sequence(const Algebra& alg, std::span<const Value> a,
                           const AdmissiblePrefix& witness) {
  Assignment out;
  out.reserve(witness.size());
  for (const auto& t : witness.terms()) out.push_back(eval(t, alg, a));
  return out;
}

FiniteReductionSet finite_reductions(const Algebra& alg, std::span<const Value> a,
                                     std::size_t max_size) {
  FiniteReductionSet out;
  if (a.empty() || max_size == 0) return out;
  for (auto& t : enumerate_orderly_terms(alg.signature(), max_size,
                                         static_cast<VarIndex>(a.size() - 1))) {
    Value v = eval(t, alg, a);
    out.values.insert(v);
    out.entries.push_back({std::move(t), std::move(v)});
  }
  return out;
}

std::vector<Value::Tuple> tuple_reductions(const Algebra& alg,
                                           std::span<const Value> a,
                                           std::size_t n, std::size_t max_size) {
  std::set<Value::Tuple> found;
  if (a.empty() || max_size == 0 || n == 0) return {};
  auto fr = finite_reductions(alg, a, max_size);
  std::vector<OrderlyTerm> pool;
  pool.reserve(fr.entries.size());
  for (const auto& e : fr.entries) pool.push_back(e.term);
  for_each_increasing_tuple(pool, n, [&](std::span<const std::size_t> idx) {
    Value::Tuple tuple;
    tuple.reserve(n);
    for (auto i : idx) tuple.push_back(fr.entries[i].value);
    found.insert(std::move(tuple));
    return true;
  });
  return {found.begin(), found.end()};
}

Assignment interleave(std::span<const Value> pairs) {
  Assignment out;
  out.reserve(pairs.size() * 2);
  for (const auto& p : pairs) {
    const auto* t = p.as_tuple();
    if (t == nullptr || t->size() != 2) {
      throw Error(ErrorKind::UniverseViolation,
                  "'" + to_string(p) + "' is not a pair");
    }
    out.push_back((*t)[0]);
    out.push_back((*t)[1]);
  }
  return out;
}

}  // namespace orderly
