#include "orderly/json.hpp"

#include <limits>

#include "orderly/error.hpp"

namespace orderly {

namespace {

[[noreturn]] void invalid(const std::string& what) {
  throw Error(ErrorKind::InvalidInput, what);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    invalid(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_string()) invalid(std::string("field '") + key + "' must be a string");
  return f.get<std::string>();
}

std::size_t count_field(const Json& j, const char* key) {
  const Json& f = field(j, key);
  if (!f.is_number_unsigned() && !(f.is_number_integer() && f.get<std::int64_t>() >= 0)) {
    invalid(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return f.get<std::size_t>();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_unsigned()) return Integer(j.get<std::uint64_t>());
  if (j.is_number_integer()) return Integer(j.get<std::int64_t>());
  if (j.is_object() && j.contains("int") && j.at("int").is_string()) {
    try {
      return Integer(j.at("int").get<std::string>());
    } catch (const std::exception&) {
      invalid("'" + j.at("int").get<std::string>() + "' is not an integer");
    }
  }
  invalid("expected an integer, got " + j.dump());
}

Json integer_to_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() &&
      n <= std::numeric_limits<std::int64_t>::max()) {
    return Json(static_cast<std::int64_t>(n));
  }
  return Json{{"int", n.str()}};
}

std::string cell_key(std::span<const Value> args) {
  std::string key;
  for (const auto& a : args) key += (key.empty() ? "" : ",") + to_string(a);
  return key;
}

Algebra table_from_json(const Json& j) {
  const Json& universe_json = field(j, "universe");
  const Json& ops_json = field(j, "ops");
  if (!universe_json.is_array() || !ops_json.is_object()) {
    invalid("table algebra needs a 'universe' array and an 'ops' object");
  }
  std::vector<Value> universe;
  for (const auto& u : universe_json) universe.push_back(value_from_json(u));
  std::vector<Value> sorted = universe;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<Symbol> symbols;
  std::map<std::string, OperationTable> ops;
  for (const auto& [name, op] : ops_json.items()) {
    const std::size_t arity = count_field(op, "arity");
    const Json& table = field(op, "table");
    if (!table.is_object()) invalid("table for '" + name + "' must be an object");
    symbols.push_back({name, arity});

    // Keys are matched by rendering every cell of U^arity.
    OperationTable cells;
    std::size_t matched = 0;
    std::size_t total = 1;
    for (std::size_t k = 0; k < arity; ++k) total *= sorted.size();
    std::vector<Value> args(arity);
    for (std::size_t cell = 0; cell < total; ++cell) {
      std::size_t rest = cell;
      for (std::size_t k = arity; k-- > 0;) {
        args[k] = sorted[rest % sorted.size()];
        rest /= sorted.size();
      }
      if (auto it = table.find(cell_key(args)); it != table.end()) {
        cells.emplace(args, value_from_json(*it));
        ++matched;
      }
    }
    if (matched != table.size()) {
      for (const auto& [key, _] : table.items()) {
        bool known = false;
        for (const auto& [cell, __] : cells) known = known || cell_key(cell) == key;
        if (!known) {
          throw Error(ErrorKind::UniverseViolation,
                      "table for '" + name + "' has key '" + key +
                          "' outside the universe");
        }
      }
    }
    ops.emplace(name, std::move(cells));
  }
  return Algebra::table(Signature(std::move(symbols)), std::move(universe), ops);
}

Algebra builtin_from_name(const std::string& name) {
  if (name == "nat-add") return Algebra::nat_add();
  const std::string words = "variable-words:";
  if (name.rfind(words, 0) == 0) return Algebra::variable_words(name.substr(words.size()));
  const std::string pair = "pair:";
  if (name.rfind(pair, 0) == 0) return Algebra::pair(builtin_from_name(name.substr(pair.size())));
  invalid("unknown algebra '" + name + "'");
}

Signature signature_or(const Json& j, const Signature& fallback) {
  if (j.contains("signature")) return signature_from_json(j.at("signature"));
  return fallback;
}

OrderlyView view_impl(const Json& j, const Signature& fallback) {
  const std::string kind = string_field(j, "kind");
  if (kind == "induced") {
    Algebra alg = algebra_from_json(field(j, "algebra"));
    return OrderlyView::induced(std::move(alg), assignment_from_json(field(j, "assignment")));
  }
  if (kind == "reduced") {
    OrderlyView base = view_impl(field(j, "base"), fallback);
    return reduce_view(base, prefix_from_json(field(j, "witness"), base.signature()));
  }
  if (kind == "trivial") {
    return OrderlyView::trivial(signature_or(j, fallback), value_from_json(field(j, "value")));
  }
  if (kind == "index-set") return OrderlyView::index_set(signature_or(j, fallback));
  if (kind == "free") return OrderlyView::free(signature_or(j, fallback));
  if (kind == "sharp") return OrderlyView::sharp(view_impl(field(j, "base"), fallback));
  if (kind == "patched") {
    OrderlyView base = view_impl(field(j, "base"), fallback);
    auto at = OrderlyTerm::parse(string_field(j, "term"), base.signature());
    return OrderlyView::patched(std::move(base), std::move(at),
                                value_from_json(field(j, "value")));
  }
  invalid("unknown view kind '" + kind + "'");
}

Coloring coloring_impl(const Json& j) {
  const std::string kind = string_field(j, "kind");
  if (kind == "residue") {
    std::set<Integer> accept;
    const Json& a = field(j, "accept");
    if (!a.is_array()) invalid("'accept' must be an array");
    for (const auto& r : a) accept.insert(integer_from_json(r));
    return Coloring::residue(integer_from_json(field(j, "modulus")), std::move(accept));
  }
  if (kind == "member") {
    std::set<Value> members;
    const Json& s = field(j, "set");
    if (!s.is_array()) invalid("'set' must be an array");
    for (const auto& m : s) members.insert(value_from_json(m));
    return Coloring::member(std::move(members));
  }
  if (kind == "leading-parity") {
    const std::string parity = j.contains("parity") ? string_field(j, "parity") : "even";
    if (parity != "even" && parity != "odd") invalid("parity must be 'even' or 'odd'");
    return Coloring::leading_parity(string_field(j, "symbol"),
                                    parity == "even" ? Parity::Even : Parity::Odd);
  }
  if (kind == "component") {
    return Coloring::component(coloring_impl(field(j, "inner")), count_field(j, "index"));
  }
  invalid("unknown coloring kind '" + kind + "'");
}

// Runs fn, turning library-level JSON exceptions into InvalidInput.
template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    invalid(e.what());
  }
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    invalid(std::string("malformed JSON: ") + e.what());
  }
}

Signature signature_from_json(const Json& j) {
  return guarded([&] {
    const Json& list = field(j, "symbols");
    if (!list.is_array()) invalid("'symbols' must be an array");
    std::vector<Symbol> symbols;
    for (const auto& s : list) symbols.push_back({string_field(s, "name"), count_field(s, "arity")});
    return Signature(std::move(symbols));
  });
}

Json to_json(const Signature& sig) {
  Json list = Json::array();
  for (const auto& s : sig.symbols()) list.push_back({{"name", s.name}, {"arity", s.arity}});
  return {{"symbols", list}};
}

Value value_from_json(const Json& j) {
  return guarded([&]() -> Value {
    if (j.is_number_integer()) return Value(integer_from_json(j));
    if (j.is_string()) return Value(j.get<std::string>());
    if (j.is_array()) {
      Value::Tuple t;
      for (const auto& e : j) t.push_back(value_from_json(e));
      return Value(std::move(t));
    }
    if (j.is_object() && j.size() == 1) {
      if (j.contains("int")) return Value(integer_from_json(j));
      if (j.contains("term")) return Value(TermText{string_field(j, "term")});
      if (j.contains("indices")) {
        std::set<VarIndex> s;
        for (const auto& i : j.at("indices")) s.insert(i.get<VarIndex>());
        return Value::indices(s);
      }
    }
    invalid("not a value: " + j.dump());
  });
}

Json to_json(const Value& v) {
  if (const auto* n = v.as_integer()) return integer_to_json(*n);
  if (const auto* s = v.as_symbol()) return Json(*s);
  if (const auto* t = v.as_tuple()) {
    Json out = Json::array();
    for (const auto& e : *t) out.push_back(to_json(e));
    return out;
  }
  if (const auto* s = v.as_index_set()) return Json{{"indices", s->indices}};
  return Json{{"term", v.as_term()->text}};
}

Assignment assignment_from_json(const Json& j) {
  if (!j.is_array()) invalid("an assignment must be a JSON array");
  Assignment a;
  for (const auto& e : j) a.push_back(value_from_json(e));
  return a;
}

Json to_json(std::span<const Value> values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(to_json(v));
  return out;
}

std::vector<OrderlyTerm> terms_from_json(const Json& j, const Signature& sig) {
  return guarded([&] {
    const Json& list = j.is_object() ? field(j, "terms") : j;
    if (!list.is_array()) invalid("expected an array of term texts");
    std::vector<OrderlyTerm> out;
    for (const auto& t : list) {
      if (!t.is_string()) invalid("term entries must be strings");
      out.push_back(OrderlyTerm::parse(t.get<std::string>(), sig));
    }
    return out;
  });
}

AdmissiblePrefix prefix_from_json(const Json& j, const Signature& sig) {
  return AdmissiblePrefix(terms_from_json(j, sig));
}

Json to_json(std::span<const OrderlyTerm> terms, const Signature& sig) {
  Json out = Json::array();
  for (const auto& t : terms) out.push_back(to_string(t, sig));
  return out;
}

Algebra algebra_from_json(const Json& j) {
  return guarded([&] {
    if (j.is_string()) return builtin_from_name(j.get<std::string>());
    if (j.is_object() && j.contains("pair")) return Algebra::pair(algebra_from_json(j.at("pair")));
    return table_from_json(j);
  });
}

Json to_json(const Algebra& alg) {
  if (const auto* p = alg.as_pair()) {
    if (p->inner->as_table() != nullptr) return Json{{"pair", to_json(*p->inner)}};
  }
  const auto* t = alg.as_table();
  if (t == nullptr) return Json(alg.name());
  Json ops = Json::object();
  const auto& sig = alg.signature();
  for (SymbolId f = 0; f < sig.size(); ++f) {
    Json table = Json::object();
    for (const auto& [args, result] : alg.table_of(f)) table[cell_key(args)] = to_json(result);
    ops[sig[f].name] = {{"arity", sig[f].arity}, {"table", table}};
  }
  return {{"universe", to_json(std::span<const Value>(t->universe))}, {"ops", ops}};
}

OrderlyView view_from_json(const Json& j, const Signature& fallback) {
  return guarded([&] { return view_impl(j, fallback); });
}

Coloring coloring_from_json(const Json& j) {
  return guarded([&] { return coloring_impl(j); });
}

Json to_json(const Coloring& c) {
  if (const auto* m = c.as<MemberColoring>()) {
    Json set = Json::array();
    for (const auto& v : m->members) set.push_back(to_json(v));
    return {{"kind", "member"}, {"set", set}};
  }
  if (const auto* r = c.as<ResidueColoring>()) {
    Json accept = Json::array();
    for (const auto& a : r->accept) accept.push_back(integer_to_json(a));
    return {{"kind", "residue"}, {"modulus", integer_to_json(r->modulus)}, {"accept", accept}};
  }
  if (const auto* k = c.as<ComponentColoring>()) {
    return {{"kind", "component"}, {"index", k->index}, {"inner", to_json(*k->inner)}};
  }
  const auto* p = c.as<LeadingParityColoring>();
  return {{"kind", "leading-parity"},
          {"symbol", p->symbol},
          {"parity", p->parity == Parity::Even ? "even" : "odd"}};
}

Json to_json(const Bounds& b) {
  return {{"max_size", b.max_size}, {"max_index", b.max_index}};
}

namespace {

Json violations_json(const std::vector<Violation>& vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    Json entry = {{"terms", v.terms}};
    if (!v.values.empty()) entry["values"] = to_json(std::span<const Value>(v.values));
    entry["note"] = v.note;
    out.push_back(std::move(entry));
  }
  return out;
}

}  // namespace

Json to_json(const CheckReport& r) {
  return {{"check", r.check},
          {"bounds", to_json(r.bounds)},
          {"checked", r.checked},
          {"skipped", r.skipped},
          {"violation_count", r.violation_count},
          {"violations", violations_json(r.violations)},
          {"passed", r.passed()}};
}

Json to_json(const SharpLiftReport& r) {
  const CheckReport* parts[] = {&r.witness_identity, &r.pair_identity, &r.reduction};
  std::size_t checked = 0;
  std::size_t count = 0;
  std::vector<Violation> all;
  Json detail = Json::array();
  for (const auto* p : parts) {
    checked += p->checked;
    count += p->violation_count;
    all.insert(all.end(), p->violations.begin(), p->violations.end());
    detail.push_back(to_json(*p));
  }
  return {{"claim", "1010a"},
          {"bounds", to_json(r.witness_identity.bounds)},
          {"checked", checked},
          {"violation_count", count},
          {"violations", violations_json(all)},
          {"parts", detail},
          {"passed", r.passed()}};
}

Json to_json(const SemigroupReport& r) {
  return {{"check", "semigroup"},
          {"bounds", to_json(r.bracketing.bounds)},
          {"checked", r.bracketing.checked + r.same_variables.checked},
          {"violation_count", r.bracketing.violation_count + r.same_variables.violation_count},
          {"parts", {to_json(r.bracketing), to_json(r.same_variables)}},
          {"passed", r.passed()}};
}

Json to_json(const Reconstruction& r) {
  return {{"algebra", to_json(r.algebra)},
          {"assignment", to_json(std::span<const Value>(r.assignment))},
          {"realized", r.realized},
          {"defaulted", r.defaulted}};
}

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::Found: return "found";
    case Outcome::Exhausted: return "exhausted";
    case Outcome::TimedOut: return "timed-out";
  }
  return "unknown";
}

std::string_view to_string(Side s) {
  switch (s) {
    case Side::Contained: return "contained";
    case Side::Disjoint: return "disjoint";
    case Side::Constant: return "constant";
  }
  return "unknown";
}

Json to_json(const SearchResult& r, const Signature& sig) {
  Json out = {{"outcome", to_string(r.outcome)}, {"tuple_arity", r.tuple_arity}};
  if (r.witness) {
    out["witness"] = to_json(r.witness->terms(), sig);
    out["side"] = to_string(r.side);
    Json cert = Json::array();
    for (const auto& e : r.certificate) {
      cert.push_back({{"terms", to_json(std::span<const OrderlyTerm>(e.terms), sig)},
                      {"value", to_json(e.value)}});
    }
    out["certificate"] = std::move(cert);
  }
  out["stats"] = {{"prefixes_examined", r.stats.prefixes_examined},
                  {"fr_terms", r.stats.fr_terms},
                  {"tuples_per_prefix", r.stats.tuples_per_prefix}};
  return out;
}

}  // namespace orderly
