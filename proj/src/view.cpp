#include "orderly/view.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <variant>

#include "orderly/error.hpp"
#include "orderly/sharp.hpp"

namespace orderly {

namespace {

struct InducedData {
  Algebra algebra;
  Assignment assignment;
};
struct TrivialData {
  Value constant;
};
struct IndexSetData {};
struct FreeData {};
struct ReducedData {
  OrderlyView base;
  std::vector<OrderlyTerm> witness;
};
struct SharpData {
  OrderlyView base;
};
struct PatchedData {
  OrderlyView base;
  OrderlyTerm at;
  Value value;
};

[[noreturn]] void beyond(VarIndex index, std::size_t coverage) {
  throw Error(ErrorKind::IndexBeyondPrefix, "index " + std::to_string(index) +
                                                " beyond prefix " +
                                                std::to_string(coverage));
}

}  // namespace

struct OrderlyView::Node {
  template <typename Data>
  Node(Signature s, Data d) : sig(std::move(s)), data(std::move(d)) {}

  Signature sig;
  std::variant<InducedData, TrivialData, IndexSetData, FreeData, ReducedData,
               SharpData, PatchedData>
      data;

  mutable std::shared_mutex memo_mutex;
  mutable std::unordered_map<Term, Value, TermHash> memo;
};

OrderlyView OrderlyView::induced(Algebra alg, Assignment a) {
  alg.check_assignment(a);
  Signature sig = alg.signature();
  return OrderlyView(
      std::make_shared<Node>(std::move(sig), InducedData{std::move(alg), std::move(a)}));
}

OrderlyView OrderlyView::trivial(Signature sig, Value c) {
  return OrderlyView(std::make_shared<Node>(std::move(sig), TrivialData{std::move(c)}));
}

OrderlyView OrderlyView::index_set(Signature sig) {
  return OrderlyView(std::make_shared<Node>(std::move(sig), IndexSetData{}));
}

OrderlyView OrderlyView::free(Signature sig) {
  return OrderlyView(std::make_shared<Node>(std::move(sig), FreeData{}));
}

OrderlyView OrderlyView::sharp(OrderlyView base) {
  if (!base.signature().single_binary()) {
    throw Error(ErrorKind::WrongSignature,
                "the sharp construction needs a single binary symbol");
  }
  Signature sig = base.signature();
  return OrderlyView(std::make_shared<Node>(std::move(sig), SharpData{std::move(base)}));
}

OrderlyView OrderlyView::patched(OrderlyView base, OrderlyTerm at, Value value) {
  Signature sig = base.signature();
  return OrderlyView(std::make_shared<Node>(
      std::move(sig), PatchedData{std::move(base), std::move(at), std::move(value)}));
}

OrderlyView reduce_view(const OrderlyView& v, std::vector<OrderlyTerm> witness) {
  if (!is_admissible(witness)) {
    throw Error(ErrorKind::NotAdmissible, "reduction witness is not <-increasing");
  }
  if (const auto* r = std::get_if<ReducedData>(&v.node_->data)) {
    return OrderlyView(std::make_shared<OrderlyView::Node>(
        v.signature(), ReducedData{r->base, compose(witness, r->witness)}));
  }
  return OrderlyView(
      std::make_shared<OrderlyView::Node>(v.signature(), ReducedData{v, std::move(witness)}));
}

OrderlyView reduce_view(const OrderlyView& v, const AdmissiblePrefix& witness) {
  return reduce_view(v, std::vector<OrderlyTerm>(witness.terms().begin(),
                                                 witness.terms().end()));
}

ViewKind OrderlyView::kind() const {
  return static_cast<ViewKind>(node_->data.index());
}

const Signature& OrderlyView::signature() const { return node_->sig; }

std::optional<std::size_t> OrderlyView::coverage() const {
  return std::visit(
      [](const auto& d) -> std::optional<std::size_t> {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, InducedData>) {
          return d.assignment.size();
        } else if constexpr (std::is_same_v<T, ReducedData>) {
          auto base = d.base.coverage();
          if (!base) return d.witness.size();
          std::size_t n = 0;
          while (n < d.witness.size() && d.witness[n].last_var() < *base) ++n;
          return n;
        } else if constexpr (std::is_same_v<T, SharpData>) {
          auto base = d.base.coverage();
          if (!base) return std::nullopt;
          return *base / 2;
        } else if constexpr (std::is_same_v<T, PatchedData>) {
          return d.base.coverage();
        } else {
          return std::nullopt;
        }
      },
      node_->data);
}

bool OrderlyView::covers(const OrderlyTerm& t) const {
  auto c = coverage();
  return !c || t.term().max_var() < *c;
}

Value OrderlyView::value_uncached(const OrderlyTerm& t) const {
  return std::visit(
      [&](const auto& d) -> Value {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, InducedData>) {
          return eval(t, d.algebra, d.assignment);
        } else if constexpr (std::is_same_v<T, TrivialData>) {
          return d.constant;
        } else if constexpr (std::is_same_v<T, IndexSetData>) {
          return Value::indices(variables_of(t));
        } else if constexpr (std::is_same_v<T, FreeData>) {
          return Value(TermText{to_string(t.term(), node_->sig)});
        } else if constexpr (std::is_same_v<T, ReducedData>) {
          if (t.term().max_var() >= d.witness.size()) {
            beyond(t.term().max_var(), d.witness.size());
          }
          return d.base.value(substitute(t, d.witness));
        } else if constexpr (std::is_same_v<T, SharpData>) {
          auto split = sharp_split(t, node_->sig);
          return Value::pair(d.base.value(split.x), d.base.value(split.y));
        } else {
          if (t == d.at) return d.value;
          return d.base.value(t);
        }
      },
      node_->data);
}

Value OrderlyView::value(const OrderlyTerm& t) const {
  // Constant and syntactic valuations are cheaper than a lookup.
  if (std::holds_alternative<TrivialData>(node_->data) ||
      std::holds_alternative<IndexSetData>(node_->data)) {
    return value_uncached(t);
  }
  {
    std::shared_lock lock(node_->memo_mutex);
    if (auto it = node_->memo.find(t.term()); it != node_->memo.end()) {
      return it->second;
    }
  }
  Value v = value_uncached(t);
  std::unique_lock lock(node_->memo_mutex);
  node_->memo.emplace(t.term(), v);
  return v;
}

const Algebra* OrderlyView::algebra() const {
  const auto* d = std::get_if<InducedData>(&node_->data);
  return d ? &d->algebra : nullptr;
}

const Assignment* OrderlyView::assignment() const {
  const auto* d = std::get_if<InducedData>(&node_->data);
  return d ? &d->assignment : nullptr;
}

const Value* OrderlyView::constant() const {
  if (const auto* d = std::get_if<TrivialData>(&node_->data)) return &d->constant;
  if (const auto* d = std::get_if<PatchedData>(&node_->data)) return &d->value;
  return nullptr;
}

const OrderlyView* OrderlyView::base() const {
  if (const auto* d = std::get_if<ReducedData>(&node_->data)) return &d->base;
  if (const auto* d = std::get_if<SharpData>(&node_->data)) return &d->base;
  if (const auto* d = std::get_if<PatchedData>(&node_->data)) return &d->base;
  return nullptr;
}

const std::vector<OrderlyTerm>* OrderlyView::witness() const {
  const auto* d = std::get_if<ReducedData>(&node_->data);
  return d ? &d->witness : nullptr;
}

const OrderlyTerm* OrderlyView::patched_term() const {
  const auto* d = std::get_if<PatchedData>(&node_->data);
  return d ? &d->at : nullptr;
}

std::string OrderlyView::describe() const {
  switch (kind()) {
    case ViewKind::Induced:
      return "induced(" + algebra()->name() + ", |a|=" +
             std::to_string(assignment()->size()) + ")";
    case ViewKind::Trivial: return "trivial(" + to_string(*constant()) + ")";
    case ViewKind::IndexSet: return "index-set";
    case ViewKind::Free: return "free";
    case ViewKind::Reduced:
      return "reduced(" + base()->describe() + ", |w|=" +
             std::to_string(witness()->size()) + ")";
    case ViewKind::Sharp: return "sharp(" + base()->describe() + ")";
    case ViewKind::Patched: return "patched(" + base()->describe() + ")";
  }
  return "view";
}

Assignment induced_sequence(const OrderlyView& v, std::size_t length) {
  Assignment out;
  out.reserve(length);
  for (std::size_t i = 0; i < length; ++i) {
    out.push_back(v.value(OrderlyTerm::var(static_cast<VarIndex>(i))));
  }
  return out;
}

std::vector<OrderlyTerm> covered_terms(const OrderlyView& v, Bounds bounds) {
  VarIndex max_index = bounds.max_index;
  if (auto c = v.coverage()) {
    if (*c == 0 || bounds.max_size == 0) return {};
    max_index = std::min<VarIndex>(max_index, static_cast<VarIndex>(*c - 1));
  }
  if (bounds.max_size == 0) return {};
  return enumerate_orderly_terms(v.signature(), bounds.max_size, max_index);
}

namespace {

std::size_t total_size(std::span<const OrderlyTerm> pool,
                       std::span<const std::size_t> idx) {
  std::size_t s = 1;
  for (auto i : idx) s += pool[i].size();
  return s;
}

OrderlyTerm application(const Signature& sig, SymbolId f,
                        std::span<const OrderlyTerm> pool,
                        std::span<const std::size_t> idx) {
  std::vector<Term> args;
  args.reserve(idx.size());
  for (auto i : idx) args.push_back(pool[i].term());
  return OrderlyTerm(Term::apply(sig, f, args));
}

}  // namespace

CheckReport check_congruence(const OrderlyView& v, Bounds bounds) {
  CheckReport report{.check = "congruence", .bounds = bounds};
  const auto pool = covered_terms(v, bounds);
  const auto& sig = v.signature();
  std::vector<Value> values;
  values.reserve(pool.size());
  for (const auto& t : pool) values.push_back(v.value(t));

  for (SymbolId f = 0; f < sig.size(); ++f) {
    struct Seen {
      OrderlyTerm term;
      Value value;
    };
    std::map<std::vector<Value>, Seen> first;
    for_each_increasing_tuple(pool, sig[f].arity, [&](std::span<const std::size_t> idx) {
      if (total_size(pool, idx) > bounds.max_size) return true;
      std::vector<Value> key;
      key.reserve(idx.size());
      for (auto i : idx) key.push_back(values[i]);
      auto app = application(sig, f, pool, idx);
      Value val = v.value(app);
      ++report.checked;
      auto [it, inserted] = first.try_emplace(std::move(key), Seen{app, val});
      if (!inserted && it->second.value != val) {
        report.add({{to_string(it->second.term, sig), to_string(app, sig)},
                    {it->second.value, val},
                    "equal argument values, different application values"});
      }
      return true;
    });
  }
  return report;
}

Reconstruction reconstruct_algebra(const OrderlyView& v, Bounds bounds,
                                   std::optional<Value> fill, std::size_t max_cells) {
  const auto pool = covered_terms(v, bounds);
  const auto& sig = v.signature();
  if (pool.empty()) {
    throw Error(ErrorKind::InvalidInput, "bounds leave no terms to reconstruct from");
  }
  std::vector<Value> values;
  values.reserve(pool.size());
  std::set<Value> universe_set;
  for (const auto& t : pool) {
    values.push_back(v.value(t));
    universe_set.insert(values.back());
  }
  std::vector<Value> universe(universe_set.begin(), universe_set.end());

  std::size_t cells = 0;
  for (const auto& s : sig.symbols()) {
    std::size_t c = 1;
    for (std::size_t k = 0; k < s.arity; ++k) {
      if (c > max_cells / universe.size()) {
        throw Error(ErrorKind::UniverseOverflow,
                    "universe of " + std::to_string(universe.size()) +
                        " values needs tables beyond " + std::to_string(max_cells) +
                        " cells");
      }
      c *= universe.size();
    }
    cells += c;
  }
  if (cells > max_cells) {
    throw Error(ErrorKind::UniverseOverflow,
                "reconstructed tables need " + std::to_string(cells) + " cells");
  }

  const Value default_value = fill ? *fill : universe.front();
  if (!universe_set.contains(default_value)) {
    throw Error(ErrorKind::UniverseViolation,
                "default '" + to_string(default_value) + "' is outside the universe");
  }

  std::size_t realized = 0;
  std::size_t defaulted = 0;
  std::map<std::string, OperationTable> ops;
  for (SymbolId f = 0; f < sig.size(); ++f) {
    auto& table = ops[sig[f].name];
    for_each_increasing_tuple(pool, sig[f].arity, [&](std::span<const std::size_t> idx) {
      if (total_size(pool, idx) > bounds.max_size) return true;
      std::vector<Value> key;
      for (auto i : idx) key.push_back(values[i]);
      Value val = v.value(application(sig, f, pool, idx));
      auto [it, inserted] = table.try_emplace(key, val);
      if (!inserted && it->second != val) {
        throw Error(ErrorKind::CongruenceViolation,
                    "conflicting values for '" + sig[f].name + "' at " +
                        to_string(application(sig, f, pool, idx), sig));
      }
      return true;
    });
    realized += table.size();
    // Fill every unrealized cell of U^arity.
    const std::size_t arity = sig[f].arity;
    std::size_t total = 1;
    for (std::size_t k = 0; k < arity; ++k) total *= universe.size();
    std::vector<Value> args(arity);
    for (std::size_t cell = 0; cell < total; ++cell) {
      std::size_t rest = cell;
      for (std::size_t k = arity; k-- > 0;) {
        args[k] = universe[rest % universe.size()];
        rest /= universe.size();
      }
      if (table.try_emplace(args, default_value).second) ++defaulted;
    }
  }
  std::size_t length = static_cast<std::size_t>(bounds.max_index) + 1;
  if (auto c = v.coverage()) length = std::min(length, *c);
  return Reconstruction{Algebra::table(sig, universe, ops), induced_sequence(v, length),
                        realized, defaulted};
}

SemigroupReport is_orderly_semigroup(const OrderlyView& v, Bounds bounds) {
  const auto& sig = v.signature();
  auto f = sig.single_binary();
  if (!f) {
    throw Error(ErrorKind::WrongSignature,
                "orderly semigroup check needs exactly one binary symbol");
  }
  SemigroupReport report;
  report.bracketing = {.check = "semigroup-bracketing", .bounds = bounds};
  report.same_variables = {.check = "semigroup-same-variables", .bounds = bounds};
  const auto pool = covered_terms(v, bounds);

  for_each_increasing_tuple(pool, 3, [&](std::span<const std::size_t> idx) {
    if (total_size(pool, idx) + 1 > bounds.max_size) return true;
    const Term& t1 = pool[idx[0]];
    const Term& t2 = pool[idx[1]];
    const Term& t3 = pool[idx[2]];
    std::vector<Term> left_inner{t1, t2};
    std::vector<Term> right_inner{t2, t3};
    std::vector<Term> left_args{Term::apply(sig, *f, left_inner), t3};
    std::vector<Term> right_args{t1, Term::apply(sig, *f, right_inner)};
    OrderlyTerm left(Term::apply(sig, *f, left_args));
    OrderlyTerm right(Term::apply(sig, *f, right_args));
    Value lv = v.value(left);
    Value rv = v.value(right);
    ++report.bracketing.checked;
    if (lv != rv) {
      report.bracketing.add({{to_string(left, sig), to_string(right, sig)},
                             {lv, rv},
                             "bracketing changes the value"});
    }
    return true;
  });

  std::map<std::vector<VarIndex>, std::size_t> groups;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto vars = variable_sequence(pool[i]);
    auto [it, inserted] = groups.try_emplace(vars, i);
    if (inserted) continue;
    const auto& first = pool[it->second];
    Value a = v.value(first);
    Value b = v.value(pool[i]);
    ++report.same_variables.checked;
    if (a != b) {
      report.same_variables.add({{to_string(first, sig), to_string(pool[i], sig)},
                                 {a, b},
                                 "same variables, different values"});
    }
  }
  return report;
}

CheckReport check_prehomogeneous(const OrderlyView& v, const Coloring& coloring,
                                 Bounds bounds) {
  CheckReport report{.check = "prehomogeneous", .bounds = bounds};
  const auto& sig = v.signature();
  const auto pool = covered_terms(v, bounds);
  std::map<std::vector<VarIndex>, std::size_t> groups;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    auto [it, inserted] = groups.try_emplace(variable_sequence(pool[i]), i);
    if (inserted) continue;
    const auto& first = pool[it->second];
    Value a = v.value(first);
    Value b = v.value(pool[i]);
    ++report.checked;
    if (coloring.contains(a) != coloring.contains(b)) {
      report.add({{to_string(first, sig), to_string(pool[i], sig)},
                  {a, b},
                  "same variables, opposite sides of the coloring"});
    }
  }
  return report;
}

CheckReport check_injectivity(const OrderlyView& v, Bounds bounds) {
  CheckReport report{.check = "injectivity", .bounds = bounds};
  const auto& sig = v.signature();
  const auto pool = covered_terms(v, bounds);
  std::map<Value, std::size_t> seen;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    Value val = v.value(pool[i]);
    ++report.checked;
    auto [it, inserted] = seen.try_emplace(val, i);
    if (!inserted) {
      report.add({{to_string(pool[it->second], sig), to_string(pool[i], sig)},
                  {val},
                  "distinct terms with equal values"});
    }
  }
  return report;
}

}  // namespace orderly
