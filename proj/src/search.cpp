#include "orderly/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <limits>
#include <mutex>
#include <thread>

#include "orderly/error.hpp"

namespace orderly {

namespace {

struct Hit {
  Side side = Side::Contained;
  std::vector<CertificateEntry> certificate;
};

using Judge = std::function<std::optional<Hit>(const AdmissiblePrefix&)>;

void validate(const SearchConfig& cfg) {
  if (cfg.k == 0 || cfg.max_size == 0 || cfg.fr_size == 0 || cfg.threads == 0) {
    throw Error(ErrorKind::InvalidInput,
                "search bounds k, max size, FR size and threads must be positive");
  }
}

VarIndex resolve_max_index(const OrderlyView& v, std::optional<VarIndex> requested) {
  auto c = v.coverage();
  if (!c && !requested) {
    throw Error(ErrorKind::InvalidInput,
                "an unbounded view needs an explicit maximum variable index");
  }
  if (c && *c == 0) {
    throw Error(ErrorKind::IndexBeyondPrefix, "the view covers no variables");
  }
  if (!requested) return static_cast<VarIndex>(*c - 1);
  if (!c) return *requested;
  return std::min<VarIndex>(*requested, static_cast<VarIndex>(*c - 1));
}

// Runs judge over admissible prefixes in canonical order and returns the
// first hit. With several threads, prefixes are judged in batches and the
// lowest-indexed hit of the first batch containing one wins, so the answer
// does not depend on scheduling.
SearchResult run_search(const OrderlyView& v, const SearchConfig& cfg,
                        const Judge& judge, SearchStats stats) {
  const auto started = std::chrono::steady_clock::now();
  const VarIndex max_index = resolve_max_index(v, cfg.max_index);
  AdmissiblePrefixStream stream(
      enumerate_orderly_terms(v.signature(), cfg.max_size, max_index), cfg.k);

  auto out_of_time = [&] {
    return cfg.time_budget &&
           std::chrono::steady_clock::now() - started > *cfg.time_budget;
  };

  SearchResult result;
  const std::size_t batch_size = cfg.threads == 1 ? 1 : 32 * cfg.threads;
  std::vector<AdmissiblePrefix> batch;
  while (true) {
    batch.clear();
    while (batch.size() < batch_size) {
      auto next = stream.next();
      if (!next) break;
      batch.push_back(std::move(*next));
    }
    if (batch.empty()) {
      result.outcome = Outcome::Exhausted;
      break;
    }

    std::vector<std::optional<Hit>> hits(batch.size());
    if (cfg.threads == 1) {
      hits[0] = judge(batch[0]);
    } else {
      constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
      std::atomic<std::size_t> cursor{0};
      std::atomic<std::size_t> best{kNone};
      std::exception_ptr failure;
      std::mutex failure_mutex;
      auto worker = [&] {
        while (true) {
          const std::size_t i = cursor.fetch_add(1);
          if (i >= batch.size() || i > best.load()) return;
          try {
            hits[i] = judge(batch[i]);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            return;
          }
          if (hits[i]) {
            std::size_t current = best.load();
            while (i < current && !best.compare_exchange_weak(current, i)) {
            }
          }
        }
      };
      std::vector<std::jthread> pool;
      const std::size_t n = std::min(cfg.threads, batch.size());
      pool.reserve(n);
      for (std::size_t t = 0; t < n; ++t) pool.emplace_back(worker);
      pool.clear();
      if (failure) std::rethrow_exception(failure);
    }

    auto first = std::find_if(hits.begin(), hits.end(),
                              [](const auto& h) { return h.has_value(); });
    if (first != hits.end()) {
      const auto i = static_cast<std::size_t>(first - hits.begin());
      stats.prefixes_examined += i + 1;
      result.outcome = Outcome::Found;
      result.witness = std::move(batch[i]);
      result.side = (*first)->side;
      result.certificate = std::move((*first)->certificate);
      break;
    }
    stats.prefixes_examined += batch.size();
    if (out_of_time()) {
      result.outcome = Outcome::TimedOut;
      break;
    }
  }
  result.stats = stats;
  return result;
}

std::vector<OrderlyTerm> reduction_terms(const OrderlyView& v, const SearchConfig& cfg) {
  return enumerate_orderly_terms(v.signature(), cfg.fr_size,
                                 static_cast<VarIndex>(cfg.k - 1));
}

}  // namespace

SearchResult find_homogeneous_reduction(const OrderlyView& v, const Coloring& c,
                                        const SearchConfig& cfg) {
  validate(cfg);
  const auto terms = reduction_terms(v, cfg);
  Judge judge = [&](const AdmissiblePrefix& w) -> std::optional<Hit> {
    const OrderlyView reduced = reduce_view(v, w);
    Hit hit;
    hit.certificate.reserve(terms.size());
    bool inside = false;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      Value val = reduced.value(terms[i]);
      const bool in = c.contains(val);
      if (i == 0) {
        inside = in;
      } else if (in != inside) {
        return std::nullopt;
      }
      hit.certificate.push_back({{terms[i]}, std::move(val)});
    }
    hit.side = inside ? Side::Contained : Side::Disjoint;
    return hit;
  };
  return run_search(v, cfg, judge, {.fr_terms = terms.size(), .tuples_per_prefix = terms.size()});
}

SearchResult find_tuple_homogeneous(const OrderlyView& v, const Coloring& c,
                                    std::size_t n, const SearchConfig& cfg) {
  if (n == 0) throw Error(ErrorKind::InvalidInput, "tuple arity must be positive");
  if (n == 1) return find_homogeneous_reduction(v, c, cfg);
  validate(cfg);
  const auto terms = reduction_terms(v, cfg);
  std::vector<std::vector<std::size_t>> chains;
  for_each_increasing_tuple(terms, n, [&](std::span<const std::size_t> idx) {
    chains.emplace_back(idx.begin(), idx.end());
    return true;
  });
  SearchStats stats{.fr_terms = terms.size(), .tuples_per_prefix = chains.size()};
  if (chains.empty()) {
    SearchResult empty;
    empty.outcome = Outcome::Exhausted;
    empty.stats = stats;
    empty.tuple_arity = n;
    return empty;
  }
  Judge judge = [&](const AdmissiblePrefix& w) -> std::optional<Hit> {
    const OrderlyView reduced = reduce_view(v, w);
    std::vector<Value> values;
    values.reserve(terms.size());
    for (const auto& t : terms) values.push_back(reduced.value(t));
    Hit hit;
    bool inside = false;
    for (std::size_t i = 0; i < chains.size(); ++i) {
      Value::Tuple tuple;
      std::vector<OrderlyTerm> chain_terms;
      for (auto j : chains[i]) {
        tuple.push_back(values[j]);
        chain_terms.push_back(terms[j]);
      }
      Value val(std::move(tuple));
      const bool in = c.contains(val);
      if (i == 0) {
        inside = in;
      } else if (in != inside) {
        return std::nullopt;
      }
      hit.certificate.push_back({std::move(chain_terms), std::move(val)});
    }
    hit.side = inside ? Side::Contained : Side::Disjoint;
    return hit;
  };
  auto result = run_search(v, cfg, judge, stats);
  result.tuple_arity = n;
  return result;
}

SearchResult find_constant_reduction(const OrderlyView& v, const SearchConfig& cfg) {
  validate(cfg);
  const auto terms = reduction_terms(v, cfg);
  Judge judge = [&](const AdmissiblePrefix& w) -> std::optional<Hit> {
    const OrderlyView reduced = reduce_view(v, w);
    Hit hit{.side = Side::Constant, .certificate = {}};
    for (const auto& t : terms) {
      Value val = reduced.value(t);
      if (!hit.certificate.empty() && val != hit.certificate.front().value) {
        return std::nullopt;
      }
      hit.certificate.push_back({{t}, std::move(val)});
    }
    return hit;
  };
  return run_search(v, cfg, judge, {.fr_terms = terms.size(), .tuples_per_prefix = terms.size()});
}

bool verify_certificate(const OrderlyView& v, const Coloring* c, const SearchResult& r) {
  if (r.outcome != Outcome::Found || !r.witness || r.certificate.empty()) return false;
  const auto& first_value = r.certificate.front().value;
  for (const auto& entry : r.certificate) {
    std::vector<Value> parts;
    for (const auto& t : entry.terms) {
      parts.push_back(v.value_uncached(substitute(t, *r.witness)));
    }
    Value recomputed = parts.size() == 1 ? parts.front() : Value(Value::Tuple(parts));
    if (recomputed != entry.value) return false;
    switch (r.side) {
      case Side::Constant:
        if (recomputed != first_value) return false;
        break;
      case Side::Contained:
        if (c == nullptr || !c->contains(recomputed)) return false;
        break;
      case Side::Disjoint:
        if (c == nullptr || c->contains(recomputed)) return false;
        break;
    }
  }
  return true;
}

CheckReport verify_one_to_one_obstruction(const OrderlyView& v, const SearchConfig& cfg) {
  validate(cfg);
  const auto& sig = v.signature();
  if (sig.size() == 0) {
    throw Error(ErrorKind::InvalidInput, "the obstruction needs a nonempty language");
  }
  const SymbolId f = 0;
  const std::size_t arity = sig[f].arity;
  const std::string& name = sig[f].name;
  const VarIndex max_index = resolve_max_index(v, cfg.max_index);

  // Every value the check touches comes from a term of at most this size.
  const Bounds reach{1 + arity * cfg.max_size, max_index};
  const auto injectivity = check_injectivity(v, reach);
  if (!injectivity.passed()) {
    const auto& first = injectivity.violations.front();
    throw Error(ErrorKind::NotInjective,
                "view is not one-to-one: '" + first.terms[0] + "' and '" +
                    first.terms[1] + "' both evaluate to " + to_string(first.values[0]));
  }

  const bool term_valued = v.value(OrderlyTerm::var(0)).as_term() != nullptr;
  Coloring x = Coloring::leading_parity(name, Parity::Even);
  if (!term_valued) {
    std::set<Value> members;
    for (const auto& t : covered_terms(v, reach)) {
      if (leading_symbol_count(to_string(t, sig), name) % 2 == 0) {
        members.insert(v.value(t));
      }
    }
    x = Coloring::member(std::move(members));
  }

  std::vector<Term> vars;
  for (std::size_t i = 0; i < arity; ++i) vars.push_back(Term::var(static_cast<VarIndex>(i)));
  const OrderlyTerm head = OrderlyTerm::var(0);
  const OrderlyTerm application(Term::apply(sig, f, vars));

  CheckReport report{.check = "obstruction", .bounds = {cfg.max_size, max_index}};
  const auto pool = enumerate_orderly_terms(sig, cfg.max_size, max_index);
  for (std::size_t length = arity; length <= cfg.k; ++length) {
    AdmissiblePrefixStream stream(pool, length);
    while (auto w = stream.next()) {
      const OrderlyView reduced = reduce_view(v, *w);
      Value a = reduced.value(head);
      Value b = reduced.value(application);
      ++report.checked;
      if (x.contains(a) == x.contains(b)) {
        std::vector<std::string> texts;
        for (const auto& t : w->terms()) texts.push_back(to_string(t, sig));
        report.add({std::move(texts), {a, b}, "reduction is not split by the parity set"});
      }
    }
  }
  return report;
}

}  // namespace orderly
