// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "orderly/cli.hpp"
#include "orderly/error.hpp"
#include "orderly/search.hpp"
#include "orderly/sharp.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace orderly;

namespace {

const Signature kF = Signature::binary();

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string text(const OrderlyTerm& t) { return to_string(t, kF); }

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::vector<AdmissiblePrefix> prefixes_up_to(std::size_t length, std::size_t size, VarIndex index) {
  std::vector<AdmissiblePrefix> out;
  for (std::size_t l = 1; l <= length; ++l) {
    auto p = enumerate_admissible_prefixes(kF, l, size, index);
    out.insert(out.end(), p.begin(), p.end());
  }
  return out;
}

// Limits ------------------------------------------------------------------

constexpr double kSubstitutionSeconds = 60.0;
constexpr double kHindmanSeconds = 10.0;

// 1 -----------------------------------------------------------------------

Verdict substitution_laws() {
  const auto start = std::chrono::steady_clock::now();
  const auto terms = enumerate_orderly_terms(kF, 7, 7);
  const auto prefixes = prefixes_up_to(4, 3, 7);

  // covered[m]: terms whose largest index is below m.
  std::vector<std::vector<const OrderlyTerm*>> covered(9);
  for (std::size_t m = 0; m <= 8; ++m) {
    for (const auto& s : terms) {
      if (s.term().max_var() < m) covered[m].push_back(&s);
    }
  }

  std::size_t checks = 0;
  std::size_t bad = 0;
  std::string first;
  auto fail = [&](std::string what) {
    if (bad++ == 0) first = std::move(what);
  };

  const auto identity = AdmissiblePrefix::identity(8);
  for (const auto& s : terms) {
    ++checks;
    if (substitute(s, identity) != s) fail("identity: " + text(s));
  }

  for (const auto& t : prefixes) {
    std::vector<oracle::Node> nodes;
    for (const auto& ti : t.terms()) nodes.push_back(oracle::parse(text(ti)));
    const auto& in = covered[t.size()];
    std::vector<OrderlyTerm> images;
    images.reserve(in.size());
    for (const auto* s : in) {
      images.push_back(substitute(*s, t));
      const auto& st = images.back();
      checks += 2;
      if (!is_orderly(st.term())) fail("closure: " + text(*s));
      if (text(st) != oracle::print(oracle::subst(oracle::parse(text(*s)), nodes))) {
        fail("tree oracle: " + text(*s));
      }
    }
    for (std::size_t i = 0; i < in.size(); ++i) {
      for (std::size_t j = 0; j < in.size(); ++j) {
        if (!term_lt(*in[i], *in[j])) continue;
        ++checks;
        if (!term_lt(images[i], images[j])) fail("order: " + text(*in[i]) + " < " + text(*in[j]));
      }
    }
    // Terms reaching past the prefix are rejected rather than substituted.
    for (const auto& s : terms) {
      if (s.term().max_var() < t.size()) continue;
      ++checks;
      try {
        (void)substitute(s, t);
        fail("coverage: " + text(s));
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::IndexBeyondPrefix) fail("coverage kind: " + text(s));
      }
    }
  }

  for (const auto& t : prefixes) {
    for (const auto& u : prefixes) {
      const auto tu = compose(t.terms(), u.terms());
      if (tu.empty()) continue;
      for (const auto* s : covered[std::min(t.size(), tu.size())]) {
        ++checks;
        if (substitute(substitute(*s, t), u) != substitute(*s, tu)) {
          fail("composition: " + text(*s));
        }
      }
    }
  }

  const double secs = seconds_since(start);
  return {bad == 0 && secs < kSubstitutionSeconds,
          std::to_string(terms.size()) + " terms, " + std::to_string(prefixes.size()) +
              " prefixes, " + std::to_string(checks) + " checks, " + std::to_string(bad) +
              " violations" + (first.empty() ? "" : " (first: " + first + ")") + ", " +
              fixed(secs) + " s (limit " + fixed(kSubstitutionSeconds) + " s)"};
}

// 2 -----------------------------------------------------------------------

Verdict sharp_identities() {
  std::size_t law = 0;
  std::size_t bad = 0;
  for (const auto& t : enumerate_orderly_terms(kF, 9, 9)) {
    const auto p = sharp_split(t, kF);
    const auto [x, y] = oracle::split(oracle::parse(text(t)));
    ++law;
    if (!satisfies_occurrence_law(t, p) || text(p.x) != oracle::print(x) ||
        text(p.y) != oracle::print(y)) {
      ++bad;
    }
  }

  Assignment a;
  for (int i = 1; i <= 16; ++i) a.emplace_back(i);
  const OrderlyView base = OrderlyView::induced(Algebra::nat_add(), a);
  auto ts = enumerate_admissible_prefixes(kF, 4, 3, 7);
  if (ts.size() > 25) ts.erase(ts.begin() + 25, ts.end());
  std::vector<AdmissiblePrefix> us;
  for (std::size_t l : {2, 4}) {
    auto p = enumerate_admissible_prefixes(kF, l, 3, 3);
    us.insert(us.end(), p.begin(), p.end());
  }
  std::size_t pairs = 0;
  std::size_t identities = 0;
  std::size_t values = 0;
  std::size_t lift_bad = 0;
  for (const auto& t : ts) {
    for (const auto& u : us) {
      const auto r = check_sharp_lift(base, t, u, {7, 7});
      ++pairs;
      identities += r.witness_identity.checked + r.pair_identity.checked;
      values += r.reduction.checked;
      lift_bad += r.witness_identity.violation_count + r.pair_identity.violation_count +
                  r.reduction.violation_count;
    }
  }
  return {bad == 0 && lift_bad == 0 && pairs >= 100 && identities > 0,
          "occurrence law on " + std::to_string(law) + " terms (" + std::to_string(bad) +
              " violations); " + std::to_string(pairs) + " (t,u) pairs, " +
              std::to_string(identities) + " identity checks, " + std::to_string(values) +
              " value checks, " + std::to_string(lift_bad) + " violations"};
}

// 3 -----------------------------------------------------------------------

Verdict pair_sharp_equality() {
  gen::Rng rng(2008);
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (int trial = 0; trial < 50; ++trial) {
    Assignment b;
    for (int i = 0; i < 4; ++i) {
      b.push_back(Value::pair(static_cast<int>(gen::uniform(rng, 1, 50)),
                              static_cast<int>(gen::uniform(rng, 1, 50))));
    }
    const auto r = check_pair_sharp_equality(Algebra::nat_add(), b, {7, 3});
    checked += r.checked;
    bad += r.violation_count;
  }
  std::vector<Value> cells;
  for (int x = 0; x < 2; ++x) {
    for (int y = 0; y < 2; ++y) cells.push_back(Value::pair(x, y));
  }
  std::size_t tables = 0;
  for (unsigned code = 0; code < 16; ++code) {
    const Algebra alg = gen::two_element_algebra(code);
    for (unsigned pick = 0; pick < 256; ++pick) {
      Assignment b;
      for (unsigned i = 0; i < 4; ++i) b.push_back(cells[(pick >> (2 * i)) & 3U]);
      const auto r = check_pair_sharp_equality(alg, b, {5, 3});
      checked += r.checked;
      bad += r.violation_count;
      ++tables;
    }
  }
  return {bad == 0, "50 NatAdd assignments and " + std::to_string(tables) +
                        " two-element cases, " + std::to_string(checked) + " term values, " +
                        std::to_string(bad) + " differences"};
}

// 4 -----------------------------------------------------------------------

Verdict nowhere_associative() {
  const Algebra h = pair_algebra(Algebra::nat_add());
  auto apply = [&](const Value& x, const Value& y) {
    std::vector<Value> args{x, y};
    return h.apply(0, args);
  };
  std::vector<Value> pairs;
  for (int x = 1; x <= 5; ++x) {
    for (int y = 1; y <= 5; ++y) pairs.push_back(Value::pair(x, y));
  }
  std::size_t triples = 0;
  std::size_t associative = 0;
  for (const auto& a : pairs) {
    for (const auto& b : pairs) {
      for (const auto& c : pairs) {
        ++triples;
        if (apply(apply(a, b), c) == apply(a, apply(b, c))) ++associative;
      }
    }
  }
  return {associative == 0 && triples == 15625,
          std::to_string(triples) + " triples, " + std::to_string(associative) + " associative"};
}

// 5 -----------------------------------------------------------------------

Verdict orderly_semigroups() {
  gen::Rng rng(1211);
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = gen::integers(rng, 8, 1, 100);
    const auto r = is_orderly_semigroup(OrderlyView::induced(Algebra::nat_add(), a), {7, 7});
    checked += r.bracketing.checked + r.same_variables.checked;
    bad += r.bracketing.violation_count + r.same_variables.violation_count;
  }
  const auto free = is_orderly_semigroup(OrderlyView::free(kF), {7, 7});
  const bool free_fails_first =
      !free.bracketing.violations.empty() &&
      free.bracketing.violations.front().terms ==
          std::vector<std::string>{"f f v0 v1 v2", "f v0 f v1 v2"};
  return {bad == 0 && checked > 0 && free_fails_first,
          "20 assignments, " + std::to_string(checked) + " checks, " + std::to_string(bad) +
              " violations; free view first bracketing violation " +
              (free_fails_first ? "at <f f v0 v1 v2, f v0 f v1 v2>" : "missing or elsewhere")};
}

// 6 -----------------------------------------------------------------------

Verdict obstruction() {
  const OrderlyView free = OrderlyView::free(kF);
  SearchConfig cfg{.k = 3, .max_size = 5, .max_index = 8, .fr_size = 3};
  const auto r = verify_one_to_one_obstruction(free, cfg);
  const std::size_t expected = enumerate_admissible_prefixes(kF, 2, 5, 8).size() +
                               enumerate_admissible_prefixes(kF, 3, 5, 8).size();

  // Independently, no witness of length 2 or 3 is homogeneous for the parity set.
  const Coloring parity = Coloring::leading_parity("f");
  std::size_t searched = 0;
  std::size_t homogeneous = 0;
  for (std::size_t k = 2; k <= 3; ++k) {
    cfg.k = k;
    const auto s = find_homogeneous_reduction(free, parity, cfg);
    searched += s.stats.prefixes_examined;
    if (s.outcome != Outcome::Exhausted) ++homogeneous;
  }
  return {r.passed() && r.checked == expected && homogeneous == 0 && searched == expected,
          std::to_string(r.checked) + " of " + std::to_string(expected) +
              " prefixes checked, " + std::to_string(r.checked - r.violation_count) +
              " obstructed; search examined " + std::to_string(searched) + ", found " +
              std::to_string(homogeneous) + " homogeneous"};
}

// 7 -----------------------------------------------------------------------

Verdict reconstruction() {
  std::vector<Algebra> algebras;
  for (unsigned code = 0; code < 16; ++code) algebras.push_back(gen::two_element_algebra(code));
  gen::Rng rng(310);
  algebras.push_back(gen::table_algebra(rng, 3));

  const Bounds bounds{5, 2};
  std::size_t cases = 0;
  std::size_t compared = 0;
  std::size_t mismatches = 0;
  std::size_t injected = 0;
  std::size_t detected = 0;
  std::size_t unconstrained = 0;  // no two applications share argument values
  for (const auto& alg : algebras) {
    const auto universe = *alg.finite_universe();
    const std::size_t n = universe.size();
    for (std::size_t code = 0; code < n * n * n; ++code) {
      const Assignment a{universe[code % n], universe[code / n % n], universe[code / n / n]};
      const OrderlyView v = OrderlyView::induced(alg, a);
      const auto rec = reconstruct_algebra(v, bounds);
      const OrderlyView again = OrderlyView::induced(rec.algebra, rec.assignment);
      ++cases;
      const auto terms = covered_terms(v, bounds);
      for (const auto& t : terms) {
        ++compared;
        if (again.value(t) != v.value(t)) ++mismatches;
      }

      // Patch one application whose argument values recur elsewhere.
      std::map<std::pair<Value, Value>, int> seen;
      for (const auto& t : terms) {
        const auto args = t.term().arguments();
        if (args.size() != 2) continue;
        ++seen[{v.value(OrderlyTerm(args[0])), v.value(OrderlyTerm(args[1]))}];
      }
      bool patched = false;
      for (const auto& t : terms) {
        const auto args = t.term().arguments();
        if (args.size() != 2) continue;
        if (seen[{v.value(OrderlyTerm(args[0])), v.value(OrderlyTerm(args[1]))}] < 2) continue;
        const Value original = v.value(t);
        const Value other = original == universe[0] ? universe[1] : universe[0];
        ++injected;
        if (!check_congruence(OrderlyView::patched(v, t, other), bounds).passed()) ++detected;
        patched = true;
        break;
      }
      if (!patched) ++unconstrained;
    }
  }
  return {mismatches == 0 && injected > 0 && injected + unconstrained == cases &&
              detected == injected,
          std::to_string(cases) + " algebra/assignment cases, " + std::to_string(compared) +
              " values compared, " + std::to_string(mismatches) + " mismatches; " +
              std::to_string(detected) + "/" + std::to_string(injected) +
              " injected faults detected (" + std::to_string(unconstrained) +
              " cases have no repeated argument values to break)"};
}

// 8 -----------------------------------------------------------------------

Verdict hindman() {
  std::vector<std::int64_t> raw;
  Assignment a;
  for (int i = 1; i <= 12; ++i) {
    raw.push_back(i);
    a.emplace_back(i);
  }
  const OrderlyView v = OrderlyView::induced(Algebra::nat_add(), a);
  const SearchConfig cfg{.k = 3, .max_size = 1, .fr_size = 5};
  bool ok = true;
  std::string detail;
  double worst = 0;
  for (int modulus : {2, 3}) {
    const Coloring c = Coloring::residue(modulus, {0});
    const auto start = std::chrono::steady_clock::now();
    const auto r = find_homogeneous_reduction(v, c, cfg);
    const double secs = seconds_since(start);
    worst = std::max(worst, secs);
    const auto expected = oracle::first_homogeneous_indices(
        raw, 3, [&](std::int64_t s) { return c.contains(Value(s)); });
    std::vector<std::string> want;
    for (auto i : expected) want.push_back("v" + std::to_string(i));
    std::vector<std::string> got;
    if (r.witness) {
      for (const auto& t : r.witness->terms()) got.push_back(text(t));
    }
    const bool sound = verify_certificate(v, &c, r);
    ok = ok && r.outcome == Outcome::Found && sound && got == want && !want.empty() &&
         secs < kHindmanSeconds;
    std::string w;
    for (const auto& g : got) w += (w.empty() ? "" : ",") + g;
    detail += (detail.empty() ? "" : "; ") + std::string("mod ") + std::to_string(modulus) +
              ": <" + w + ">" + (got == want ? " = oracle" : " != oracle") +
              (sound ? ", certificate sound" : ", certificate unsound");
  }
  return {ok, detail + ", slowest " + fixed(worst) + " s (limit " + fixed(kHindmanSeconds) +
                  " s)"};
}

// 9 -----------------------------------------------------------------------

Verdict determinism() {
  auto run = [](const char* threads) {
    std::vector<std::string> args{"search", "hindman", "--algebra", "nat-add",
                                  "--assignment", "1..12", "--mod", "3", "--accept", "0",
                                  "--k", "3", "--max-size", "3", "--fr-size", "5",
                                  "--threads", threads};
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return std::pair{code, out.str()};
  };
  const auto reference = run("1");
  std::size_t identical = 0;
  for (int i = 0; i < 10; ++i) {
    if (run("1") == reference) ++identical;
    if (run("8") == reference) ++identical;
  }
  const bool found = reference.first == cli::kOk &&
                     reference.second.find("\"outcome\": \"found\"") != std::string::npos;
  return {found && identical == 20,
          std::to_string(identical) + "/20 runs byte-identical to the single-thread report" +
              (found ? "" : ", reference run found nothing")};
}

// 10 ----------------------------------------------------------------------

Verdict reduction_correspondence() {
  gen::Rng rng(2008);
  std::size_t entries = 0;
  std::size_t bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = gen::uniform(rng, 2, 4);
    const Algebra alg = gen::table_algebra(rng, n);
    const auto a = gen::integers(rng, 12, 0, static_cast<int>(n) - 1);
    AdmissiblePrefix t = gen::prefix(kF, rng, gen::uniform(rng, 1, 4), 3, 1);
    while (t.terms().back().last_var() >= a.size()) {
      t = gen::prefix(kF, rng, gen::uniform(rng, 1, 4), 3, 1);
    }
    const auto via_view = induced_sequence(reduce_view(OrderlyView::induced(alg, a), t), t.size());
    const auto via_sequence = reduce_sequence(alg, a, t);
    for (std::size_t i = 0; i < t.size(); ++i) {
      ++entries;
      if (i >= via_view.size() || i >= via_sequence.size() || via_view[i] != via_sequence[i]) {
        ++bad;
      }
    }
  }
  return {bad == 0, "100 triples, " + std::to_string(entries) + " entries, " +
                        std::to_string(bad) + " differences"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"substitution laws", substitution_laws},
      {"sharp identities", sharp_identities},
      {"pair algebra equals sharp view", pair_sharp_equality},
      {"pair algebra is nowhere associative", nowhere_associative},
      {"orderly semigroups", orderly_semigroups},
      {"one-to-one obstruction", obstruction},
      {"reconstruction round trip", reconstruction},
      {"Hindman desk scale", hindman},
      {"search determinism", determinism},
      {"reduction correspondence", reduction_correspondence},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " [" << (i + 1) << "] " << criteria[i].first
              << ": " << v.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failures)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
