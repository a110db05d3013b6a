#include <doctest.h>

#include <thread>

#include "orderly/view.hpp"
#include "support/errors.hpp"
#include "support/gen.hpp"

using namespace orderly;

namespace {

const Signature kF = Signature::binary();

OrderlyTerm ot(const char* text) { return OrderlyTerm::parse(text, kF); }

Assignment ints(std::initializer_list<int> xs) { return Assignment(xs.begin(), xs.end()); }

AdmissiblePrefix prefix(std::initializer_list<const char*> ts) {
  std::vector<OrderlyTerm> terms;
  for (const auto* t : ts) terms.push_back(ot(t));
  return AdmissiblePrefix(std::move(terms));
}

Algebra cyclic(int n) {
  std::vector<Value> u;
  OperationTable t;
  for (int x = 0; x < n; ++x) {
    u.emplace_back(x);
    for (int y = 0; y < n; ++y) t[{x, y}] = Value((x + y) % n);
  }
  return Algebra::table(kF, u, {{"f", t}});
}

OrderlyView nat(std::initializer_list<int> xs) {
  return OrderlyView::induced(Algebra::nat_add(), ints(xs));
}

}  // namespace

TEST_CASE("view values") {
  CHECK(nat({1, 2}).value(ot("f v0 v1")) == Value(3));
  CHECK(OrderlyView::index_set(kF).value(ot("f v0 v3")) == Value::indices({0, 3}));
  CHECK(OrderlyView::free(kF).value(ot("f v0 v1")) == Value(TermText{"f v0 v1"}));
  CHECK(OrderlyView::trivial(kF, Value("c")).value(ot("f v4 v9")) == Value("c"));
  CHECK(error_kind([] { nat({1, 2}).value(ot("f v0 v2")); }) == ErrorKind::IndexBeyondPrefix);
  CHECK(error_kind([] { OrderlyView::induced(Algebra::nat_add(), ints({1, 0})); }) ==
        ErrorKind::UniverseViolation);

  CHECK(nat({1, 2}).coverage() == std::size_t{2});
  CHECK_FALSE(OrderlyView::free(kF).coverage());
  CHECK(nat({1, 2}).covers(ot("f v0 v1")));
  CHECK_FALSE(nat({1, 2}).covers(ot("v2")));
}

TEST_CASE("reductions of views") {
  const OrderlyView base = nat({1, 2, 3, 4});
  const OrderlyView r = reduce_view(base, prefix({"f v0 v1", "f v2 v3"}));
  CHECK(r.kind() == ViewKind::Reduced);
  CHECK(r.value(ot("v0")) == Value(3));
  CHECK(r.value(ot("v1")) == Value(7));
  CHECK(r.value(ot("f v0 v1")) == Value(10));
  CHECK(r.coverage() == std::size_t{2});
  CHECK(error_kind([&] { r.value(ot("v2")); }) == ErrorKind::IndexBeyondPrefix);

  const OrderlyView shifted = reduce_view(OrderlyView::free(kF), prefix({"v1", "v2"}));
  CHECK(shifted.value(ot("v0")) == Value(TermText{"v1"}));

  SUBCASE("identity witness") {
    const OrderlyView id = reduce_view(base, AdmissiblePrefix::identity(4));
    for (const auto& t : covered_terms(base, {7, 3})) CHECK(id.value(t) == base.value(t));
  }

  SUBCASE("coverage errors surface at query time") {
    const OrderlyView wide = reduce_view(base, prefix({"v1", "f v2 v7"}));
    CHECK(wide.coverage() == std::size_t{1});
    CHECK(wide.value(ot("v0")) == Value(2));
    CHECK(error_kind([&] { wide.value(ot("v1")); }) == ErrorKind::IndexBeyondPrefix);
  }

  SUBCASE("a reduction of a reduction is flattened") {
    const OrderlyView twice = reduce_view(r, prefix({"f v0 v1"}));
    CHECK(twice.kind() == ViewKind::Reduced);
    REQUIRE(twice.base() != nullptr);
    CHECK(twice.base()->kind() == ViewKind::Induced);
    CHECK(*twice.witness() == std::vector<OrderlyTerm>{ot("f f v0 v1 f v2 v3")});
    CHECK(twice.value(ot("v0")) == Value(10));
  }

  CHECK(error_kind([&] { reduce_view(base, std::vector<OrderlyTerm>{ot("v1"), ot("v0")}); }) ==
        ErrorKind::NotAdmissible);
}

TEST_CASE("induced sequences") {
  CHECK(induced_sequence(nat({4, 5, 6}), 3) == ints({4, 5, 6}));
  CHECK(induced_sequence(reduce_view(nat({1, 2, 3, 4}), prefix({"f v0 v1", "f v2 v3"})), 2) ==
        ints({3, 7}));
  CHECK(induced_sequence(OrderlyView::trivial(kF, Value(9)), 4) == ints({9, 9, 9, 9}));
  CHECK(error_kind([] { induced_sequence(nat({1}), 2); }) == ErrorKind::IndexBeyondPrefix);
}

TEST_CASE("congruence") {
  CHECK(check_congruence(nat({1, 2, 3, 4, 5}), {7, 4}).passed());
  CHECK(check_congruence(OrderlyView::induced(cyclic(3), ints({0, 1, 2, 1, 0})), {7, 4})
            .passed());
  const auto idx = check_congruence(OrderlyView::index_set(kF), {5, 4});
  CHECK(idx.passed());
  CHECK(idx.checked > 0);
  CHECK(check_congruence(OrderlyView::free(kF), {5, 3}).passed());

  SUBCASE("fault injection") {
    // a(0) = a(1), so f v0 v2 and f v1 v2 must agree.
    const OrderlyView base = OrderlyView::induced(cyclic(2), ints({1, 1, 0}));
    const OrderlyView bad = OrderlyView::patched(base, ot("f v1 v2"), Value(0));
    CHECK(bad.value(ot("f v1 v2")) == Value(0));
    CHECK(bad.value(ot("f v0 v2")) == Value(1));
    const auto r = check_congruence(bad, {3, 2});
    CHECK_FALSE(r.passed());
    REQUIRE_FALSE(r.violations.empty());
    CHECK(r.violations[0].terms == std::vector<std::string>{"f v0 v2", "f v1 v2"});
  }
}

TEST_CASE("reconstruction") {
  SUBCASE("cyclic group round trip") {
    const Algebra z4 = cyclic(4);
    const OrderlyView v = OrderlyView::induced(z4, ints({1, 3, 2, 2, 1}));
    const Bounds b{5, 4};
    const auto rec = reconstruct_algebra(v, b);
    const OrderlyView again = OrderlyView::induced(rec.algebra, rec.assignment);
    for (const auto& t : covered_terms(v, b)) CHECK(again.value(t) == v.value(t));
    CHECK(rec.realized + rec.defaulted == rec.algebra.finite_universe()->size() *
                                              rec.algebra.finite_universe()->size());
  }
  SUBCASE("trivial view") {
    const auto rec = reconstruct_algebra(OrderlyView::trivial(kF, Value("c")), {3, 2});
    REQUIRE(rec.algebra.finite_universe()->size() == 1);
    for (const auto& [args, result] : rec.algebra.table_of(0)) CHECK(result == Value("c"));
    CHECK(rec.assignment == Assignment(3, Value("c")));
  }
  SUBCASE("index-set view") {
    const auto rec = reconstruct_algebra(OrderlyView::index_set(kF), {3, 3});
    const auto table = rec.algebra.table_of(0);
    const auto least = rec.algebra.finite_universe()->front();
    for (VarIndex i = 0; i <= 3; ++i) {
      for (VarIndex j = 0; j <= 3; ++j) {
        std::vector<Value> key{Value::indices({i}), Value::indices({j})};
        const Value expected = i < j ? Value::indices({i, j}) : least;
        CHECK(table.at(key) == expected);
      }
    }
    CHECK(rec.realized == 6);
  }
  SUBCASE("explicit fill value") {
    const OrderlyView v = OrderlyView::induced(cyclic(3), ints({1, 1}));
    const auto rec = reconstruct_algebra(v, {3, 1}, Value(2));
    CHECK(rec.defaulted > 0);
    CHECK(error_kind([&] { reconstruct_algebra(v, {3, 1}, Value(7)); }) ==
          ErrorKind::UniverseViolation);
  }
  SUBCASE("errors") {
    // 63 distinct subset sums need 3969 cells.
    const OrderlyView powers = nat({1, 2, 4, 8, 16, 32});
    CHECK(error_kind([&] { reconstruct_algebra(powers, {11, 5}, {}, 1000); }) ==
          ErrorKind::UniverseOverflow);
    const OrderlyView bad = OrderlyView::patched(
        OrderlyView::induced(cyclic(2), ints({1, 1, 0})), ot("f v1 v2"), Value(0));
    CHECK(error_kind([&] { reconstruct_algebra(bad, {3, 2}); }) ==
          ErrorKind::CongruenceViolation);
  }
}

TEST_CASE("orderly semigroups") {
  const auto ok = is_orderly_semigroup(nat({3, 1, 4, 1, 5, 9}), {7, 5});
  CHECK(ok.passed());
  CHECK(ok.bracketing.checked > 0);
  CHECK(ok.same_variables.checked > 0);

  const auto free = is_orderly_semigroup(OrderlyView::free(kF), {5, 2});
  CHECK_FALSE(free.bracketing.passed());
  REQUIRE_FALSE(free.bracketing.violations.empty());
  CHECK(free.bracketing.violations[0].terms ==
        std::vector<std::string>{"f f v0 v1 v2", "f v0 f v1 v2"});

  Assignment pairs{Value::pair(1, 2), Value::pair(3, 4), Value::pair(5, 6), Value::pair(1, 1)};
  const auto h = is_orderly_semigroup(
      OrderlyView::induced(pair_algebra(Algebra::nat_add()), pairs), {5, 3});
  CHECK_FALSE(h.bracketing.passed());

  CHECK(error_kind([] {
          is_orderly_semigroup(OrderlyView::free(Signature({{"g", 1}})), {3, 2});
        }) == ErrorKind::WrongSignature);
}

TEST_CASE("pre-homogeneity") {
  CHECK(check_prehomogeneous(nat({1, 2, 3, 4, 5}), Coloring::residue(3, {1}), {7, 4}).passed());
  CHECK(check_prehomogeneous(OrderlyView::trivial(kF, Value(1)), Coloring::member({Value(1)}),
                             {5, 3})
            .passed());
  const auto r = check_prehomogeneous(OrderlyView::free(kF), Coloring::leading_parity("f"),
                                      {5, 2});
  CHECK_FALSE(r.passed());
  REQUIRE_FALSE(r.violations.empty());
  CHECK(r.violations[0].terms == std::vector<std::string>{"f f v0 v1 v2", "f v0 f v1 v2"});
}

TEST_CASE("injectivity") {
  CHECK(check_injectivity(OrderlyView::free(kF), {5, 3}).passed());
  const auto trivial = check_injectivity(OrderlyView::trivial(kF, Value(0)), {1, 1});
  REQUIRE_FALSE(trivial.passed());
  CHECK(trivial.violations[0].terms == std::vector<std::string>{"v0", "v1"});
  const auto sums = check_injectivity(nat({1, 2, 3}), {3, 2});
  REQUIRE_FALSE(sums.passed());
  CHECK(sums.violations[0].terms == std::vector<std::string>{"v2", "f v0 v1"});
}

TEST_CASE("reduced induced views match reduced sequences") {
  gen::Rng rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    const Algebra alg = gen::table_algebra(rng, gen::uniform(rng, 2, 4));
    const auto n = alg.finite_universe()->size();
    const auto a = gen::integers(rng, 10, 0, static_cast<int>(n - 1));
    const auto t = gen::prefix(kF, rng, gen::uniform(rng, 1, 3), 3, 1);
    if (t.terms().back().last_var() >= a.size()) continue;
    const OrderlyView reduced = reduce_view(OrderlyView::induced(alg, a), t);
    const Assignment b = reduce_sequence(alg, a, t);
    CHECK(induced_sequence(reduced, t.size()) == b);
    const OrderlyView direct = OrderlyView::induced(alg, b);
    for (const auto& s : covered_terms(reduced, {5, 3})) CHECK(reduced.value(s) == direct.value(s));
  }
}

TEST_CASE("reductions agreeing on variables agree everywhere") {
  const Algebra alg = gen::two_element_algebra(0b0110);
  const OrderlyView base = OrderlyView::induced(alg, ints({0, 1, 1, 0, 1, 0, 0}));
  const auto witnesses = enumerate_admissible_prefixes(kF, 2, 3, 6);
  std::size_t agreeing = 0;
  for (std::size_t i = 0; i < witnesses.size(); ++i) {
    const OrderlyView bi = reduce_view(base, witnesses[i]);
    for (std::size_t j = i + 1; j < witnesses.size(); ++j) {
      const OrderlyView bj = reduce_view(base, witnesses[j]);
      if (induced_sequence(bi, 2) != induced_sequence(bj, 2)) continue;
      ++agreeing;
      for (const auto& s : covered_terms(bi, {5, 1})) CHECK(bi.value(s) == bj.value(s));
    }
  }
  CHECK(agreeing > 0);
}

TEST_CASE("reduction shrinks the value set") {
  gen::Rng rng(29);
  const OrderlyView base = OrderlyView::induced(cyclic(5), ints({1, 4, 2, 0, 3, 3, 1}));
  std::set<Value> base_values;
  for (const auto& t : covered_terms(base, {13, 6})) base_values.insert(base.value(t));
  for (int trial = 0; trial < 40; ++trial) {
    const auto w = gen::prefix(kF, rng, 3, 2, 0);
    if (w.terms().back().last_var() > 6) continue;
    const OrderlyView r = reduce_view(base, w);
    for (const auto& t : covered_terms(r, {5, 2})) CHECK(base_values.contains(r.value(t)));
  }
}

TEST_CASE("memoization is invisible") {
  const OrderlyView v = reduce_view(nat({2, 7, 1, 8, 2, 8, 1, 8}), prefix({"v0", "f v1 v2", "v4",
                                                                           "f v5 v6", "v7"}));
  const auto terms = covered_terms(v, {7, 4});
  std::vector<std::thread> workers;
  std::vector<int> mismatches(8, 0);
  for (int w = 0; w < 8; ++w) {
    workers.emplace_back([&, w] {
      for (const auto& t : terms) {
        if (v.value(t) != v.value_uncached(t)) ++mismatches[static_cast<std::size_t>(w)];
      }
    });
  }
  for (auto& w : workers) w.join();
  for (int m : mismatches) CHECK(m == 0);
  for (const auto& t : terms) CHECK(v.value(t) == v.value_uncached(t));
}
