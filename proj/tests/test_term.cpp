#include <doctest.h>

#include <algorithm>

#include "orderly/term.hpp"
#include "support/errors.hpp"
#include "support/gen.hpp"
#include "support/oracle.hpp"

using namespace orderly;

namespace {

const Signature kF = Signature::binary();

OrderlyTerm ot(const char* text) { return OrderlyTerm::parse(text, kF); }

std::vector<std::string> texts(const std::vector<OrderlyTerm>& ts, const Signature& sig = kF) {
  std::vector<std::string> out;
  for (const auto& t : ts) out.push_back(to_string(t, sig));
  return out;
}

AdmissiblePrefix prefix(std::initializer_list<const char*> ts) {
  std::vector<OrderlyTerm> terms;
  for (const auto* t : ts) terms.push_back(ot(t));
  return AdmissiblePrefix(std::move(terms));
}

}  // namespace

TEST_CASE("signature validation") {
  CHECK(kF.size() == 1);
  CHECK(kF.single_binary() == SymbolId{0});
  CHECK(error_kind([] { Signature({{"f", 2}, {"f", 1}}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { Signature({{"c", 0}}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { Signature({{"v3", 1}}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { Signature({{"a b", 1}}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { Signature({{"", 1}}); }) == ErrorKind::InvalidSignature);
  CHECK(error_kind([] { kF.id_of("g"); }) == ErrorKind::UnknownSymbol);
  Signature two({{"g", 1}, {"h", 3}});
  CHECK_FALSE(two.single_binary());
  CHECK(two.id_of("h") == 1);
}

TEST_CASE("parse and print") {
  CHECK(parse_term("v0", kF) == Term::var(0));
  const Term f01 = parse_term("f v0 v1", kF);
  std::vector<Term> args{Term::var(0), Term::var(1)};
  CHECK(f01 == Term::apply(kF, "f", args));

  const Term nested = parse_term("f f v0 v1 v2", kF);
  auto outer = nested.arguments();
  REQUIRE(outer.size() == 2);
  CHECK(outer[0] == f01);
  CHECK(outer[1] == Term::var(2));

  CHECK(to_string(parse_term("  f   v0\tv12 ", kF), kF) == "f v0 v12");

  SUBCASE("errors") {
    CHECK(error_kind([] { parse_term("g v0 v1", kF); }) == ErrorKind::UnknownSymbol);
    CHECK(error_kind([] { parse_term("f v0", kF); }) == ErrorKind::ArityMismatch);
    CHECK(error_kind([] { parse_term("f v0 v1 v2", kF); }) == ErrorKind::ArityMismatch);
    CHECK(error_kind([] { parse_term("", kF); }) == ErrorKind::ArityMismatch);
    CHECK(error_kind([] { parse_term("v", kF); }) == ErrorKind::MalformedVariable);
    CHECK(error_kind([] { parse_term("v01", kF); }) == ErrorKind::MalformedVariable);
    CHECK(error_kind([] { parse_term("vx", kF); }) == ErrorKind::MalformedVariable);
    CHECK(error_kind([] { parse_term("f v0 v99999999999999999999", kF); }) ==
          ErrorKind::MalformedVariable);
  }
}

TEST_CASE("orderliness") {
  CHECK(is_orderly(parse_term("f v0 v1", kF)));
  CHECK_FALSE(is_orderly(parse_term("f v1 v0", kF)));
  CHECK_FALSE(is_orderly(parse_term("f v0 v0", kF)));
  CHECK(error_kind([] { ot("f v1 v0"); }) == ErrorKind::NotOrderly);
}

TEST_CASE("term order") {
  CHECK(term_lt(ot("v0"), ot("v1")));
  CHECK_FALSE(term_lt(ot("f v0 v2"), ot("v2")));
  CHECK(term_lt(ot("f f v0 v1 v2"), ot("v3")));
  CHECK_FALSE(term_lt(ot("v3"), ot("v1")));
}

TEST_CASE("variables") {
  CHECK(variables_of(parse_term("v5", kF)) == std::set<VarIndex>{5});
  CHECK(variables_of(parse_term("f v0 v3", kF)) == std::set<VarIndex>{0, 3});
  CHECK(variables_of(parse_term("f f v1 v2 v4", kF)) == std::set<VarIndex>{1, 2, 4});
  CHECK(variable_sequence(parse_term("f v3 v1", kF)) == std::vector<VarIndex>{3, 1});
}

TEST_CASE("admissible prefixes") {
  CHECK(error_kind([] { AdmissiblePrefix({}); }) == ErrorKind::NotAdmissible);
  CHECK(error_kind([] { prefix({"f v0 v2", "v2"}); }) == ErrorKind::NotAdmissible);
  CHECK(AdmissiblePrefix::identity(3) == prefix({"v0", "v1", "v2"}));
  std::vector<std::string> raw{"f v0 v1", "v2"};
  CHECK(AdmissiblePrefix::parse(raw, kF) == prefix({"f v0 v1", "v2"}));
}

TEST_CASE("substitution examples") {
  CHECK(substitute(ot("f v0 v1"), prefix({"v0", "v1"})) == ot("f v0 v1"));
  CHECK(substitute(ot("v2"), prefix({"v0", "v1", "f v4 v5"})) == ot("f v4 v5"));
  CHECK(substitute(ot("f v0 v1"), prefix({"f v0 v1", "f v2 v3"})) == ot("f f v0 v1 f v2 v3"));
  CHECK(error_kind([] { substitute(ot("f v0 v2"), prefix({"v0", "v1"})); }) ==
        ErrorKind::IndexBeyondPrefix);
}

TEST_CASE("composition keeps the covered leading entries") {
  auto outer = prefix({"v0", "f v1 v2", "v4"});
  auto inner = prefix({"v1", "v3", "v5", "v7"});
  auto c = compose(outer.terms(), inner.terms());
  CHECK(texts(c) == std::vector<std::string>{"v1", "f v3 v5"});
}

TEST_CASE("enumeration examples") {
  CHECK(texts(enumerate_orderly_terms(kF, 1, 1)) == std::vector<std::string>{"v0", "v1"});
  CHECK(texts(enumerate_orderly_terms(kF, 3, 1)) ==
        std::vector<std::string>{"v0", "v1", "f v0 v1"});
  CHECK(texts(enumerate_orderly_terms(kF, 3, 2)) ==
        std::vector<std::string>{"v0", "v1", "v2", "f v0 v1", "f v0 v2", "f v1 v2"});
  // Variables compare by numeric index.
  auto ten = texts(enumerate_orderly_terms(kF, 1, 10));
  CHECK(ten.back() == "v10");
  CHECK(ten[2] == "v2");
}

TEST_CASE("enumeration matches the brute-force oracle") {
  struct Case {
    Signature sig;
    oracle::Arities arities;
    std::size_t size;
    VarIndex index;
  };
  const std::vector<Case> cases{
      {kF, oracle::binary_f(), 7, 4},
      {kF, oracle::binary_f(), 5, 6},
      {Signature({{"g", 1}, {"h", 3}}), {{"g", 1}, {"h", 3}}, 6, 3},
  };
  for (const auto& c : cases) {
    auto terms = enumerate_orderly_terms(c.sig, c.size, c.index);
    auto got = texts(terms, c.sig);
    std::set<std::string> unique(got.begin(), got.end());
    CHECK(unique.size() == got.size());
    CHECK(unique == oracle::orderly_texts(c.arities, c.size, static_cast<int>(c.index)));
    CHECK(std::is_sorted(terms.begin(), terms.end(),
                         [&](const OrderlyTerm& a, const OrderlyTerm& b) {
                           return CanonicalLess(c.sig)(a, b);
                         }));
    for (std::size_t i = 1; i < terms.size(); ++i) {
      CHECK(terms[i - 1].size() <= terms[i].size());
    }
  }
}

TEST_CASE("round trip over enumerated terms") {
  const Signature mixed({{"g", 1}, {"h", 3}, {"f", 2}});
  for (const auto* sig : {&kF, &mixed}) {
    for (const auto& t : enumerate_orderly_terms(*sig, 6, 4)) {
      const std::string text = to_string(t, *sig);
      CHECK(parse_term(text, *sig) == t.term());
    }
  }
}

TEST_CASE("admissible prefix enumeration") {
  auto two = enumerate_admissible_prefixes(kF, 2, 1, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0] == prefix({"v0", "v1"}));
  CHECK(two[1] == prefix({"v0", "v2"}));
  CHECK(two[2] == prefix({"v1", "v2"}));

  auto singles = enumerate_admissible_prefixes(kF, 1, 3, 1);
  REQUIRE(singles.size() == 3);
  CHECK(singles[2] == prefix({"f v0 v1"}));

  CHECK(enumerate_admissible_prefixes(kF, 3, 1, 1).empty());

  SUBCASE("stream matches brute force over the pool") {
    const auto pool = enumerate_orderly_terms(kF, 3, 5);
    for (std::size_t length = 1; length <= 3; ++length) {
      std::vector<std::vector<std::size_t>> expected;
      std::vector<std::size_t> idx;
      std::function<void(std::size_t)> go = [&](std::size_t start) {
        if (idx.size() == length) {
          expected.push_back(idx);
          return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
          if (!idx.empty() && !term_lt(pool[idx.back()], pool[i])) continue;
          idx.push_back(i);
          go(0);
          idx.pop_back();
        }
      };
      go(0);
      std::sort(expected.begin(), expected.end());

      AdmissiblePrefixStream stream(pool, length);
      std::size_t n = 0;
      while (auto p = stream.next()) {
        REQUIRE(n < expected.size());
        for (std::size_t j = 0; j < length; ++j) CHECK((*p)[j] == pool[expected[n][j]]);
        ++n;
      }
      CHECK(n == expected.size());
      stream.reset();
      std::vector<OrderlyTerm> first;
      for (auto j : expected.front()) first.push_back(pool[j]);
      CHECK(stream.next() == AdmissiblePrefix(first));
    }
  }
}

TEST_CASE("substitution agrees with the tree oracle") {
  gen::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto t = gen::prefix(kF, rng, gen::uniform(rng, 1, 4), 3, 2);
    for (const auto& s : enumerate_orderly_terms(kF, 5, static_cast<VarIndex>(t.size() - 1))) {
      std::vector<oracle::Node> nodes;
      for (const auto& ti : t.terms()) nodes.push_back(oracle::parse(to_string(ti, kF)));
      const auto expected = oracle::print(oracle::subst(oracle::parse(to_string(s, kF)), nodes));
      CHECK(to_string(substitute(s, t), kF) == expected);
    }
  }
}

TEST_CASE("substitution laws on random prefixes") {
  gen::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = gen::prefix(kF, rng, 3, 3, 1);
    auto u = gen::prefix(kF, rng, 8, 2, 1);
    const auto pool = enumerate_orderly_terms(kF, 5, 2);
    const auto tu = compose(t.terms(), u.terms());
    for (const auto& s : pool) {
      const auto st = substitute(s, t);
      CHECK(is_orderly(st.term()));
      if (st.term().max_var() < u.size()) {
        // (s[t])[u] = s[<t(i)[u]>]
        REQUIRE(s.term().max_var() < tu.size());
        CHECK(substitute(st, u) == substitute(s, tu));
      }
    }
    for (const auto& s1 : pool) {
      for (const auto& s2 : pool) {
        if (term_lt(s1, s2)) CHECK(term_lt(substitute(s1, t), substitute(s2, t)));
      }
    }
  }
}
