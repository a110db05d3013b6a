#include "orderly/sharp.hpp"

#include "orderly/error.hpp"

namespace orderly {

namespace {

SymbolId require_single_binary(const Signature& sig) {
  auto f = sig.single_binary();
  if (!f) {
    throw Error(ErrorKind::WrongSignature,
                "the sharp construction needs a single binary symbol");
  }
  return *f;
}

struct Split {
  std::vector<Token> x;
  std::vector<Token> y;
};

Split split_at(std::span<const Token> tokens, std::size_t& pos) {
  const Token head = tokens[pos++];
  if (head.is_var()) {
    return {{Token::var(2 * head.index())}, {Token::var(2 * head.index() + 1)}};
  }
  Split s = split_at(tokens, pos);
  Split t = split_at(tokens, pos);
  Split out;
  out.x.reserve(1 + s.x.size() + s.y.size());
  out.x.push_back(head);
  out.x.insert(out.x.end(), s.x.begin(), s.x.end());
  out.x.insert(out.x.end(), s.y.begin(), s.y.end());
  out.y.reserve(1 + t.x.size() + t.y.size());
  out.y.push_back(head);
  out.y.insert(out.y.end(), t.x.begin(), t.x.end());
  out.y.insert(out.y.end(), t.y.begin(), t.y.end());
  return out;
}

OrderlyTerm wrap(const Signature& sig, SymbolId f, const Term& a, const Term& b) {
  std::vector<Term> args{a, b};
  return OrderlyTerm(Term::apply(sig, f, args));
}

}  // namespace

SharpPair sharp_split(const OrderlyTerm& t, const Signature& sig) {
  require_single_binary(sig);
  std::size_t pos = 0;
  Split s = split_at(t.term().tokens(), pos);
  return {OrderlyTerm(Term::from_tokens(std::move(s.x))),
          OrderlyTerm(Term::from_tokens(std::move(s.y)))};
}

bool satisfies_occurrence_law(const OrderlyTerm& t, const SharpPair& split) {
  if (!term_lt(split.x, split.y)) return false;
  auto in_t = variables_of(t);
  auto in_pair = variables_of(split.x);
  for (auto i : variables_of(split.y)) in_pair.insert(i);
  const VarIndex top = std::max(split.x.term().max_var(), split.y.term().max_var());
  for (VarIndex i = 0; 2 * i <= top + 1; ++i) {
    const bool both = in_pair.contains(2 * i) && in_pair.contains(2 * i + 1);
    if (in_t.contains(i) != both) return false;
  }
  // Nothing in the pair may be an orphan half of a split variable.
  for (auto j : in_pair) {
    if (!in_t.contains(j / 2)) return false;
  }
  return true;
}

AdmissiblePrefix sharp_witness_transform(const AdmissiblePrefix& t, const Signature& sig) {
  const SymbolId f = require_single_binary(sig);
  std::vector<OrderlyTerm> out;
  out.reserve(t.size());
  for (const auto& ti : t.terms()) {
    auto split = sharp_split(ti, sig);
    out.push_back(wrap(sig, f, split.x, split.y));
  }
  return AdmissiblePrefix(std::move(out));
}

AdmissiblePrefix sharp_pair_witness(const AdmissiblePrefix& u, const Signature& sig) {
  const SymbolId f = require_single_binary(sig);
  if (u.size() % 2 != 0) {
    throw Error(ErrorKind::OddLength,
                "pairing needs an even-length prefix, got " + std::to_string(u.size()));
  }
  std::vector<OrderlyTerm> out;
  out.reserve(u.size() / 2);
  for (std::size_t i = 0; i + 1 < u.size(); i += 2) {
    out.push_back(wrap(sig, f, u[i], u[i + 1]));
  }
  return AdmissiblePrefix(std::move(out));
}

SharpLiftReport check_sharp_lift(const OrderlyView& base, const AdmissiblePrefix& t,
                                 const AdmissiblePrefix& u, Bounds bounds) {
  const auto& sig = base.signature();
  const SymbolId f = require_single_binary(sig);
  const AdmissiblePrefix t_lift = sharp_witness_transform(t, sig);
  const AdmissiblePrefix u_pair = sharp_pair_witness(u, sig);

  const OrderlyView b = reduce_view(sharp_view(base), t);
  const OrderlyView c = reduce_view(base, t_lift);
  const OrderlyView d = reduce_view(c, u);

  SharpLiftReport report;
  report.witness_identity = {.check = "sharp-witness-identity", .bounds = bounds};
  report.pair_identity = {.check = "sharp-pair-identity", .bounds = bounds};

  for (const auto& s : enumerate_orderly_terms(sig, bounds.max_size, bounds.max_index)) {
    const VarIndex top = s.term().max_var();
    if (top < t.size()) {
      auto lhs = substitute(s, t_lift);
      auto st = sharp_split(substitute(s, t), sig);
      auto rhs = wrap(sig, f, st.x, st.y);
      ++report.witness_identity.checked;
      if (!(lhs == rhs)) {
        report.witness_identity.add(
            {{to_string(s, sig), to_string(lhs, sig), to_string(rhs, sig)}, {},
             "s[t'] differs from f (s[t])^x (s[t])^y"});
      }
    } else {
      ++report.witness_identity.skipped;
    }
    if (top < u_pair.size()) {
      auto lhs = substitute(s, u_pair);
      auto ss = sharp_split(s, sig);
      auto rhs = substitute(wrap(sig, f, ss.x, ss.y), u);
      ++report.pair_identity.checked;
      if (!(lhs == rhs)) {
        report.pair_identity.add(
            {{to_string(s, sig), to_string(lhs, sig), to_string(rhs, sig)}, {},
             "s[u'] differs from (f s^x s^y)[u]"});
      }
    } else {
      ++report.pair_identity.skipped;
    }
  }
  report.reduction = check_sharp_reduction(d, b, u_pair.terms(), bounds);
  return report;
}

CheckReport check_sharp_reduction(const OrderlyView& d, const OrderlyView& b,
                                  std::span<const OrderlyTerm> witness, Bounds bounds) {
  const auto& sig = b.signature();
  CheckReport report{.check = "sharp-reduction", .bounds = bounds};
  const OrderlyView sharp_d = sharp_view(d);
  for (const auto& s : enumerate_orderly_terms(sig, bounds.max_size, bounds.max_index)) {
    Value lhs, rhs;
    try {
      lhs = sharp_d.value(s);
      rhs = b.value(substitute(s, witness));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::IndexBeyondPrefix) throw;
      ++report.skipped;
      continue;
    }
    ++report.checked;
    if (lhs != rhs) {
      report.add({{to_string(s, sig)}, {lhs, rhs}, "#D(s) differs from B(s[u'])"});
    }
  }
  return report;
}

CheckReport check_pair_sharp_equality(const Algebra& inner,
                                      std::span<const Value> pairs, Bounds bounds) {
  CheckReport report{.check = "pair-sharp-equality", .bounds = bounds};
  if (pairs.empty()) return report;
  const Algebra outer = pair_algebra(inner);
  const auto& sig = outer.signature();
  const Assignment b(pairs.begin(), pairs.end());
  const OrderlyView left = OrderlyView::induced(outer, b);
  const OrderlyView right = sharp_view(OrderlyView::induced(inner, interleave(pairs)));
  const VarIndex max_index =
      std::min<VarIndex>(bounds.max_index, static_cast<VarIndex>(pairs.size() - 1));
  for (const auto& s : enumerate_orderly_terms(sig, bounds.max_size, max_index)) {
    Value lv = left.value(s);
    Value rv = right.value(s);
    ++report.checked;
    if (lv != rv) {
      report.add({{to_string(s, sig)}, {lv, rv}, "pair algebra and sharp view differ"});
    }
  }
  return report;
}

}  // namespace orderly
