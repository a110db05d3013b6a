#pragma once

#include <span>

#include "orderly/algebra.hpp"
#include "orderly/report.hpp"
#include "orderly/term.hpp"
#include "orderly/view.hpp"

namespace orderly {

// The index-doubling split of a term over one binary symbol f:
//   v_i      -> (v_{2i}, v_{2i+1})
//   f s t    -> (f s^x s^y, f t^x t^y)
struct SharpPair {
  OrderlyTerm x;
  OrderlyTerm y;
};

// Throws WrongSignature unless the language is a single binary symbol.
SharpPair sharp_split(const OrderlyTerm& t, const Signature& sig);

// v_i occurs in t iff both v_{2i} and v_{2i+1} occur in x or y; and x < y.
bool satisfies_occurrence_law(const OrderlyTerm& t, const SharpPair& split);

// The pair-valued view t -> (A(t^x), A(t^y)).
inline OrderlyView sharp_view(const OrderlyView& base) { return OrderlyView::sharp(base); }

// <t_i> -> <f t_i^x t_i^y>
AdmissiblePrefix sharp_witness_transform(const AdmissiblePrefix& t, const Signature& sig);

// <u_0, u_1, ...> -> <f u_0 u_1, f u_2 u_3, ...>; throws OddLength.
AdmissiblePrefix sharp_pair_witness(const AdmissiblePrefix& u, const Signature& sig);

// Given a reduction B of #A witnessed by t, C the reduction of A witnessed by
// <f t_i^x t_i^y>, and D the reduction of C witnessed by u, checks over every
// enumerated s:
//   s[t'] = f (s[t])^x (s[t])^y          (syntactic)
//   s[u'] = (f s^x s^y)[u]               (syntactic)
//   #D(s) = B(s[u'])                     (values)
// with u' = <f u_0 u_1, f u_2 u_3, ...>. Terms the prefixes do not cover are
// counted as skipped.
struct SharpLiftReport {
  CheckReport witness_identity;
  CheckReport pair_identity;
  CheckReport reduction;

  bool passed() const {
    return witness_identity.passed() && pair_identity.passed() && reduction.passed();
  }
};

SharpLiftReport check_sharp_lift(const OrderlyView& base, const AdmissiblePrefix& t,
                                 const AdmissiblePrefix& u, Bounds bounds);

// #D(s) = B(s[witness]) for every covered enumerated s.
CheckReport check_sharp_reduction(const OrderlyView& d, const OrderlyView& b,
                                  std::span<const OrderlyTerm> witness, Bounds bounds);

// The pair algebra induced by b agrees with # of the inner algebra induced by
// the interleaving of b, on every enumerated term.
CheckReport check_pair_sharp_equality(const Algebra& inner,
                                      std::span<const Value> pairs, Bounds bounds);

}  // namespace orderly
