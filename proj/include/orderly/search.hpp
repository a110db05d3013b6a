#pragma once

#include <chrono>
#include <cstddef>
#include <optional>
#include <vector>

#include "orderly/coloring.hpp"
#include "orderly/report.hpp"
#include "orderly/term.hpp"
#include "orderly/view.hpp"

namespace orderly {

// Bounds of a witness search. Witnesses are admissible prefixes of length k
// built from terms of size <= max_size and index <= max_index (clipped to the
// view's coverage; required when the view is unbounded). Homogeneity is
// judged on the reduced view's values of all orderly terms of size
// <= fr_size over v_0..v_{k-1}.
struct SearchConfig {
  std::size_t k = 1;
  std::size_t max_size = 1;
  std::optional<VarIndex> max_index;
  std::size_t fr_size = 1;
  std::optional<std::chrono::milliseconds> time_budget;
  std::size_t threads = 1;
};

enum class Outcome { Found, Exhausted, TimedOut };
enum class Side { Contained, Disjoint, Constant };

struct CertificateEntry {
  std::vector<OrderlyTerm> terms;  // one term, or an n-tuple t1 < ... < tn
  Value value;                     // the value, or the tuple of values
};

struct SearchStats {
  std::size_t prefixes_examined = 0;
  std::size_t fr_terms = 0;
  std::size_t tuples_per_prefix = 0;
};

struct SearchResult {
  Outcome outcome = Outcome::Exhausted;
  std::optional<AdmissiblePrefix> witness;
  Side side = Side::Contained;
  std::vector<CertificateEntry> certificate;
  SearchStats stats;
  std::size_t tuple_arity = 1;
};

// First witness, in canonical order, whose reduction has all finite
// reductions inside or all outside the coloring.
SearchResult find_homogeneous_reduction(const OrderlyView& v, const Coloring& c,
                                        const SearchConfig& cfg);

// As above, with homogeneity judged on <-increasing n-tuples of finite
// reductions; the coloring sees each tuple as a Value tuple. n = 1 is the
// plain search.
SearchResult find_tuple_homogeneous(const OrderlyView& v, const Coloring& c,
                                    std::size_t n, const SearchConfig& cfg);

// First witness whose reduction is constant on all finite reductions.
SearchResult find_constant_reduction(const OrderlyView& v, const SearchConfig& cfg);

// Re-evaluates every certificate entry on the base view, without the memo,
// and checks it against the coloring (or constancy when c is null).
bool verify_certificate(const OrderlyView& v, const Coloring* c, const SearchResult& r);

// For an injective view and its first symbol f of arity n: every reduction
// by a prefix <t0, t1, ...> within cfg puts B(v0) and B(f v0 ... v_{n-1}) on
// opposite sides of X = {A(t) : f occurs an even number of times before the
// first variable of t}. Throws NotInjective if the view collides within the
// bounds it needs.
CheckReport verify_one_to_one_obstruction(const OrderlyView& v, const SearchConfig& cfg);

}  // namespace orderly
