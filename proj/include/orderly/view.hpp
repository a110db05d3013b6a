#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "orderly/algebra.hpp"
#include "orderly/coloring.hpp"
#include "orderly/report.hpp"
#include "orderly/term.hpp"
#include "orderly/value.hpp"

namespace orderly {

enum class ViewKind { Induced, Trivial, IndexSet, Free, Reduced, Sharp, Patched };

// An orderly algebra: a valuation of orderly terms. Views are cheap shared
// handles to immutable nodes; each node memoizes its values behind a lock,
// so value() may be called from several threads.
class OrderlyView {
 public:
  // t -> t^A[a]
  static OrderlyView induced(Algebra alg, Assignment a);
  // t -> c
  static OrderlyView trivial(Signature sig, Value c);
  // t -> {i : v_i occurs in t}
  static OrderlyView index_set(Signature sig);
  // t -> t
  static OrderlyView free(Signature sig);
  // t -> (A(t^x), A(t^y)); the language must be one binary symbol.
  static OrderlyView sharp(OrderlyView base);
  // The base with one value replaced; used to inject congruence faults.
  static OrderlyView patched(OrderlyView base, OrderlyTerm at, Value value);

  ViewKind kind() const;
  const Signature& signature() const;

  // Number of leading variables v_0, v_1, ... the view can evaluate;
  // nullopt when unbounded. Uncovered queries throw IndexBeyondPrefix.
  std::optional<std::size_t> coverage() const;
  bool covers(const OrderlyTerm& t) const;

  Value value(const OrderlyTerm& t) const;
  Value value_uncached(const OrderlyTerm& t) const;

  // Node accessors, meaningful for the matching kind only.
  const Algebra* algebra() const;
  const Assignment* assignment() const;
  const Value* constant() const;
  const OrderlyView* base() const;
  const std::vector<OrderlyTerm>* witness() const;
  const OrderlyTerm* patched_term() const;

  std::string describe() const;

  struct Node;

 private:
  explicit OrderlyView(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  friend OrderlyView reduce_view(const OrderlyView& v, const AdmissiblePrefix& witness);
  friend OrderlyView reduce_view(const OrderlyView& v, std::vector<OrderlyTerm> witness);

  std::shared_ptr<const Node> node_;
};

// B(s) = A(s[witness]). A reduction of a reduction is flattened into one
// witness by substitution composition.
OrderlyView reduce_view(const OrderlyView& v, const AdmissiblePrefix& witness);
OrderlyView reduce_view(const OrderlyView& v, std::vector<OrderlyTerm> witness);

// b(i) = A(v_i).
Assignment induced_sequence(const OrderlyView& v, std::size_t length);

// Orderly terms within the bounds that the view covers, in canonical order.
std::vector<OrderlyTerm> covered_terms(const OrderlyView& v, Bounds bounds);

// Congruence: equal argument values (for <-increasing arguments) force equal
// application values. Applications larger than max_size are not examined.
CheckReport check_congruence(const OrderlyView& v, Bounds bounds);

struct Reconstruction {
  Algebra algebra;
  Assignment assignment;    // a(i) = A(v_i) over the covered index range
  std::size_t realized = 0;   // table cells fixed by some term
  std::size_t defaulted = 0;  // cells filled with the default
};

// Tabulates (A(t1),...,A(tn)) -> A(f t1...tn) over enumerated terms and fills
// unrealized cells with `fill` (default: the least universe value).
// Throws CongruenceViolation on conflicting cells and UniverseOverflow when
// the tables would exceed `max_cells`.
Reconstruction reconstruct_algebra(const OrderlyView& v, Bounds bounds,
                                   std::optional<Value> fill = std::nullopt,
                                   std::size_t max_cells = std::size_t{1} << 20);

struct SemigroupReport {
  CheckReport bracketing;      // A(f f t1 t2 t3) = A(f t1 f t2 t3)
  CheckReport same_variables;  // equal variable sets give equal values

  bool passed() const { return bracketing.passed() && same_variables.passed(); }
};

SemigroupReport is_orderly_semigroup(const OrderlyView& v, Bounds bounds);

// Terms with the same variables must fall on the same side of the coloring.
CheckReport check_prehomogeneous(const OrderlyView& v, const Coloring& coloring,
                                 Bounds bounds);

// Reports distinct terms with equal values.
CheckReport check_injectivity(const OrderlyView& v, Bounds bounds);

}  // namespace orderly
