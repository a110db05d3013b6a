#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "orderly/term.hpp"
#include "orderly/value.hpp"

namespace orderly {

class Algebra;

// A finite algebra given by total operation tables. Table cells hold indices
// into the canonically sorted universe; the first argument is the most
// significant digit.
struct TableOps {
  std::vector<Value> universe;
  std::map<Value, std::size_t> position;
  std::vector<std::vector<std::size_t>> cells;  // one table per symbol
};

// (N>=1, +) with a single binary symbol.
struct NatAddOps {};

// Variable words over `alphabet` with the variable letter 'v'.
struct VariableWordOps {
  std::string alphabet;
};

// h((x1,y1),(x2,y2)) = (g(x1,y1), g(x2,y2)) over an algebra with one binary g.
struct PairOps {
  std::shared_ptr<const Algebra> inner;
};

// Per-symbol operation table: argument tuple -> result.
using OperationTable = std::map<std::vector<Value>, Value>;

class Algebra {
 public:
  static Algebra table(Signature sig, std::vector<Value> universe,
                       const std::map<std::string, OperationTable>& ops);
  static Algebra nat_add(std::string symbol = "f");
  static Algebra variable_words(std::string alphabet);
  static Algebra pair(Algebra inner);

  const Signature& signature() const { return sig_; }

  // The operation named by `symbol`; throws UniverseViolation on arguments
  // outside the universe.
  Value apply(SymbolId symbol, std::span<const Value> args) const;

  bool contains(const Value& v) const;
  void check_assignment(std::span<const Value> a) const;  // UniverseViolation

  // Canonically sorted universe, for table algebras only.
  std::optional<std::span<const Value>> finite_universe() const;

  // Full operation table of a table algebra (empty for built-ins).
  OperationTable table_of(SymbolId symbol) const;

  // "nat-add", "variable-words:<alphabet>", "pair:<inner>", or "table".
  std::string name() const;

  const TableOps* as_table() const { return std::get_if<TableOps>(&ops_); }
  const PairOps* as_pair() const { return std::get_if<PairOps>(&ops_); }

 private:
  using Ops = std::variant<TableOps, NatAddOps, VariableWordOps, PairOps>;
  Algebra(Signature sig, Ops ops) : sig_(std::move(sig)), ops_(std::move(ops)) {}

  Signature sig_;
  Ops ops_;
};

// The inductive interpretation t^A[a].
Value eval(const Term& t, const Algebra& alg, std::span<const Value> a);

// b(i) = t(i)^A[a].
Assignment reduce_sequence(const Algebra& alg, std::span<const Value> a,
                           const AdmissiblePrefix& witness);

struct FiniteReductionEntry {
  OrderlyTerm term;
  Value value;
};

// Values of every orderly term up to a size bound whose indices stay inside
// the assignment; entries keep the term that produced each value.
struct FiniteReductionSet {
  std::vector<FiniteReductionEntry> entries;
  std::set<Value> values;
};

FiniteReductionSet finite_reductions(const Algebra& alg, std::span<const Value> a,
                                     std::size_t max_size);

// The distinct (t1^A[a],...,tn^A[a]) over enumerated t1 < ... < tn, sorted.
std::vector<Value::Tuple> tuple_reductions(const Algebra& alg,
                                           std::span<const Value> a,
                                           std::size_t n, std::size_t max_size);

// Names of the variable-word operations for a letter.
std::string concat_right_name(char letter);  // (w,w') -> w * w'(a)
std::string concat_left_name(char letter);   // (w,w') -> w(a) * w'

inline Algebra variable_word_ops(std::string alphabet) {
  return Algebra::variable_words(std::move(alphabet));
}

inline Algebra pair_algebra(Algebra inner) { return Algebra::pair(std::move(inner)); }

// Interleaves pairs <(x0,y0),(x1,y1),...> into <x0,y0,x1,y1,...>.
Assignment interleave(std::span<const Value> pairs);

}  // namespace orderly
