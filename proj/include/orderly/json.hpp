#pragma once

#include <json.hpp>
#include <string_view>

#include "orderly/algebra.hpp"
#include "orderly/coloring.hpp"
#include "orderly/report.hpp"
#include "orderly/search.hpp"
#include "orderly/sharp.hpp"
#include "orderly/term.hpp"
#include "orderly/value.hpp"
#include "orderly/view.hpp"

namespace orderly {

// Insertion-ordered, so emitted reports are byte-stable.
using Json = nlohmann::ordered_json;

// Parse failures and shape errors surface as Error(InvalidInput).
Json parse_json(std::string_view text);

// {"symbols":[{"name":"f","arity":2}]}
Signature signature_from_json(const Json& j);
Json to_json(const Signature& sig);

// Numbers, {"int":"<digits>"} for big integers, strings, arrays (tuples),
// {"indices":[...]} and {"term":"<text>"}.
Value value_from_json(const Json& j);
Json to_json(const Value& v);

Assignment assignment_from_json(const Json& j);
Json to_json(std::span<const Value> values);

// {"terms":["f v0 v1","v2"]} or a bare array of term texts.
std::vector<OrderlyTerm> terms_from_json(const Json& j, const Signature& sig);
AdmissiblePrefix prefix_from_json(const Json& j, const Signature& sig);
Json to_json(std::span<const OrderlyTerm> terms, const Signature& sig);

// A table object {"universe":[...],"ops":{"f":{"arity":2,"table":{"x,y":"z"}}}}
// (table keys are the comma-joined arguments), or a built-in name:
// "nat-add", "variable-words:<alphabet>", "pair:<inner>", {"pair":<inner>}.
Algebra algebra_from_json(const Json& j);
Json to_json(const Algebra& alg);

// {"kind":"induced","algebra":...,"assignment":[...]}
// {"kind":"reduced","base":...,"witness":[...]}
// {"kind":"trivial","value":c} {"kind":"index-set"} {"kind":"free"}
// {"kind":"sharp","base":...} {"kind":"patched","base":...,"term":t,"value":c}
// Views without an algebra take "signature", defaulting to `fallback`.
OrderlyView view_from_json(const Json& j, const Signature& fallback);

// {"kind":"residue","modulus":2,"accept":[0]} {"kind":"member","set":[...]}
// {"kind":"leading-parity","symbol":"f","parity":"even"}
// {"kind":"component","index":0,"inner":{...}}
Coloring coloring_from_json(const Json& j);
Json to_json(const Coloring& c);

Json to_json(const Bounds& b);
Json to_json(const CheckReport& r);
Json to_json(const SharpLiftReport& r);
Json to_json(const SemigroupReport& r);
Json to_json(const Reconstruction& r);
Json to_json(const SearchResult& r, const Signature& sig);

std::string_view to_string(Outcome o);
std::string_view to_string(Side s);

}  // namespace orderly
