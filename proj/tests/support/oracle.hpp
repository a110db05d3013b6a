#pragma once

// Reference implementations used only by tests. They work on explicit trees
// parsed from text and share no code with the library.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Node {
  std::string head;  // symbol name; empty for a variable
  int var = -1;
  std::vector<Node> kids;

  bool is_var() const { return var >= 0; }
  bool operator==(const Node&) const = default;
};

using Arities = std::map<std::string, int>;

inline Arities binary_f() { return {{"f", 2}}; }

inline Node parse_tokens(const std::vector<std::string>& toks, std::size_t& pos,
                         const Arities& ar) {
  if (pos >= toks.size()) throw std::runtime_error("oracle: truncated term");
  const std::string& tok = toks[pos++];
  if (tok.size() > 1 && tok[0] == 'v' &&
      std::all_of(tok.begin() + 1, tok.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    return Node{"", std::stoi(tok.substr(1)), {}};
  }
  auto it = ar.find(tok);
  if (it == ar.end()) throw std::runtime_error("oracle: unknown symbol " + tok);
  Node n{tok, -1, {}};
  for (int i = 0; i < it->second; ++i) n.kids.push_back(parse_tokens(toks, pos, ar));
  return n;
}

inline Node parse(const std::string& text, const Arities& ar = binary_f()) {
  std::istringstream in(text);
  std::vector<std::string> toks;
  for (std::string t; in >> t;) toks.push_back(t);
  std::size_t pos = 0;
  Node n = parse_tokens(toks, pos, ar);
  if (pos != toks.size()) throw std::runtime_error("oracle: trailing tokens");
  return n;
}

inline void print_into(const Node& n, std::string& out) {
  if (!out.empty()) out += ' ';
  if (n.is_var()) {
    out += "v" + std::to_string(n.var);
    return;
  }
  out += n.head;
  for (const auto& k : n.kids) print_into(k, out);
}

inline std::string print(const Node& n) {
  std::string out;
  print_into(n, out);
  return out;
}

inline void vars_into(const Node& n, std::vector<int>& out) {
  if (n.is_var()) {
    out.push_back(n.var);
    return;
  }
  for (const auto& k : n.kids) vars_into(k, out);
}

inline std::vector<int> vars(const Node& n) {
  std::vector<int> out;
  vars_into(n, out);
  return out;
}

inline bool orderly(const Node& n) {
  auto v = vars(n);
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] >= v[i]) return false;
  }
  return true;
}

inline std::size_t size(const Node& n) {
  std::size_t s = 1;
  for (const auto& k : n.kids) s += size(k);
  return s;
}

inline Node subst(const Node& s, const std::vector<Node>& t) {
  if (s.is_var()) return t.at(static_cast<std::size_t>(s.var));
  Node out{s.head, -1, {}};
  for (const auto& k : s.kids) out.kids.push_back(subst(k, t));
  return out;
}

// Every term (orderly or not) over the arities with exactly `size` symbols
// and variables, indices in 0..max_index.
inline std::vector<Node> all_terms(const Arities& ar, std::size_t size, int max_index) {
  std::vector<Node> out;
  if (size == 1) {
    for (int i = 0; i <= max_index; ++i) out.push_back(Node{"", i, {}});
    return out;
  }
  for (const auto& [name, arity] : ar) {
    // Distribute size-1 among `arity` children, each at least 1.
    std::function<void(int, std::size_t, std::vector<Node>&)> go =
        [&](int child, std::size_t left, std::vector<Node>& kids) {
          if (child == arity) {
            if (left == 0) out.push_back(Node{name, -1, kids});
            return;
          }
          const std::size_t rest = static_cast<std::size_t>(arity - child - 1);
          for (std::size_t s = 1; s + rest <= left; ++s) {
            for (const auto& k : all_terms(ar, s, max_index)) {
              kids.push_back(k);
              go(child + 1, left - s, kids);
              kids.pop_back();
            }
          }
        };
    std::vector<Node> kids;
    go(0, size - 1, kids);
  }
  return out;
}

inline std::set<std::string> orderly_texts(const Arities& ar, std::size_t max_size,
                                           int max_index) {
  std::set<std::string> out;
  for (std::size_t s = 1; s <= max_size; ++s) {
    for (const auto& n : all_terms(ar, s, max_index)) {
      if (orderly(n)) out.insert(print(n));
    }
  }
  return out;
}

// Sum interpretation of a single binary symbol over integers.
inline std::int64_t eval_sum(const Node& n, const std::vector<std::int64_t>& a) {
  if (n.is_var()) return a.at(static_cast<std::size_t>(n.var));
  std::int64_t s = 0;
  for (const auto& k : n.kids) s += eval_sum(k, a);
  return s;
}

// Generic interpretation: op(symbol, argument values).
template <typename V, typename Op>
V eval(const Node& n, const std::vector<V>& a, const Op& op) {
  if (n.is_var()) return a.at(static_cast<std::size_t>(n.var));
  std::vector<V> args;
  for (const auto& k : n.kids) args.push_back(eval(k, a, op));
  return op(n.head, args);
}

// The index-doubling split for one binary symbol.
inline std::pair<Node, Node> split(const Node& n) {
  if (n.is_var()) return {Node{"", 2 * n.var, {}}, Node{"", 2 * n.var + 1, {}}};
  auto [sx, sy] = split(n.kids[0]);
  auto [tx, ty] = split(n.kids[1]);
  return {Node{n.head, -1, {sx, sy}}, Node{n.head, -1, {tx, ty}}};
}

// Sums of all nonempty subsets of a.
inline std::set<std::int64_t> subset_sums(const std::vector<std::int64_t>& a) {
  std::set<std::int64_t> out;
  const std::size_t n = a.size();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask >> i & 1U) s += a[i];
    }
    out.insert(s);
  }
  return out;
}

// First (i0 < i1 < ... < i_{k-1}) in lexicographic order such that every
// nonempty subset sum of a[i_j] falls on the same side of `in`. This is the
// variables-only part of the witness space over a sum algebra.
inline std::vector<std::size_t> first_homogeneous_indices(
    const std::vector<std::int64_t>& a, std::size_t k,
    const std::function<bool(std::int64_t)>& in) {
  std::vector<std::size_t> idx;
  std::function<bool(std::size_t)> go = [&](std::size_t start) {
    if (idx.size() == k) {
      std::vector<std::int64_t> chosen;
      for (auto i : idx) chosen.push_back(a[i]);
      auto sums = subset_sums(chosen);
      const bool side = in(*sums.begin());
      return std::all_of(sums.begin(), sums.end(),
                         [&](std::int64_t s) { return in(s) == side; });
    }
    for (std::size_t i = start; i < a.size(); ++i) {
      idx.push_back(i);
      if (go(i + 1)) return true;
      idx.pop_back();
    }
    return false;
  };
  if (!go(0)) idx.clear();
  return idx;
}

}  // namespace oracle
