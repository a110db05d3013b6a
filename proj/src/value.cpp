#include "orderly/value.hpp"

namespace orderly {

bool operator==(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return false;
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.data_);
        if constexpr (std::is_same_v<T, IndexSet>) {
          return x.indices == y.indices;
        } else if constexpr (std::is_same_v<T, TermText>) {
          return x.text == y.text;
        } else {
          return x == y;
        }
      },
      a.data_);
}

bool operator<(const Value& a, const Value& b) {
  if (a.data_.index() != b.data_.index()) return a.data_.index() < b.data_.index();
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        const auto& y = std::get<T>(b.data_);
        if constexpr (std::is_same_v<T, IndexSet>) {
          return x.indices < y.indices;
        } else if constexpr (std::is_same_v<T, TermText>) {
          return x.text < y.text;
        } else if constexpr (std::is_same_v<T, Value::Tuple>) {
          return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end());
        } else {
          return x < y;
        }
      },
      a.data_);
}

std::string to_string(const Value& v) {
  if (const auto* n = v.as_integer()) return n->str();
  if (const auto* s = v.as_symbol()) return *s;
  if (const auto* t = v.as_tuple()) {
    std::string out = "(";
    for (std::size_t i = 0; i < t->size(); ++i) {
      if (i) out += ',';
      out += to_string((*t)[i]);
    }
    return out + ")";
  }
  if (const auto* s = v.as_index_set()) {
    std::string out = "{";
    for (std::size_t i = 0; i < s->indices.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(s->indices[i]);
    }
    return out + "}";
  }
  return "[" + v.as_term()->text + "]";
}

}  // namespace orderly
