#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "orderly/term.hpp"
#include "orderly/value.hpp"

namespace orderly {

struct Violation {
  std::vector<std::string> terms;  // canonical texts
  std::vector<Value> values;
  std::string note;
};

// Outcome of a bounded exhaustive check. Only the first few violations are
// kept; violation_count counts all of them.
struct CheckReport {
  static constexpr std::size_t kMaxRecorded = 16;

  std::string check;
  Bounds bounds;
  std::size_t checked = 0;
  std::size_t skipped = 0;
  std::size_t violation_count = 0;
  std::vector<Violation> violations;

  bool passed() const { return violation_count == 0; }

  void add(Violation v) {
    ++violation_count;
    if (violations.size() < kMaxRecorded) violations.push_back(std::move(v));
  }
};

}  // namespace orderly
