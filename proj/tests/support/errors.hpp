#pragma once

#include <optional>

#include "orderly/error.hpp"

// The ErrorKind thrown by fn, or nullopt when it returns normally.
template <typename Fn>
std::optional<orderly::ErrorKind> error_kind(Fn&& fn) {
  try {
    fn();
  } catch (const orderly::Error& e) {
    return e.kind();
  }
  return std::nullopt;
}
