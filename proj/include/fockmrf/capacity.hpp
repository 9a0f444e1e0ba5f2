#pragma once

#include <cstddef>
#include <cstdlib>
#include <string>

#include "fockmrf/errors.hpp"

namespace fockmrf {

// Size guard for enumerated state spaces and expanded monomial counts.
// FOCKMRF_MAX_STATES overrides the default of 10^6.
inline std::size_t capacity_limit() {
  static const std::size_t limit = [] {
    if (const char* env = std::getenv("FOCKMRF_MAX_STATES")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return static_cast<std::size_t>(1'000'000);
  }();
  return limit;
}

inline void check_capacity(std::size_t count, const char* what) {
  if (count > capacity_limit())
    throw CapacityError(std::string(what) + " requires " + std::to_string(count) +
                        " entries, above the limit of " + std::to_string(capacity_limit()) +
                        " (set FOCKMRF_MAX_STATES to raise)");
}

}  // namespace fockmrf
