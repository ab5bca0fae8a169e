#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fixdyn {

inline constexpr std::uint64_t kDefaultFieldCap = 10'000'000;
inline constexpr std::uint64_t kDefaultExponentCap = 1'000'000;
inline constexpr std::uint64_t kDefaultSieveCap = 100'000'000;

// Raised when a request would exceed a configured scan, exponent or sieve
// bound. Work is refused outright rather than truncated.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fixdyn
