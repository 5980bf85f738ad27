#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace avgrare {

/// A subset of the ground set [0, n), one bit per element.
using Mask = std::uint64_t;

/// Index of an element of the ground set.
using ElementId = int;

/// Largest supported ground set: one mask is one machine word.
inline constexpr int kMaxGround = 64;

/// Largest ground set for operations that walk all 2^n subsets.
inline constexpr int kMaxEnumerable = 30;

/// Bad user input: out-of-range element, violated precondition, malformed data.
class InputError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// A checked identity or inequality failed. Signals a bug, never bad input.
class InconsistencyError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

inline constexpr Mask bit(ElementId v) { return Mask{1} << v; }

inline constexpr Mask full_mask(int n) {
  return n >= 64 ? ~Mask{0} : (Mask{1} << n) - 1;
}

inline constexpr bool has(Mask m, ElementId v) { return (m >> v) & 1u; }

inline constexpr int popcount(Mask m) { return std::popcount(m); }

inline constexpr bool subset_of(Mask a, Mask b) { return (a & ~b) == 0; }

/// Elements of `m` in ascending order.
inline std::vector<ElementId> elements_of(Mask m) {
  std::vector<ElementId> out;
  while (m != 0) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

/// Removes bit `x` and shifts the bits above it down by one.
inline constexpr Mask drop_bit(Mask m, ElementId x) {
  const Mask low = m & (bit(x) - 1);
  const Mask high = x >= 63 ? 0 : (m >> (x + 1)) << x;
  return low | high;
}

/// Human name of element `v` on a ground set of size `n`: a..z, or e0, e1, ...
inline std::string element_name(ElementId v, int n) {
  if (n <= 26) return std::string(1, static_cast<char>('a' + v));
  return "e" + std::to_string(v);
}

inline void check_ground_size(int n) {
  if (n < 0 || n > kMaxGround)
    throw InputError("ground size " + std::to_string(n) + " outside [0, " +
                     std::to_string(kMaxGround) + "]");
}

inline void check_element(ElementId v, int n) {
  if (v < 0 || v >= n)
    throw InputError("element " + std::to_string(v) + " out of range for ground size " +
                     std::to_string(n));
}

inline void check_enumerable(int n) {
  if (n > kMaxEnumerable)
    throw InputError("ground size " + std::to_string(n) + " too large to enumerate all subsets");
}

}  // namespace avgrare
