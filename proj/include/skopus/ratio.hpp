#pragma once

#include <cstdint>

namespace skopus {

/* Exact rational score value. Rankings must be reproducible across
 * platforms, so all score comparisons cross-multiply in 128-bit integers
 * instead of going through floating point. Denominator is always > 0.
 */
struct Ratio {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

inline int compare(const Ratio& a, const Ratio& b) {
  const __int128 lhs = static_cast<__int128>(a.num) * b.den;
  const __int128 rhs = static_cast<__int128>(b.num) * a.den;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

inline bool operator<(const Ratio& a, const Ratio& b) { return compare(a, b) < 0; }
inline bool operator>(const Ratio& a, const Ratio& b) { return compare(a, b) > 0; }
inline bool operator<=(const Ratio& a, const Ratio& b) { return compare(a, b) <= 0; }
inline bool operator>=(const Ratio& a, const Ratio& b) { return compare(a, b) >= 0; }
inline bool operator==(const Ratio& a, const Ratio& b) { return compare(a, b) == 0; }
inline bool operator!=(const Ratio& a, const Ratio& b) { return compare(a, b) != 0; }

}  // namespace skopus
