#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace linecut {

// Exact rational coordinate. mpq_class keeps values canonical after every
// arithmetic operation (gcd(num, den) == 1, den > 0).
using Scalar = mpq_class;

// Accepts "num/den" or a bare integer "num". Throws ParseError on malformed
// text or a zero denominator.
Scalar parse_scalar(std::string_view text);

// Always "num/den", including integers ("3/1").
std::string format_scalar(const Scalar& value);

// num/den in canonical form.
inline Scalar ratio(long num, long den) {
  Scalar q(num, den);
  q.canonicalize();
  return q;
}

inline int sign(const Scalar& value) { return sgn(value); }

inline double to_double(const Scalar& value) { return value.get_d(); }

inline Scalar abs_value(const Scalar& value) { return abs(value); }

}  // namespace linecut
