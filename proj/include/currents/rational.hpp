#pragma once
#include <gmpxx.h>
#include <complex>
#include <string>

namespace currents {

// Exact scalar: arbitrary-precision rational, always stored canonically
// (reduced, positive denominator) by GMP.
using Rational = mpq_class;

using Cplx = std::complex<double>;

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline double to_double(const Rational& q) { return q.get_d(); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_zero(const Cplx& z) { return z == Cplx(0.0, 0.0); }

} // namespace currents
