#pragma once

namespace ut {

// Upper incomplete gamma function Gamma(a,b) = \int_b^inf t^{a-1} e^{-t} dt,
// defined for any finite real a and b > 0. Relative accuracy ~1e-12 wherever
// the result is representable as a normal double.
double upper_incomplete_gamma(double a, double b);

// Exponential integral E1(b) = Gamma(0,b), b > 0.
double expint_e1(double b);

// Real branch W_{-1} of the Lambert W function on [-1/e, 0): the solution
// w <= -1 of w e^w = z. Inputs within 1e-14 of -1/e return exactly -1.
double lambert_w_m1(double z);

namespace detail {
// e^b * Gamma(a,b); avoids the e^{-b} underflow when b is large. Same domain
// as upper_incomplete_gamma.
double upper_incomplete_gamma_scaled(double a, double b);
}  // namespace detail

}  // namespace ut
