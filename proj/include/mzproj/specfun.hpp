#pragma once

#include <cstdint>

// Gamma-function machinery used by the exact spherical-moment formulas.
// Everything here is a pure function of its arguments and safe to call
// concurrently. Domain violations throw std::domain_error.
namespace mzproj::specfun {

// ln Gamma(x) for x > 0. Relative error <= 1e-13 on [1e-3, 1e8]
// (measured against 40-digit references; error is relative to
// max(1,|ln Gamma|) only at the roots x=1,2, which return exact 0).
double log_gamma(double x);

namespace detail {
// ln[ Gamma(x+a) / (x^a Gamma(x)) ] for x > 0, 0 < a <= 1.
// Evaluated cancellation-free for large x (Stirling tails combined
// analytically), so the result stays accurate even when ln Gamma itself
// is ~1e9 and a naive difference would lose every significant digit.
double log_gamma_ratio(double x, double a);
}  // namespace detail

// E Z^s for Z ~ chi-square with n degrees of freedom:
//   E Z^s = 2^s Gamma(n/2 + s) / Gamma(n/2),  s > 0.
// Never forms Gamma(n/2) directly; finite for all n the double grid can
// express (tested to n = 1e9). s = 1 gives exactly n (in exact arithmetic
// and in the returned bits).
double chi_square_moment(std::int64_t n, double s);

// E |Z_n|^p for Z_n ~ chi with n degrees of freedom. Implemented as
// chi_square_moment(n, p/2) (bit-identical to that call).
double chi_norm_moment(std::int64_t n, double p);

// c_p = E|N(0,1)|^p = 2^{p/2} Gamma((1+p)/2) / Gamma(1/2), 0 < p <= 2.
double gaussian_abs_moment(double p);

// Wendel's bracket for the ratio Gamma(x+a) / (x^a Gamma(x)), 0 < a <= 1:
//   (x/(x+a))^{1-a}  <=  ratio  <=  1.
// `value` is the ratio itself; at a=1 the ratio is identically 1.
struct GammaRatioBounds {
    double lower;
    double value;
    double upper;
};
GammaRatioBounds wendel_ratio(double x, double a);

// w3(k) = k^{1/2} Gamma(k/2) / (2^{1/2} Gamma((k+1)/2)), in [1, sqrt(2)].
// This is the exact normalizer turning sqrt(sum of squares) into
// k^{1/2} E_theta |S_k(theta)|.
double theorem3_weight(std::int64_t k);

// w4(k,r) = k^{r/2} Gamma(k/2) / (2^{r/2} Gamma((k+r)/2)), r in [1,2),
// in [1, (1+r)^{1-r/2}]. At r=1 returns theorem3_weight(k) bit-identically.
double theorem4_weight(std::int64_t k, double r);

}  // namespace mzproj::specfun
