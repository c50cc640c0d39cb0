#pragma once

#include <cstdint>
#include <vector>

#include "mzproj/sampler.hpp"

// Spherical projections of a fixed data vector x: S_n(theta) = <x, theta>
// with theta uniform on S^{n-1}. The central fact is the chi factorization
// xi_n =d Z_n * theta_n (Z_n chi-distributed, independent of theta_n), which
// turns every conditional spherical moment into a closed form:
//   E_theta |S_n(theta)|^p = c_p * ||x||^p / E|Z_n|^p.
namespace mzproj::projection {

// <x, theta>; throws std::invalid_argument on dimension mismatch.
double project(const std::vector<double>& x, const std::vector<double>& theta);

struct SphericalMomentResult {
    std::int64_t n = 0;
    double p = 0.0;
    double norm_sq = 0.0;      // sum x_k^2 (may round to +inf for extreme inputs)
    double log_norm_sq = 0.0;  // always finite for nonzero x
    double value = 0.0;        // E_theta |S_n(theta)|^p
};

// Exact conditional moment. Overflow-safe for coordinates up to ~1e200:
// the norm is accumulated with power-of-two scaling and the closed form is
// evaluated with the scale exponent split off, so only a truly
// unrepresentable result saturates.
SphericalMomentResult exact_spherical_moment(const std::vector<double>& x, double p);

// Same closed form, fed from a precomputed partial sum of squares (used by
// the path statistics so cumulative norms are never re-summed).
SphericalMomentResult moment_from_norm_sq(std::int64_t n, double p, double norm_sq,
                                          double log_norm_sq);

struct McMomentEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::int64_t m = 0;
};

// Monte Carlo check of the closed form: mean of |<x,theta_i>|^p over m
// independent theta draws, with the standard error of the mean. Work is
// split into fixed-size blocks with per-block substreams and merged in block
// order, so results are bit-identical for every worker count.
McMomentEstimate mc_spherical_moment(const std::vector<double>& x, double p,
                                     std::int64_t m, sampler::SeedSpec seed,
                                     int threads = 1);

struct KsReport {
    std::int64_t n = 0;
    std::int64_t m = 0;
    double statistic = 0.0;  // two-sample Kolmogorov-Smirnov D
    double p_value = 0.0;    // asymptotic (Kolmogorov distribution)
};

// Distributional test of the factorization: compares m draws of <dir, xi_n>
// (xi_n standard Gaussian) against m draws of comparator_scale * Z_n *
// <dir, theta_n>. With comparator_scale = 1 the two laws are identical
// (both N(0,1) for unit dir); a scaled comparator provides the power check.
KsReport identity_test(std::int64_t n, std::int64_t m,
                       const std::vector<double>& direction, sampler::SeedSpec seed,
                       int threads = 1, double comparator_scale = 1.0);

// Two-sample KS statistic for pre-sorted samples (exposed for tests).
double ks_statistic_sorted(const std::vector<double>& a, const std::vector<double>& b);
// Survival function of the Kolmogorov distribution, Q(z) = P(K > z).
double kolmogorov_sf(double z);

}  // namespace mzproj::projection
