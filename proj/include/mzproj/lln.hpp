#pragma once

#include <cstdint>
#include <vector>

#include "mzproj/sampler.hpp"

// Law-of-large-numbers diagnostics for spherical-projection sums. The core
// statistic is T_n = n^{p/2-1} * E_theta |S_n(theta)|^p evaluated along data
// paths; the module aggregates it over replicas, estimates the exceedance
// probability P(|S_n(theta)| > eps * n^{1/p-1/2}), tracks almost-sure tail
// suprema along single paths, and reports the two truncation-bound
// components used to prove that T_n vanishes.
namespace mzproj::lln {

// midpoint of the admissible truncation interval (0, 1/p - 1/2)
double default_alpha(double p);

// geometric grid n_i = ceil(10^{i/2}), deduplicated, capped at 10^6
std::vector<std::int64_t> default_grid();

// T_n computed from the path's cached partial sum of squares (no
// re-summation). Accepts p in (0, 2]; p = 2 is the diagnostic mode in which
// the statistic reduces to the mean of squares.
double mz_statistic(const sampler::PathSample& path, std::int64_t n, double p);

struct MomentCurve {
    double p = 1.0;
    std::vector<std::int64_t> grid;
    // per_replica[j][i] = statistic of replica j at grid[i]
    std::vector<std::vector<double>> per_replica;
    // per-grid-point aggregates over replicas (quantiles: linear
    // interpolation of order statistics, the common "type 7" rule)
    std::vector<double> mean, median, q05, q95;
    bool exploratory = false;  // set when the family's p-th moment is infinite
};

// Replica j draws its path from stream_id + j; replicas are embarrassingly
// parallel and the aggregation is an ordered deterministic reduction, so the
// result is independent of the worker count.
MomentCurve lln_curve(const sampler::DistributionSpec& spec, double p,
                      const std::vector<std::int64_t>& grid, std::int64_t replicas,
                      sampler::SeedSpec seed, int threads = 1);

struct RemarkEstimate {
    double p = 1.0;
    double epsilon = 1.0;
    std::vector<std::int64_t> grid;
    std::vector<double> probability;  // empirical exceedance frequency per n
    std::vector<double> std_error;    // binomial SE at the same index
    std::int64_t draws = 0;           // replicas * mc_theta per grid point
    bool exploratory = false;
};

// Frequency of {|<x, theta>| > eps * n^{1/p-1/2}} over replicas x theta
// draws. Conditional on the path, <x, theta> has the law ||x|| * theta_1, so
// each theta draw costs O(1) via the first-coordinate marginal.
RemarkEstimate remark_probability(const sampler::DistributionSpec& spec, double p,
                                  double epsilon, const std::vector<std::int64_t>& grid,
                                  std::int64_t replicas, std::int64_t mc_theta,
                                  sampler::SeedSpec seed, int threads = 1);

enum class TailMode {
    corollary34,  // sup_{m >= k} m^{1/2-1/p} * E_theta|S_m(theta)|
    corollary46,  // sup_{m >= k} m^{p/2-1}  * E_theta|S_m(theta)|^p
};

// Supremum of the normalized statistic over m in [k, length(path)], one
// backward pass; nonincreasing in k on every fixed path.
double as_tail_statistic(const sampler::PathSample& path, double p, TailMode mode,
                         std::int64_t k);

struct TruncationDiagnostic {
    std::int64_t n = 0;
    double alpha = 0.0;
    double part_prime_bound = 0.0;      // n^{p*alpha + p/2 - 1}
    double part_doubleprime_tail = 0.0; // empirical E[|Y|^p 1(|Y| > n^alpha)]
};

// Splitting X at level n^alpha bounds T_n by a deterministic power of n plus
// a tail moment of the envelope; this reports both components. The mc tail
// draws reuse one fixed stream regardless of n (common random numbers), so
// the empirical component is monotone along an n-grid by construction.
// Scale modulation on `spec` is rejected: Y is a single envelope variable.
TruncationDiagnostic truncation_diagnostic(const sampler::DistributionSpec& spec,
                                           double p, double alpha, std::int64_t n,
                                           std::int64_t mc, sampler::SeedSpec seed);

}  // namespace mzproj::lln
