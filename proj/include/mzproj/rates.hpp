#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mzproj/sampler.hpp"

// Rate-of-convergence series for the projection LLN. The maximal statistic
// M_n = max_{k<=n} k^{r/2} E_theta|S_k(theta)|^r is a running max of closed
// forms in the cumulative norm, so every exceedance indicator for n <= N is
// produced by a single pass per replica. The weighted exceedance series
// sum_n n^{p/r-2} P(M_n > threshold(n)) is then estimated with binomial
// errors; its stabilization (vanishing last-decade increment) is the
// desk-scale witness of convergence.
namespace mzproj::rates {

enum class SeriesMode {
    thm3,  // threshold eps * n^{1/r}, statistic exponent r = 1
    thm4,  // threshold eps * n,       statistic exponent r in [1, 2)
};

struct RateConfig {
    double p = 1.5;
    double r = 1.0;       // in [1, p]
    double epsilon = 1.0;
    std::int64_t n_max = 100000;
    std::int64_t replicas = 200;
    SeriesMode mode = SeriesMode::thm3;
    friend bool operator==(const RateConfig&, const RateConfig&) = default;
};

void validate(const RateConfig& cfg);  // throws std::invalid_argument

// M_n with statistic exponent 1: max_{k<=n} c_1 sqrt(cum_sq[k]) * w3(k)
// where w3 is the chi-moment weight theorem3_weight.
double thm3_event_statistic(const sampler::PathSample& path, std::int64_t n);

// M_n with exponent r: max_{k<=n} c_r cum_sq[k]^{r/2} * w4(k, r).
// r = 1 falls back to thm3_event_statistic (same value bit for bit).
double thm4_event_statistic(const sampler::PathSample& path, std::int64_t n, double r);

struct SeriesEstimate {
    double p = 0.0, r = 0.0, epsilon = 0.0;
    SeriesMode mode = SeriesMode::thm3;
    std::vector<double> p_hat;        // exceedance frequency, index n-1
    std::vector<double> se;           // binomial SE over replicas
    std::vector<double> partial_sum;  // sum_{m<=n} m^{p/r-2} p_hat[m]
    double tail_increment = 0.0;      // partial sum gained over (N/10, N]
    bool exploratory = false;         // theorem hypotheses not met
    std::string reason;               // what failed, empty when clean
};

// One pass per replica evaluates the indicator 1{M_n > threshold(n)} for
// every n <= n_max; replicas are keyed by stream_id and merged in index
// order, so the estimate is independent of the worker count. Requires at
// least 30 replicas (anything fewer makes the binomial SE column useless).
SeriesEstimate estimate_series(const sampler::DistributionSpec& spec,
                               const RateConfig& cfg, sampler::SeedSpec seed,
                               int threads = 1);

// The r = p specialization with unit threshold scale: weights n^{-1},
// threshold n^{1/p}, thm3 statistic.
SeriesEstimate corollary_series_check(const sampler::DistributionSpec& spec, double p,
                                      std::int64_t n_max, std::int64_t replicas,
                                      sampler::SeedSpec seed, int threads = 1);

}  // namespace mzproj::rates
