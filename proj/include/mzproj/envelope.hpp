#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "mzproj/sampler.hpp"

// Mean-domination bookkeeping: a candidate envelope Y with constant M must
// satisfy (1/n) sum_{k<=n} P(|X_k| > x) <= M * P(|Y| > x) for all x, n.
// Tails are analytic per family; the check samples a log grid in x and, where
// the comparison is polynomial-vs-polynomial, also the exact x->inf limit.
namespace mzproj::envelope {

struct MomentFlags {
    double p = 1.0;
    bool finite_p_moment = false;      // E|Y|^p < inf
    bool finite_p_log_moment = false;  // E|Y|^p log+ |Y| < inf
    friend bool operator==(const MomentFlags&, const MomentFlags&) = default;
};

struct EnvelopeSpec {
    sampler::DistributionSpec y;  // law of |Y| (modulation ignored)
    double M = 1.0;               // domination constant, > 0
    std::optional<MomentFlags> declared;  // optional user declaration
    friend bool operator==(const EnvelopeSpec&, const EnvelopeSpec&) = default;
};

void validate(const EnvelopeSpec& env);  // also cross-checks declared flags

// P(|X| > x) at the spec's base scale (modulation not applied); x >= 0.
double tail_probability(const sampler::DistributionSpec& spec, double x);

// (1/n) sum_{k<=n} P(|X_k| > x) with the spec's deterministic scale
// modulation applied per index.
double averaged_tail(const sampler::DistributionSpec& spec, std::int64_t n, double x);

// Moment finiteness facts per family (pareto/student: p < tail_index, with
// the log factor sharing the same threshold; gaussian/constant: always).
MomentFlags analytic_moment_flags(const sampler::DistributionSpec& spec, double p);

struct MdReport {
    double max_ratio = 0.0;   // max over (n, x) of averaged_tail / (M * env tail)
    double worst_x = 0.0;
    std::int64_t worst_n = 0;
    bool grid_pass = false;
    std::optional<double> limit_ratio;  // exact x->inf limit when computable
    bool pass = false;                   // grid AND (limit when available)
};

MdReport check_md(const sampler::DistributionSpec& family, const EnvelopeSpec& env,
                  const std::vector<std::int64_t>& n_list,
                  const std::vector<double>& x_grid);

// E[|Y|^p ; |Y| > t]. Closed form for pareto (requires p < tail_index;
// returns +inf as a distinguished value otherwise) and constant; adaptive
// quadrature (relative error <= 1e-8) for gaussian and student_t. A
// threshold at or below the support infimum yields the full moment.
double tail_moment(const sampler::DistributionSpec& y, double p, double t);

// 60 log-spaced points on [1e-2, 1e6], the default grid for check_md.
std::vector<double> default_x_grid();

namespace detail {
// Adaptive tanh-sinh quadrature on a finite interval; relative tolerance on
// the level-to-level change. Handles integrable endpoint singularities.
double integrate(double a, double b, double rel_tol,
                 const std::function<double(double)>& f);
// Regularized incomplete beta I_x(a, b) by continued fraction.
double incomplete_beta(double a, double b, double x);
}  // namespace detail

}  // namespace mzproj::envelope
