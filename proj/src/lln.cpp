#include "mzproj/lln.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mzproj/envelope.hpp"
#include "mzproj/parallel.hpp"
#include "mzproj/projection.hpp"
#include "mzproj/summation.hpp"

namespace mzproj::lln {

namespace {

constexpr std::uint64_t kSubRemarkTheta = 4ull << 32;  // | grid index
constexpr std::uint64_t kSubTruncTail = 5ull << 32;

void check(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_p_open(double p) {
    check(std::isfinite(p) && p > 0.0 && p < 2.0, "p must lie in (0, 2)");
}

void check_grid(const std::vector<std::int64_t>& grid) {
    check(!grid.empty(), "grid must be nonempty");
    check(grid.front() >= 1, "grid entries must be >= 1");
    for (std::size_t i = 1; i < grid.size(); ++i)
        check(grid[i] > grid[i - 1], "grid must be strictly increasing");
}

sampler::SeedSpec replica_seed(sampler::SeedSpec base, std::size_t j) {
    return {base.master_seed, base.stream_id + static_cast<std::uint64_t>(j)};
}

// linear interpolation of order statistics ("type 7"); v must be sorted
double quantile_sorted(const std::vector<double>& v, double q) {
    double h = static_cast<double>(v.size() - 1) * q;
    std::size_t lo = static_cast<std::size_t>(h);
    if (lo + 1 >= v.size()) return v.back();
    double frac = h - static_cast<double>(lo);
    return v[lo] + frac * (v[lo + 1] - v[lo]);
}

}  // namespace

double default_alpha(double p) {
    check_p_open(p);
    return (1.0 / p - 0.5) / 2.0;
}

std::vector<std::int64_t> default_grid() {
    std::vector<std::int64_t> grid;
    for (int i = 0;; ++i) {
        auto n = static_cast<std::int64_t>(
            std::ceil(std::pow(10.0, static_cast<double>(i) / 2.0)));
        if (n > 1000000) break;
        if (grid.empty() || n > grid.back()) grid.push_back(n);
    }
    return grid;
}

double mz_statistic(const sampler::PathSample& path, std::int64_t n, double p) {
    check(n >= 1 && n <= path.size(), "mz_statistic: n exceeds path length");
    check(std::isfinite(p) && p > 0.0 && p <= 2.0, "mz_statistic: p must lie in (0, 2]");
    auto moment =
        projection::moment_from_norm_sq(n, p, path.norm_sq(n), path.log_norm_sq(n));
    return std::pow(static_cast<double>(n), p / 2.0 - 1.0) * moment.value;
}

MomentCurve lln_curve(const sampler::DistributionSpec& spec, double p,
                      const std::vector<std::int64_t>& grid, std::int64_t replicas,
                      sampler::SeedSpec seed, int threads) {
    sampler::validate(spec);
    check(std::isfinite(p) && p > 0.0 && p <= 2.0, "lln_curve: p must lie in (0, 2]");
    check_grid(grid);
    check(replicas >= 1, "lln_curve: replicas must be >= 1");

    MomentCurve curve;
    curve.p = p;
    curve.grid = grid;
    curve.exploratory = !envelope::analytic_moment_flags(spec, p).finite_p_moment;
    curve.per_replica.assign(static_cast<std::size_t>(replicas), {});

    const std::int64_t n_max = grid.back();
    parallel_for(static_cast<std::size_t>(replicas), resolve_threads(threads),
                 [&](std::size_t j) {
                     auto path = sampler::sample_path(spec, n_max, replica_seed(seed, j));
                     auto& row = curve.per_replica[j];
                     row.reserve(grid.size());
                     for (std::int64_t n : grid) row.push_back(mz_statistic(path, n, p));
                 });

    const std::size_t g = grid.size();
    curve.mean.resize(g);
    curve.median.resize(g);
    curve.q05.resize(g);
    curve.q95.resize(g);
    std::vector<double> column(static_cast<std::size_t>(replicas));
    for (std::size_t i = 0; i < g; ++i) {
        NeumaierSum sum;
        for (std::size_t j = 0; j < column.size(); ++j) {
            column[j] = curve.per_replica[j][i];
            sum.add(column[j]);
        }
        curve.mean[i] = sum.value() / static_cast<double>(replicas);
        std::sort(column.begin(), column.end());
        curve.median[i] = quantile_sorted(column, 0.5);
        curve.q05[i] = quantile_sorted(column, 0.05);
        curve.q95[i] = quantile_sorted(column, 0.95);
    }
    return curve;
}

RemarkEstimate remark_probability(const sampler::DistributionSpec& spec, double p,
                                  double epsilon, const std::vector<std::int64_t>& grid,
                                  std::int64_t replicas, std::int64_t mc_theta,
                                  sampler::SeedSpec seed, int threads) {
    sampler::validate(spec);
    check_p_open(p);
    check(std::isfinite(epsilon) && epsilon > 0.0, "remark: epsilon must be > 0");
    check_grid(grid);
    check(replicas >= 1, "remark: replicas must be >= 1");
    check(mc_theta >= 1, "remark: mc_theta must be >= 1");

    RemarkEstimate est;
    est.p = p;
    est.epsilon = epsilon;
    est.grid = grid;
    est.exploratory = !envelope::analytic_moment_flags(spec, p).finite_p_moment;

    const std::size_t g = grid.size();
    const std::int64_t n_max = grid.back();
    // event in log form: log|theta_1| + log||x|| > log(eps) + (1/p - 1/2) log n;
    // this stays exact for zero data (lhs = -inf) and saturated norms
    std::vector<double> log_threshold(g);
    for (std::size_t i = 0; i < g; ++i)
        log_threshold[i] = std::log(epsilon) +
                           (1.0 / p - 0.5) * std::log(static_cast<double>(grid[i]));

    std::vector<std::vector<std::int64_t>> hits(static_cast<std::size_t>(replicas));
    parallel_for(static_cast<std::size_t>(replicas), resolve_threads(threads),
                 [&](std::size_t j) {
                     auto sj = replica_seed(seed, j);
                     auto path = sampler::sample_path(spec, n_max, sj);
                     auto& row = hits[j];
                     row.assign(g, 0);
                     for (std::size_t i = 0; i < g; ++i) {
                         const std::int64_t n = grid[i];
                         const double half_log_ns = 0.5 * path.log_norm_sq(n);
                         sampler::Stream ts(sj, kSubRemarkTheta |
                                                    static_cast<std::uint64_t>(i));
                         for (std::int64_t d = 0; d < mc_theta; ++d) {
                             double t = sampler::sphere_first_coordinate(n, ts);
                             if (std::log(std::fabs(t)) + half_log_ns > log_threshold[i])
                                 ++row[i];
                         }
                     }
                 });

    est.draws = replicas * mc_theta;
    est.probability.resize(g);
    est.std_error.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
        std::int64_t total = 0;
        for (const auto& row : hits) total += row[i];
        double ph = static_cast<double>(total) / static_cast<double>(est.draws);
        est.probability[i] = ph;
        est.std_error[i] = std::sqrt(ph * (1.0 - ph) / static_cast<double>(est.draws));
    }
    return est;
}

double as_tail_statistic(const sampler::PathSample& path, double p, TailMode mode,
                         std::int64_t k) {
    check(k >= 1 && k <= path.size(), "as_tail_statistic: k out of range");
    check_p_open(p);
    const double outer = (mode == TailMode::corollary34) ? 0.5 - 1.0 / p : p / 2.0 - 1.0;
    const double inner_p = (mode == TailMode::corollary34) ? 1.0 : p;
    double sup = 0.0;
    for (std::int64_t m = path.size(); m >= k; --m) {
        auto moment = projection::moment_from_norm_sq(m, inner_p, path.norm_sq(m),
                                                      path.log_norm_sq(m));
        double stat = std::pow(static_cast<double>(m), outer) * moment.value;
        if (stat > sup) sup = stat;
    }
    return sup;
}

TruncationDiagnostic truncation_diagnostic(const sampler::DistributionSpec& spec,
                                           double p, double alpha, std::int64_t n,
                                           std::int64_t mc, sampler::SeedSpec seed) {
    sampler::validate(spec);
    check(!spec.scale_modulation, "truncation: envelope law cannot be modulated");
    check_p_open(p);
    check(std::isfinite(alpha) && alpha > 0.0 && alpha < 1.0 / p - 0.5,
          "truncation: alpha must lie strictly inside (0, 1/p - 1/2)");
    check(n >= 1, "truncation: n must be >= 1");
    check(mc >= 1000, "truncation: need at least 1000 tail draws");

    TruncationDiagnostic diag;
    diag.n = n;
    diag.alpha = alpha;
    diag.part_prime_bound =
        std::pow(static_cast<double>(n), p * alpha + p / 2.0 - 1.0);

    const double threshold = std::pow(static_cast<double>(n), alpha);
    sampler::Stream st(seed, kSubTruncTail);
    NeumaierSum acc;
    for (std::int64_t d = 0; d < mc; ++d) {
        double y = sampler::draw_abs(spec, st);
        if (y > threshold) acc.add(std::pow(y, p));
    }
    diag.part_doubleprime_tail = acc.value() / static_cast<double>(mc);
    return diag;
}

}  // namespace mzproj::lln
