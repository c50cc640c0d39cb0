#include "mzproj/rates.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mzproj/envelope.hpp"
#include "mzproj/parallel.hpp"
#include "mzproj/specfun.hpp"

namespace mzproj::rates {

namespace {

void check(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

sampler::SeedSpec replica_seed(sampler::SeedSpec base, std::size_t j) {
    return {base.master_seed, base.stream_id + static_cast<std::uint64_t>(j)};
}

}  // namespace

void validate(const RateConfig& cfg) {
    check(std::isfinite(cfg.p) && cfg.p >= 1.0 && cfg.p < 2.0,
          "rate config: p must lie in [1, 2)");
    check(std::isfinite(cfg.r) && cfg.r >= 1.0 && cfg.r <= cfg.p,
          "rate config: r must lie in [1, p]");
    check(std::isfinite(cfg.epsilon) && cfg.epsilon > 0.0,
          "rate config: epsilon must be > 0");
    check(cfg.n_max >= 1, "rate config: n_max must be >= 1");
    check(cfg.replicas >= 1, "rate config: replicas must be >= 1");
}

double thm3_event_statistic(const sampler::PathSample& path, std::int64_t n) {
    check(n >= 1 && n <= path.size(), "thm3 statistic: n out of range");
    const double c1 = specfun::gaussian_abs_moment(1.0);
    double best = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        double a = c1 * std::sqrt(path.norm_sq(k)) * specfun::theorem3_weight(k);
        if (a > best) best = a;
    }
    return best;
}

double thm4_event_statistic(const sampler::PathSample& path, std::int64_t n, double r) {
    if (r == 1.0) return thm3_event_statistic(path, n);
    check(n >= 1 && n <= path.size(), "thm4 statistic: n out of range");
    check(std::isfinite(r) && r >= 1.0 && r < 2.0, "thm4 statistic: r must lie in [1, 2)");
    const double cr = specfun::gaussian_abs_moment(r);
    double best = 0.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        double a = cr * std::pow(path.norm_sq(k), r / 2.0) *
                   specfun::theorem4_weight(k, r);
        if (a > best) best = a;
    }
    return best;
}

SeriesEstimate estimate_series(const sampler::DistributionSpec& spec,
                               const RateConfig& cfg, sampler::SeedSpec seed,
                               int threads) {
    sampler::validate(spec);
    validate(cfg);
    check(cfg.replicas >= 30, "estimate_series: need >= 30 replicas for the SE column");

    SeriesEstimate est;
    est.p = cfg.p;
    est.r = cfg.r;
    est.epsilon = cfg.epsilon;
    est.mode = cfg.mode;
    auto flags = envelope::analytic_moment_flags(spec, cfg.p);
    if (!flags.finite_p_moment) {
        est.exploratory = true;
        est.reason = "data family has an infinite p-th moment (tail index <= p)";
    } else if (cfg.mode == SeriesMode::thm4 && cfg.r == cfg.p &&
               !flags.finite_p_log_moment) {
        est.exploratory = true;
        est.reason = "r = p needs the log-boosted p-th moment, not available here";
    }

    const std::int64_t N = cfg.n_max;
    const std::size_t nn = static_cast<std::size_t>(N);
    // the r = 1 statistic is the thm3 one for either mode, which keeps the
    // two modes bit-identical there (they also share the threshold eps * n)
    const bool use_r1 = (cfg.mode == SeriesMode::thm3) || (cfg.r == 1.0);
    const double stat_r = (cfg.mode == SeriesMode::thm3) ? 1.0 : cfg.r;
    const double c_stat = specfun::gaussian_abs_moment(stat_r);

    std::vector<double> weight_tab(nn), threshold(nn), series_weight(nn);
    const double q = cfg.p / cfg.r - 2.0;
    for (std::int64_t n = 1; n <= N; ++n) {
        const auto i = static_cast<std::size_t>(n - 1);
        const auto nd = static_cast<double>(n);
        weight_tab[i] = use_r1 ? specfun::theorem3_weight(n)
                               : specfun::theorem4_weight(n, stat_r);
        if (cfg.mode == SeriesMode::thm4 || cfg.r == 1.0)
            threshold[i] = cfg.epsilon * nd;
        else
            threshold[i] = cfg.epsilon * std::pow(nd, 1.0 / cfg.r);
        series_weight[i] = std::pow(nd, q);
    }

    std::vector<std::vector<std::uint8_t>> hits(static_cast<std::size_t>(cfg.replicas));
    parallel_for(static_cast<std::size_t>(cfg.replicas), resolve_threads(threads),
                 [&](std::size_t j) {
                     auto path = sampler::sample_path(spec, N, replica_seed(seed, j));
                     auto& row = hits[j];
                     row.resize(nn);
                     double running_max = 0.0;
                     for (std::int64_t n = 1; n <= N; ++n) {
                         const auto i = static_cast<std::size_t>(n - 1);
                         double ns = path.norm_sq(n);
                         double a = use_r1 ? c_stat * std::sqrt(ns) * weight_tab[i]
                                           : c_stat * std::pow(ns, stat_r / 2.0) *
                                                 weight_tab[i];
                         if (a > running_max) running_max = a;
                         row[i] = running_max > threshold[i] ? 1 : 0;
                     }
                 });

    est.p_hat.resize(nn);
    est.se.resize(nn);
    est.partial_sum.resize(nn);
    const double R = static_cast<double>(cfg.replicas);
    double running_sum = 0.0;  // plain accumulation of nonnegative terms
    for (std::size_t i = 0; i < nn; ++i) {
        std::int64_t count = 0;
        for (const auto& row : hits) count += row[i];
        double ph = static_cast<double>(count) / R;
        est.p_hat[i] = ph;
        est.se[i] = std::sqrt(ph * (1.0 - ph) / R);
        running_sum += series_weight[i] * ph;
        est.partial_sum[i] = running_sum;
    }
    const std::int64_t cut = N / 10;
    const double at_cut =
        cut >= 1 ? est.partial_sum[static_cast<std::size_t>(cut - 1)] : 0.0;
    est.tail_increment = est.partial_sum[nn - 1] - at_cut;
    return est;
}

SeriesEstimate corollary_series_check(const sampler::DistributionSpec& spec, double p,
                                      std::int64_t n_max, std::int64_t replicas,
                                      sampler::SeedSpec seed, int threads) {
    RateConfig cfg;
    cfg.p = p;
    cfg.r = p;
    cfg.epsilon = 1.0;
    cfg.n_max = n_max;
    cfg.replicas = replicas;
    cfg.mode = SeriesMode::thm3;
    return estimate_series(spec, cfg, seed, threads);
}

}  // namespace mzproj::rates
