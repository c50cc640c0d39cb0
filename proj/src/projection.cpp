#include "mzproj/projection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mzproj/parallel.hpp"
#include "mzproj/specfun.hpp"
#include "mzproj/summation.hpp"

namespace mzproj::projection {

namespace {

constexpr std::uint64_t kSubMc = 1ull << 32;       // MC moment blocks
constexpr std::uint64_t kSubIdentityLhs = 2ull << 32;
constexpr std::uint64_t kSubIdentityRhs = 3ull << 32;
constexpr std::int64_t kBlock = 65536;

void check(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_p(double p) {
    check(std::isfinite(p) && p > 0.0 && p <= 2.0, "p must lie in (0, 2]");
}

}  // namespace

double project(const std::vector<double>& x, const std::vector<double>& theta) {
    check(!x.empty(), "project: empty vector");
    check(x.size() == theta.size(), "project: dimension mismatch");
    NeumaierSum s;
    for (std::size_t i = 0; i < x.size(); ++i) s.add(x[i] * theta[i]);
    return s.value();
}

SphericalMomentResult moment_from_norm_sq(std::int64_t n, double p, double norm_sq,
                                          double log_norm_sq) {
    check(n >= 1, "moment: n must be >= 1");
    check_p(p);
    SphericalMomentResult r;
    r.n = n;
    r.p = p;
    r.norm_sq = norm_sq;
    r.log_norm_sq = log_norm_sq;
    if (norm_sq == 0.0) {
        r.log_norm_sq = -std::numeric_limits<double>::infinity();
        r.value = 0.0;
        return r;
    }
    double cp = specfun::gaussian_abs_moment(p);
    double chim = specfun::chi_norm_moment(n, p);
    if (std::isfinite(norm_sq) && norm_sq > 0x1p-900 && norm_sq < 0x1p900) {
        // direct route: best ulp behavior, exercised by every sane input
        r.value = cp * std::pow(norm_sq, p / 2.0) / chim;
    } else {
        // split the norm into mantissa * 2^(2e) so pow never overflows;
        // only a truly unrepresentable result saturates to inf/0
        double half_log2_ns = log_norm_sq * 0.5 * 1.4426950408889634074;
        double e = std::floor(half_log2_ns);
        double t = std::exp2(half_log2_ns - e);  // in [1, 2): scaled norm
        r.value = cp * std::pow(t, p) * std::exp2(p * e) / chim;
    }
    return r;
}

SphericalMomentResult exact_spherical_moment(const std::vector<double>& x, double p) {
    check(!x.empty(), "exact_spherical_moment: empty vector");
    check_p(p);
    for (double v : x)
        check(std::isfinite(v), "exact_spherical_moment: non-finite coordinate");
    ScaledSumSq acc;
    for (double v : x) acc.add(v);
    return moment_from_norm_sq(static_cast<std::int64_t>(x.size()), p, acc.value(),
                               acc.log_value());
}

McMomentEstimate mc_spherical_moment(const std::vector<double>& x, double p,
                                     std::int64_t m, sampler::SeedSpec seed,
                                     int threads) {
    check(!x.empty(), "mc_spherical_moment: empty vector");
    check_p(p);
    check(m >= 1, "mc_spherical_moment: m must be >= 1");
    const std::int64_t n = static_cast<std::int64_t>(x.size());
    const std::size_t blocks = static_cast<std::size_t>((m + kBlock - 1) / kBlock);

    struct Partial {
        std::int64_t count = 0;
        double mean = 0.0;
        double m2 = 0.0;
    };
    std::vector<Partial> parts(blocks);
    parallel_for(blocks, resolve_threads(threads), [&](std::size_t b) {
        sampler::Stream s(seed, kSubMc | b);
        std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
        std::int64_t hi = std::min(m, lo + kBlock);
        Partial part;
        std::vector<double> theta(static_cast<std::size_t>(n));
        for (std::int64_t i = lo; i < hi; ++i) {
            // inline sphere draw to reuse the buffer
            double ss;
            do {
                ss = 0.0;
                for (auto& c : theta) {
                    c = s.next_normal();
                    ss += c * c;
                }
            } while (ss == 0.0);
            double dot = 0.0;
            for (std::size_t j = 0; j < theta.size(); ++j) dot += x[j] * theta[j];
            double v = std::pow(std::fabs(dot) / std::sqrt(ss), p);
            // Welford update
            ++part.count;
            double d = v - part.mean;
            part.mean += d / static_cast<double>(part.count);
            part.m2 += d * (v - part.mean);
        }
        parts[b] = part;
    });

    // ordered pairwise merge (Chan's parallel variance combination)
    Partial tot;
    for (const Partial& q : parts) {
        if (q.count == 0) continue;
        if (tot.count == 0) {
            tot = q;
            continue;
        }
        double d = q.mean - tot.mean;
        std::int64_t c = tot.count + q.count;
        tot.m2 += q.m2 + d * d * static_cast<double>(tot.count) *
                             static_cast<double>(q.count) / static_cast<double>(c);
        tot.mean += d * static_cast<double>(q.count) / static_cast<double>(c);
        tot.count = c;
    }
    McMomentEstimate est;
    est.m = tot.count;
    est.estimate = tot.mean;
    est.std_error = tot.count > 1
                        ? std::sqrt(tot.m2 / static_cast<double>(tot.count - 1) /
                                    static_cast<double>(tot.count))
                        : 0.0;
    return est;
}

double ks_statistic_sorted(const std::vector<double>& a, const std::vector<double>& b) {
    check(!a.empty() && !b.empty(), "ks_statistic: empty sample");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double d = 0.0;
    while (i < a.size() && j < b.size()) {
        double v = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= v) ++i;
        while (j < b.size() && b[j] <= v) ++j;
        d = std::max(d, std::fabs(static_cast<double>(i) / na -
                                  static_cast<double>(j) / nb));
    }
    return d;
}

double kolmogorov_sf(double z) {
    if (!(z > 0.0)) return 1.0;
    if (z < 0.06) return 1.0;  // below double resolution of the CDF
    if (z < 1.0) {
        // Jacobi-theta form of the CDF, rapid for small z:
        // P(K<=z) = sqrt(2*pi)/z * sum_{j>=1} exp(-(2j-1)^2 pi^2 / (8 z^2))
        double t = -1.2337005501361697 / (z * z);  // -pi^2/8 * 1/z^2
        double cdf = 0.0;
        for (int j = 1; j <= 5; ++j) {
            double q = static_cast<double>(2 * j - 1);
            cdf += std::exp(q * q * t);
        }
        cdf *= 2.5066282746310005024 / z;  // sqrt(2*pi)
        return 1.0 - cdf;
    }
    // alternating series Q(z) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 z^2)
    double q = 0.0;
    for (int j = 1; j <= 100; ++j) {
        double term = std::exp(-2.0 * static_cast<double>(j) * static_cast<double>(j) * z * z);
        q += (j & 1) ? term : -term;
        if (term < 1e-18) break;
    }
    return std::max(0.0, 2.0 * q);
}

KsReport identity_test(std::int64_t n, std::int64_t m,
                       const std::vector<double>& direction, sampler::SeedSpec seed,
                       int threads, double comparator_scale) {
    check(n >= 2, "identity_test: n must be >= 2");
    check(m >= 100, "identity_test: m must be >= 100");
    check(static_cast<std::int64_t>(direction.size()) == n,
          "identity_test: direction dimension mismatch");
    check(std::isfinite(comparator_scale) && comparator_scale > 0.0,
          "identity_test: comparator_scale must be > 0");
    double ds = 0.0;
    for (double v : direction) {
        check(std::isfinite(v), "identity_test: non-finite direction");
        ds += v * v;
    }
    check(ds > 0.0, "identity_test: zero direction");
    std::vector<double> dir(direction);
    double inv = 1.0 / std::sqrt(ds);
    for (auto& v : dir) v *= inv;

    std::vector<double> lhs(static_cast<std::size_t>(m));
    std::vector<double> rhs(static_cast<std::size_t>(m));
    const std::size_t blocks = static_cast<std::size_t>((m + kBlock - 1) / kBlock);
    parallel_for(blocks, resolve_threads(threads), [&](std::size_t b) {
        std::int64_t lo = static_cast<std::int64_t>(b) * kBlock;
        std::int64_t hi = std::min(m, lo + kBlock);
        sampler::Stream sl(seed, kSubIdentityLhs | b);
        sampler::Stream sr(seed, kSubIdentityRhs | b);
        std::vector<double> buf(static_cast<std::size_t>(n));
        for (std::int64_t i = lo; i < hi; ++i) {
            // <dir, xi> with xi a standard Gaussian vector
            double dot = 0.0;
            for (std::size_t j = 0; j < buf.size(); ++j)
                dot += dir[j] * sl.next_normal();
            lhs[static_cast<std::size_t>(i)] = dot;
            // Z_n * <dir, theta_n>, theta uniform on the sphere
            double ss;
            do {
                ss = 0.0;
                for (auto& c : buf) {
                    c = sr.next_normal();
                    ss += c * c;
                }
            } while (ss == 0.0);
            double dt = 0.0;
            for (std::size_t j = 0; j < buf.size(); ++j) dt += dir[j] * buf[j];
            double z = sampler::sample_chi(n, sr);
            rhs[static_cast<std::size_t>(i)] =
                comparator_scale * z * dt / std::sqrt(ss);
        }
    });
    std::sort(lhs.begin(), lhs.end());
    std::sort(rhs.begin(), rhs.end());
    KsReport rep;
    rep.n = n;
    rep.m = m;
    rep.statistic = ks_statistic_sorted(lhs, rhs);
    double mm = static_cast<double>(m);
    rep.p_value = kolmogorov_sf(rep.statistic * std::sqrt(mm * mm / (2.0 * mm)));
    return rep;
}

}  // namespace mzproj::projection
