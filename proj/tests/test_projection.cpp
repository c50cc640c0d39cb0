#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "mzproj/projection.hpp"
#include "mzproj/sampler.hpp"
#include "oracles.hpp"

using namespace mzproj;
using sampler::SeedSpec;

namespace {

double rel_err(double got, double want) {
    if (want == 0.0) return std::fabs(got);
    return std::fabs(got - want) / std::fabs(want);
}

// brute-force two-sample KS for cross checking (O(n*m), sorted inputs)
double brute_ks(const std::vector<double>& a, const std::vector<double>& b) {
    auto ecdf = [](const std::vector<double>& v, double x) {
        std::int64_t c = 0;
        for (double t : v)
            if (t <= x) ++c;
        return c / static_cast<double>(v.size());
    };
    double d = 0.0;
    for (double x : a) d = std::max(d, std::fabs(ecdf(a, x) - ecdf(b, x)));
    for (double x : b) d = std::max(d, std::fabs(ecdf(a, x) - ecdf(b, x)));
    return d;
}

}  // namespace

TEST_SUITE("projection") {

TEST_CASE("project is the inner product") {
    CHECK(projection::project({1, 0}, {0, 1}) == 0.0);
    CHECK(projection::project({3, 4}, {0.6, 0.8}) == 5.0);
    double s = 1.0 / std::sqrt(3.0);
    CHECK(projection::project({1, 1, 1}, {s, s, s}) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
    CHECK_THROWS_AS(projection::project({1, 2}, {1.0}), std::invalid_argument);
}

TEST_CASE("exact_spherical_moment matches the closed-form references") {
    struct Case {
        std::vector<double> x;
        double p;
        const oracle::SphMomCase* o;
    };
    const Case cases[] = {
        {{3, 4}, 1.0, &oracle::kSphericalMoment[0]},
        {{1, 0, 0, 0, 0}, 2.0, &oracle::kSphericalMoment[1]},
        {{1, 1, 1}, 0.5, &oracle::kSphericalMoment[2]},
        {{2, -1, 3, 0.5}, 1.7, &oracle::kSphericalMoment[3]},
        {{-2}, 1.0, &oracle::kSphericalMoment[4]},
        {{3, 4}, 2.0, &oracle::kSphericalMoment[5]},
    };
    for (const auto& c : cases) {
        auto r = projection::exact_spherical_moment(c.x, c.p);
        CAPTURE(c.p);
        CAPTURE(c.o->n);
        CHECK(r.n == c.o->n);
        CHECK(r.norm_sq == doctest::Approx(c.o->norm_sq).epsilon(1e-15));
        CHECK(rel_err(r.value, c.o->value) <= 1e-13);
    }
    // the circle oracle, spelled out: E|<(3,4), theta>| = 10/pi
    CHECK(rel_err(projection::exact_spherical_moment({3, 4}, 1.0).value,
                  oracle::kTenOverPi) <= 1e-12);
    // e1 in R^5 at p=2: symmetry forces 1/5
    CHECK(rel_err(projection::exact_spherical_moment({1, 0, 0, 0, 0}, 2.0).value, 0.2) <=
          1e-13);
}

TEST_CASE("exact_spherical_moment handles null and bad input") {
    for (double p : {0.3, 1.0, 2.0}) {
        auto r = projection::exact_spherical_moment({0.0, 0.0, 0.0}, p);
        CHECK(r.value == 0.0);
        CHECK(r.norm_sq == 0.0);
    }
    CHECK_THROWS_AS(projection::exact_spherical_moment({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(projection::exact_spherical_moment({1.0, std::nan("")}, 1.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        projection::exact_spherical_moment({1.0, std::numeric_limits<double>::infinity()}, 1.0),
        std::invalid_argument);
    CHECK_THROWS_AS(projection::exact_spherical_moment({1.0}, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(projection::exact_spherical_moment({1.0}, 2.5), std::invalid_argument);
}

TEST_CASE("exact_spherical_moment is |c|^p scale equivariant") {
    std::vector<double> x = {0.3, -1.7, 2.2, 0.05, -4.0};
    for (double p : {0.5, 1.0, 1.3, 2.0}) {
        double base = projection::exact_spherical_moment(x, p).value;
        for (double c : {-2.0, 0.5, 1e30}) {
            std::vector<double> cx(x);
            for (auto& v : cx) v *= c;
            double got = projection::exact_spherical_moment(cx, p).value;
            double want = std::pow(std::fabs(c), p) * base;
            CAPTURE(p);
            CAPTURE(c);
            CHECK(rel_err(got, want) <= 2e-15);  // 8 ulps
        }
    }
}

TEST_CASE("exact_spherical_moment survives norm overflow") {
    // (1e200)^2 overflows a double; the scaled accumulation must not
    std::vector<double> big = {1e200, -3e199, 5e199};
    std::vector<double> small = {1e0, -0.3, 0.5};
    for (double p : {0.5, 1.0}) {
        auto rb = projection::exact_spherical_moment(big, p);
        auto rs = projection::exact_spherical_moment(small, p);
        CAPTURE(p);
        CHECK(std::isfinite(rb.value));
        CHECK(std::isfinite(rb.log_norm_sq));
        CHECK(rel_err(rb.value, std::pow(1e200, p) * rs.value) <= 1e-12);
    }
    // p=2 at 1e150 is still representable (value ~ 4e299)...
    std::vector<double> mid = {1e150, -3e149, 5e149};
    auto rm = projection::exact_spherical_moment(mid, 2.0);
    auto rs = projection::exact_spherical_moment(small, 2.0);
    CHECK(std::isfinite(rm.value));
    CHECK(rel_err(rm.value, 1e300 * rs.value) <= 1e-12);
    // ...while at 1e200 the true moment exceeds DBL_MAX: the value (and only
    // the value) saturates, with the log bookkeeping intact
    auto rb2 = projection::exact_spherical_moment(big, 2.0);
    CHECK(std::isinf(rb2.value));
    CHECK(std::isfinite(rb2.log_norm_sq));
}

TEST_CASE("moment_from_norm_sq round-trips the direct computation") {
    std::vector<double> x = {1.5, -0.25, 3.0, 2.0};
    for (double p : {0.4, 1.0, 1.9}) {
        auto r = projection::exact_spherical_moment(x, p);
        auto f = projection::moment_from_norm_sq(r.n, p, r.norm_sq, r.log_norm_sq);
        CHECK(f.value == r.value);
    }
}

TEST_CASE("p=2 collapses to the mean of squares") {
    sampler::Stream rng({321, 0});
    for (int rep = 0; rep < 100; ++rep) {
        std::int64_t n = 2 + static_cast<std::int64_t>(rng.next_unit() * 999);
        std::vector<double> x(static_cast<std::size_t>(n));
        double ss = 0.0;
        for (auto& v : x) {
            v = rng.next_normal() * 3.0;
            ss += v * v;
        }
        double got = projection::exact_spherical_moment(x, 2.0).value;
        CAPTURE(n);
        CHECK(rel_err(got, ss / static_cast<double>(n)) <= 1e-12);
    }
}

TEST_CASE("mc_spherical_moment null and tiny-m cases") {
    auto z = projection::mc_spherical_moment({0.0, 0.0}, 1.3, 10, {1, 1});
    CHECK(z.estimate == 0.0);
    CHECK(z.std_error == 0.0);
    CHECK(z.m == 10);
    auto one = projection::mc_spherical_moment({1.0, 2.0}, 1.0, 1, {1, 2});
    CHECK(one.m == 1);
    CHECK(one.estimate >= 0.0);
    CHECK(one.std_error == 0.0);  // a single draw has no spread estimate
    CHECK_THROWS_AS(projection::mc_spherical_moment({1.0}, 1.0, 0, {1, 3}),
                    std::invalid_argument);
}

TEST_CASE("mc_spherical_moment agrees with the exact engine") {
    // circle oracle at decent m
    auto c = projection::mc_spherical_moment({3, 4}, 1.0, 200000, {22, 0});
    CHECK(c.std_error > 0.0);
    CHECK(std::fabs(c.estimate - oracle::kTenOverPi) <= 4.0 * c.std_error);
    // e1 in R^5, p=2
    auto e = projection::mc_spherical_moment({1, 0, 0, 0, 0}, 2.0, 100000, {22, 1});
    CHECK(std::fabs(e.estimate - 0.2) <= 4.0 * e.std_error);

    // a (n, p) sweep against exact values, fixed seeds
    sampler::Stream rng({23, 0});
    int config = 0;
    for (std::int64_t n : {1, 2, 3, 10, 50}) {
        std::vector<double> x(static_cast<std::size_t>(n));
        for (auto& v : x) v = rng.next_normal() * 2.0;
        for (double p : {0.5, 1.0, 1.5, 2.0}) {
            double exact = projection::exact_spherical_moment(x, p).value;
            auto est = projection::mc_spherical_moment(
                x, p, 20000, {24, static_cast<std::uint64_t>(config)});
            CAPTURE(n);
            CAPTURE(p);
            // absolute floor covers n=1, where every draw is |x_1|^p up to
            // an ulp and the SE collapses to ~1e-16
            CHECK(std::fabs(est.estimate - exact) <=
                  4.0 * est.std_error + 1e-12 * std::fabs(exact));
            ++config;
        }
    }
}

TEST_CASE("mc_spherical_moment is reproducible and thread-invariant") {
    std::vector<double> x = {1.0, -2.0, 0.5};
    auto a = projection::mc_spherical_moment(x, 1.5, 150000, {25, 0}, 1);
    auto b = projection::mc_spherical_moment(x, 1.5, 150000, {25, 0}, 5);
    CHECK(a.estimate == b.estimate);
    CHECK(a.std_error == b.std_error);
    auto c = projection::mc_spherical_moment(x, 1.5, 150000, {25, 1}, 1);
    CHECK(a.estimate != c.estimate);
}

TEST_CASE("ks_statistic_sorted against brute force") {
    std::vector<double> a = {1, 2, 3};
    std::vector<double> b = {1.5, 2.5};
    CHECK(projection::ks_statistic_sorted(a, b) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    sampler::Stream rng({26, 0});
    for (int rep = 0; rep < 50; ++rep) {
        std::vector<double> u(7 + rep % 23), v(5 + rep % 31);
        for (auto& t : u) t = rng.next_normal();
        for (auto& t : v) t = rng.next_normal() + 0.2;
        std::sort(u.begin(), u.end());
        std::sort(v.begin(), v.end());
        CHECK(projection::ks_statistic_sorted(u, v) ==
              doctest::Approx(brute_ks(u, v)).epsilon(1e-12));
    }
}

TEST_CASE("kolmogorov_sf matches the series references") {
    for (const auto& c : oracle::kKolmogorovSf) {
        CAPTURE(c.z);
        CHECK(rel_err(projection::kolmogorov_sf(c.z), c.sf) <= 1e-12);
    }
    CHECK(projection::kolmogorov_sf(1e-8) == doctest::Approx(1.0).epsilon(1e-9));
    double prev = 1.0;
    for (double z = 0.05; z <= 3.0; z += 0.05) {
        double v = projection::kolmogorov_sf(z);
        CHECK(v <= prev);
        CHECK(v >= 0.0);
        prev = v;
    }
    CHECK(projection::kolmogorov_sf(8.0) > 0.0);
    CHECK(projection::kolmogorov_sf(8.0) < 1e-50);
}

TEST_CASE("identity_test calibrates under the null") {
    // the factorization identity is exact, so p-values are uniform; at 10
    // seeds each, p > 0.01 should essentially always hold
    for (std::int64_t n : {2, 5, 50}) {
        int ok = 0;
        for (std::uint64_t s = 0; s < 10; ++s) {
            auto rep = projection::identity_test(n, 2000, std::vector<double>(n, 1.0),
                                                 {900 + s, s});
            CHECK(rep.n == n);
            CHECK(rep.m == 2000);
            if (rep.p_value > 0.01) ++ok;
        }
        CAPTURE(n);
        CHECK(ok >= 8);
    }
}

TEST_CASE("identity_test has power against a scaled comparator") {
    std::vector<double> e1 = {1, 0, 0, 0, 0};
    auto rep = projection::identity_test(5, 50000, e1, {27, 0}, 1, 1.2);
    CHECK(rep.p_value < 1e-6);
    CHECK(rep.statistic > 0.02);
}

TEST_CASE("identity_test reproducibility, normalization, and preconditions") {
    std::vector<double> e1 = {1, 0};
    auto a = projection::identity_test(2, 5000, e1, {28, 0}, 1);
    auto b = projection::identity_test(2, 5000, e1, {28, 0}, 4);
    CHECK(a.statistic == b.statistic);
    CHECK(a.p_value == b.p_value);
    // direction is normalized internally: scaling it changes nothing
    auto c = projection::identity_test(2, 5000, {2.0, 0.0}, {28, 0}, 1);
    CHECK(a.statistic == c.statistic);
    CHECK_THROWS_AS(projection::identity_test(1, 5000, {1.0}, {28, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(projection::identity_test(2, 50, e1, {28, 2}), std::invalid_argument);
    CHECK_THROWS_AS(projection::identity_test(2, 5000, {0.0, 0.0}, {28, 3}),
                    std::invalid_argument);
    CHECK_THROWS_AS(projection::identity_test(2, 5000, {1.0, 0.0, 0.0}, {28, 4}),
                    std::invalid_argument);
}

}  // TEST_SUITE
