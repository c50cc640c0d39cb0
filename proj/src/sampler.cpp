#include "mzproj/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "mzproj/summation.hpp"

namespace mzproj::sampler {

namespace {

// SplitMix64 finalizer (Stafford mix 13). Passes BigCrush as the output
// stage of a Weyl-sequence counter; see Vigna's splitmix64 reference code.
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;  // golden-ratio step

void check(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

}  // namespace

Stream::Stream(SeedSpec seed, std::uint64_t substream) {
    // three mixing rounds: collisions between distinct
    // (master, stream, substream) triples need a 64-bit hash collision
    std::uint64_t k = mix64(seed.master_seed + kGamma);
    k = mix64(k ^ (seed.stream_id + 0xD1B54A32D192ED03ull));
    key_ = mix64(k + substream * 0x8CB92BA72F3D8DD7ull);
}

std::uint64_t Stream::next_u64() {
    return mix64(key_ + (++counter_) * kGamma);
}

double Stream::next_unit() {
    // (i + 0.5) * 2^-53 with i in [0, 2^53): open interval, symmetric
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1p-53;
}

double Stream::next_sign() {
    return (next_u64() >> 63) ? 1.0 : -1.0;
}

namespace {

// Wichura's PPND16 rational approximations for the standard normal inverse
// CDF; absolute error below 1e-15 over (0,1).
double inverse_normal_cdf(double p) {
    double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                     6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
                   1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
                 1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
               (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                     3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
                   5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
                 4.2313330701600911252e1) * r + 1.0);
    }
    double r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double x;
    if (r <= 5.0) {
        r -= 1.6;
        x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
    } else {
        r -= 5.0;
        x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -x : x;
}

}  // namespace

double Stream::next_normal() {
    return inverse_normal_cdf(next_unit());
}

double Stream::next_gamma(double alpha) {
    if (!(std::isfinite(alpha) && alpha > 0.0))
        throw std::invalid_argument("next_gamma: alpha must be finite and > 0");
    if (alpha < 1.0) {
        // boost: G_alpha = G_{alpha+1} * U^{1/alpha}
        double g = next_gamma(alpha + 1.0);
        return g * std::pow(next_unit(), 1.0 / alpha);
    }
    double d = alpha - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = next_normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        double u = next_unit();
        double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
}

void validate(const DistributionSpec& spec) {
    // scale 0 is allowed only for the constant family: the degenerate
    // all-zero data sequence used as a null case by the rate estimators.
    if (spec.family == Family::constant) {
        check(std::isfinite(spec.scale) && spec.scale >= 0.0,
              "distribution: scale must be finite and >= 0");
    } else {
        check(std::isfinite(spec.scale) && spec.scale > 0.0,
              "distribution: scale must be finite and > 0");
    }
    switch (spec.family) {
        case Family::pareto:
        case Family::student_t:
            check(std::isfinite(spec.tail_index) && spec.tail_index > 0.0,
                  "distribution: tail_index must be finite and > 0");
            break;
        case Family::gaussian:
        case Family::constant:
            break;
    }
    if (spec.scale_modulation) {
        const auto& m = *spec.scale_modulation;
        check(std::isfinite(m.sigma_min) && std::isfinite(m.sigma_max) &&
                  m.sigma_min > 0.0 && m.sigma_min <= m.sigma_max,
              "scale_modulation: need 0 < sigma_min <= sigma_max");
        check(m.period >= 1, "scale_modulation: period must be >= 1");
    }
}

double modulated_scale(const DistributionSpec& spec, std::int64_t k) {
    if (!spec.scale_modulation) return spec.scale;
    const auto& m = *spec.scale_modulation;
    if (m.period == 1 || m.sigma_min == m.sigma_max) return spec.scale * m.sigma_min;
    double frac = static_cast<double>((k - 1) % m.period) /
                  static_cast<double>(m.period - 1);
    return spec.scale * (m.sigma_min + (m.sigma_max - m.sigma_min) * frac);
}

double draw_abs(const DistributionSpec& spec, Stream& stream) {
    switch (spec.family) {
        case Family::pareto:
            return spec.scale * std::pow(stream.next_unit(), -1.0 / spec.tail_index);
        case Family::student_t: {
            double z = stream.next_normal();
            double g = 2.0 * stream.next_gamma(spec.tail_index / 2.0);  // chi^2_nu
            return spec.scale * std::fabs(z) * std::sqrt(spec.tail_index / g);
        }
        case Family::gaussian:
            return spec.scale * std::fabs(stream.next_normal());
        case Family::constant:
            return spec.scale;
    }
    throw std::logic_error("draw_abs: unknown family");
}

namespace {

// signed draw at unit scale; consumes the stream in a fixed order
double draw_unit(const DistributionSpec& spec, Stream& s) {
    switch (spec.family) {
        case Family::pareto:
            return std::pow(s.next_unit(), -1.0 / spec.tail_index);
        case Family::student_t: {
            double z = s.next_normal();
            double g = 2.0 * s.next_gamma(spec.tail_index / 2.0);
            return z * std::sqrt(spec.tail_index / g);
        }
        case Family::gaussian:
            return s.next_normal();
        case Family::constant:
            return 1.0;
    }
    throw std::logic_error("draw_unit: unknown family");
}

}  // namespace

PathSample sample_path(const DistributionSpec& spec, std::int64_t n, SeedSpec seed) {
    validate(spec);
    check(n >= 1, "sample_path: n must be >= 1");
    PathSample path;
    path.values.reserve(static_cast<std::size_t>(n));
    path.cum_sq.reserve(static_cast<std::size_t>(n));
    Stream s(seed);
    ScaledSumSq acc;
    for (std::int64_t k = 1; k <= n; ++k) {
        double x = draw_unit(spec, s) * modulated_scale(spec, k);
        if (spec.symmetrize) x *= s.next_sign();
        path.values.push_back(x);
        acc.add(x);
        path.cum_sq.push_back(acc.value());
    }
    return path;
}

double PathSample::log_norm_sq(std::int64_t n) const {
    double v = cum_sq[static_cast<std::size_t>(n - 1)];
    if (v == 0.0) return -std::numeric_limits<double>::infinity();
    if (std::isfinite(v)) return std::log(v);
    // cum_sq saturated; recover the exact logarithm with scaling
    ScaledSumSq acc;
    for (std::int64_t k = 0; k < n; ++k) acc.add(values[static_cast<std::size_t>(k)]);
    return acc.log_value();
}

std::vector<double> sample_sphere(std::int64_t n, Stream& stream) {
    if (n < 1) throw std::invalid_argument("sample_sphere: n must be >= 1");
    // S^0 = {-1, +1}; dividing a normal by sqrt of its square would land a
    // rounding ulp away from an exact sign
    if (n == 1) return {stream.next_sign()};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (;;) {
        double ss = 0.0;
        for (auto& x : v) {
            x = stream.next_normal();
            ss += x * x;
        }
        if (ss > 0.0) {
            double inv = 1.0 / std::sqrt(ss);
            for (auto& x : v) x *= inv;
            return v;
        }
    }
}

std::vector<double> sample_sphere(std::int64_t n, SeedSpec seed, std::uint64_t substream) {
    Stream s(seed, substream);
    return sample_sphere(n, s);
}

double sample_chi(std::int64_t n, Stream& stream) {
    if (n < 1) throw std::invalid_argument("sample_chi: n must be >= 1");
    return std::sqrt(2.0 * stream.next_gamma(static_cast<double>(n) / 2.0));
}

double sample_chi(std::int64_t n, SeedSpec seed, std::uint64_t substream) {
    Stream s(seed, substream);
    return sample_chi(n, s);
}

double sphere_first_coordinate(std::int64_t n, Stream& stream) {
    if (n < 1) throw std::invalid_argument("sphere_first_coordinate: n must be >= 1");
    if (n == 1) return stream.next_sign();
    double x1 = stream.next_normal();
    double rest = 2.0 * stream.next_gamma(static_cast<double>(n - 1) / 2.0);
    return x1 / std::sqrt(x1 * x1 + rest);
}

}  // namespace mzproj::sampler
