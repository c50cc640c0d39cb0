#include "mzproj/envelope.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "mzproj/specfun.hpp"
#include "mzproj/summation.hpp"

namespace mzproj::envelope {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

using sampler::DistributionSpec;
using sampler::Family;

// P(|X| > x) for the family at scale s
double tail_at_scale(const DistributionSpec& spec, double s, double x) {
    if (x <= 0.0) return 1.0;
    switch (spec.family) {
        case Family::pareto:
            return x <= s ? 1.0 : std::pow(s / x, spec.tail_index);
        case Family::gaussian:
            // P(|N(0,s^2)| > x) = erfc(x / (s sqrt 2))
            return std::erfc(x / (s * 1.4142135623730950488));
        case Family::student_t: {
            double nu = spec.tail_index;
            double t = x / s;
            return detail::incomplete_beta(nu / 2.0, 0.5, nu / (nu + t * t));
        }
        case Family::constant:
            return x < s ? 1.0 : 0.0;
    }
    throw std::logic_error("tail_at_scale: unknown family");
}

// student density normalization: Gamma((nu+1)/2) / (sqrt(nu*pi) Gamma(nu/2))
double student_norm_const(double nu) {
    return std::exp(specfun::log_gamma((nu + 1.0) / 2.0) -
                    specfun::log_gamma(nu / 2.0)) /
           std::sqrt(nu * 3.14159265358979323846);
}

// density of |X| (two-sided folded): 2 f(x/s)/s for x > 0
double abs_density(const DistributionSpec& spec, double s, double x) {
    switch (spec.family) {
        case Family::gaussian: {
            double u = x / s;
            return 2.0 * std::exp(-0.5 * u * u) / (s * 2.5066282746310005024);
        }
        case Family::student_t: {
            double nu = spec.tail_index;
            double u = x / s;
            return 2.0 * student_norm_const(nu) *
                   std::pow(1.0 + u * u / nu, -(nu + 1.0) / 2.0) / s;
        }
        default:
            throw std::logic_error("abs_density: closed-form family");
    }
}

// full moment E|X|^p (t at/below the support infimum)
double full_abs_moment(const DistributionSpec& spec, double s, double p) {
    switch (spec.family) {
        case Family::pareto: {
            double b = spec.tail_index;
            if (p >= b) return kInf;
            return b * std::pow(s, p) / (b - p);
        }
        case Family::constant:
            return std::pow(s, p);
        case Family::gaussian:
            // E|N(0,s^2)|^p = s^p c_p; c_p extends past 2 via the chi moment
            return std::pow(s, p) * specfun::chi_square_moment(1, p / 2.0);
        case Family::student_t: {
            double nu = spec.tail_index;
            if (p >= nu) return kInf;
            // nu^{p/2} Gamma((p+1)/2) Gamma((nu-p)/2) / (sqrt(pi) Gamma(nu/2))
            return std::pow(s, p) *
                   std::exp(0.5 * p * std::log(nu) +
                            specfun::log_gamma((p + 1.0) / 2.0) +
                            specfun::log_gamma((nu - p) / 2.0) -
                            specfun::log_gamma(0.5) - specfun::log_gamma(nu / 2.0));
        }
    }
    throw std::logic_error("full_abs_moment: unknown family");
}

// tail classification for the x -> inf ratio limit
struct TailClass {
    enum Kind { bounded, polynomial, superpoly } kind;
    double expo = 0.0;  // polynomial order
};

TailClass classify(const DistributionSpec& spec) {
    switch (spec.family) {
        case Family::pareto:
            return {TailClass::polynomial, spec.tail_index};
        case Family::student_t:
            return {TailClass::polynomial, spec.tail_index};
        case Family::gaussian:
            return {TailClass::superpoly, 0.0};
        case Family::constant:
            return {TailClass::bounded, 0.0};
    }
    throw std::logic_error("classify: unknown family");
}

// coefficient K with P(|X| > x) ~ K x^{-expo} for the polynomial families at scale s
double poly_tail_coefficient(const DistributionSpec& spec, double s) {
    switch (spec.family) {
        case Family::pareto:
            return std::pow(s, spec.tail_index);
        case Family::student_t: {
            double nu = spec.tail_index;
            return 2.0 * student_norm_const(nu) * std::pow(nu, (nu - 1.0) / 2.0) *
                   std::pow(s, nu);
        }
        default:
            throw std::logic_error("poly_tail_coefficient: not polynomial");
    }
}

double max_scale(const DistributionSpec& spec) {
    if (!spec.scale_modulation) return spec.scale;
    return spec.scale * spec.scale_modulation->sigma_max;
}

// (1/n) sum_{k<=n} g(scale_k) for periodic modulation
double averaged_over_scales(const DistributionSpec& spec, std::int64_t n,
                            const std::function<double(double)>& g) {
    if (!spec.scale_modulation) return g(spec.scale);
    const auto& m = *spec.scale_modulation;
    std::int64_t period = std::min<std::int64_t>(m.period, n);
    NeumaierSum per_period;
    std::vector<double> vals(static_cast<std::size_t>(m.period));
    for (std::int64_t j = 1; j <= m.period; ++j) {
        vals[static_cast<std::size_t>(j - 1)] = g(sampler::modulated_scale(spec, j));
        if (j <= period) per_period.add(vals[static_cast<std::size_t>(j - 1)]);
    }
    if (n <= m.period) return per_period.value() / static_cast<double>(n);
    NeumaierSum full;
    for (std::int64_t j = 0; j < m.period; ++j) full.add(vals[static_cast<std::size_t>(j)]);
    std::int64_t cycles = n / m.period, rem = n % m.period;
    NeumaierSum total;
    total.add(full.value() * static_cast<double>(cycles));
    for (std::int64_t j = 1; j <= rem; ++j)
        total.add(vals[static_cast<std::size_t>(j - 1)]);
    return total.value() / static_cast<double>(n);
}

}  // namespace

void validate(const EnvelopeSpec& env) {
    sampler::validate(env.y);
    check(std::isfinite(env.M) && env.M > 0.0, "envelope: M must be finite and > 0");
    if (env.declared) {
        MomentFlags truth = analytic_moment_flags(env.y, env.declared->p);
        check(truth.finite_p_moment == env.declared->finite_p_moment &&
                  truth.finite_p_log_moment == env.declared->finite_p_log_moment,
              "envelope: declared moment flags contradict the family's analytic facts");
    }
}

double tail_probability(const DistributionSpec& spec, double x) {
    sampler::validate(spec);
    check(std::isfinite(x) && x >= 0.0, "tail_probability: x must be >= 0");
    return tail_at_scale(spec, spec.scale, x);
}

double averaged_tail(const DistributionSpec& spec, std::int64_t n, double x) {
    sampler::validate(spec);
    check(n >= 1, "averaged_tail: n must be >= 1");
    check(std::isfinite(x) && x >= 0.0, "averaged_tail: x must be >= 0");
    return averaged_over_scales(spec, n,
                                [&](double s) { return tail_at_scale(spec, s, x); });
}

MomentFlags analytic_moment_flags(const DistributionSpec& spec, double p) {
    check(std::isfinite(p) && p > 0.0, "moment flags: p must be > 0");
    MomentFlags f;
    f.p = p;
    switch (spec.family) {
        case Family::pareto:
        case Family::student_t:
            // both the plain and the log-boosted p-th moment are finite
            // exactly when p < tail exponent (the log factor does not move
            // the polynomial threshold)
            f.finite_p_moment = p < spec.tail_index;
            f.finite_p_log_moment = p < spec.tail_index;
            break;
        case Family::gaussian:
        case Family::constant:
            f.finite_p_moment = true;
            f.finite_p_log_moment = true;
            break;
    }
    return f;
}

MdReport check_md(const DistributionSpec& family, const EnvelopeSpec& env,
                  const std::vector<std::int64_t>& n_list,
                  const std::vector<double>& x_grid) {
    sampler::validate(family);
    validate(env);
    check(!n_list.empty(), "check_md: empty n list");
    check(!x_grid.empty(), "check_md: empty x grid");
    for (auto n : n_list) check(n >= 1, "check_md: n must be >= 1");
    MdReport rep;
    for (std::int64_t n : n_list) {
        for (double x : x_grid) {
            check(std::isfinite(x) && x > 0.0, "check_md: x must be > 0");
            double num = averaged_tail(family, n, x);
            double den = env.M * tail_at_scale(env.y, env.y.scale, x);
            double ratio;
            if (den == 0.0) {
                if (num == 0.0) continue;  // beyond both supports
                ratio = kInf;
            } else {
                ratio = num / den;
            }
            if (ratio > rep.max_ratio) {
                rep.max_ratio = ratio;
                rep.worst_x = x;
                rep.worst_n = n;
            }
        }
    }
    rep.grid_pass = rep.max_ratio <= 1.0 + 1e-12;

    // exact x -> inf limit where the comparison is analytically computable
    TailClass cf = classify(family), ce = classify(env.y);
    std::optional<double> limit;
    if (ce.kind == TailClass::polynomial) {
        if (cf.kind == TailClass::polynomial) {
            if (cf.expo > ce.expo) {
                limit = 0.0;
            } else if (cf.expo < ce.expo) {
                limit = kInf;
            } else {
                double ke = poly_tail_coefficient(env.y, env.y.scale);
                double worst = 0.0;
                for (std::int64_t n : n_list) {
                    double kd = averaged_over_scales(family, n, [&](double s) {
                        return poly_tail_coefficient(family, s);
                    });
                    worst = std::max(worst, kd / (env.M * ke));
                }
                limit = worst;
            }
        } else {
            limit = 0.0;  // gaussian or bounded data under a polynomial envelope
        }
    } else if (ce.kind == TailClass::superpoly) {
        if (cf.kind == TailClass::polynomial) {
            limit = kInf;
        } else if (cf.kind == TailClass::bounded) {
            limit = 0.0;
        } else {
            // gaussian vs gaussian: ratio of erfc tails diverges, vanishes or
            // tends to the max-scale mass fraction depending on the scales
            double sd = max_scale(family), se = env.y.scale;
            if (sd > se) {
                limit = kInf;
            } else if (sd < se) {
                limit = 0.0;
            } else if (!family.scale_modulation ||
                       family.scale_modulation->sigma_min ==
                           family.scale_modulation->sigma_max) {
                limit = 1.0 / env.M;
            }  // modulated ramp hitting the envelope scale: leave unset
        }
    } else {
        // bounded envelope: any unbounded family eventually violates MD
        limit = (cf.kind == TailClass::bounded) ? std::optional<double>(0.0)
                                                : std::optional<double>(kInf);
    }
    rep.limit_ratio = limit;
    rep.pass = rep.grid_pass && (!limit || *limit <= 1.0 + 1e-12);
    return rep;
}

double tail_moment(const DistributionSpec& y, double p, double t) {
    sampler::validate(y);
    check(std::isfinite(p) && p > 0.0, "tail_moment: p must be > 0");
    check(std::isfinite(t), "tail_moment: threshold must be finite");
    const double s = y.scale;
    switch (y.family) {
        case Family::pareto: {
            double b = y.tail_index;
            if (p >= b) return kInf;
            if (t <= s) return full_abs_moment(y, s, p);
            // int_t^inf x^p b s^b x^{-b-1} dx = b s^b t^{p-b} / (b-p)
            return b * std::pow(s, b) * std::pow(t, p - b) / (b - p);
        }
        case Family::constant:
            return t < s ? std::pow(s, p) : 0.0;
        case Family::gaussian:
        case Family::student_t: {
            if (y.family == Family::student_t && p >= y.tail_index) return kInf;
            if (t <= 0.0) return full_abs_moment(y, s, p);
            auto integrand = [&](double x) {
                return std::pow(x, p) * abs_density(y, s, x);
            };
            if (t < s) {
                // complement form keeps the quadrature on a finite interval
                double head = detail::integrate(0.0, t, 1e-11, integrand);
                return full_abs_moment(y, s, p) - head;
            }
            // map [t, inf) to (0, 1] by x = t/u
            return detail::integrate(0.0, 1.0, 1e-11, [&](double u) {
                double x = t / u;
                return integrand(x) * t / (u * u);
            });
        }
    }
    throw std::logic_error("tail_moment: unknown family");
}

std::vector<double> default_x_grid() {
    std::vector<double> g(60);
    for (int i = 0; i < 60; ++i)
        g[static_cast<std::size_t>(i)] =
            std::pow(10.0, -2.0 + 8.0 * static_cast<double>(i) / 59.0);
    return g;
}

namespace detail {

double integrate(double a, double b, double rel_tol,
                 const std::function<double(double)>& f) {
    if (!(b > a)) return 0.0;
    const double hw = 0.5 * (b - a);
    constexpr double kPiHalf = 1.5707963267948966192;
    // tanh-sinh abscissas: x = mid + hw*tanh(pi/2 sinh t); trapezoid in t.
    // The offset from the nearer endpoint is computed cancellation-free so
    // integrable endpoint singularities see full relative accuracy in x - a.
    auto eval = [&](double t) -> double {
        double sh = kPiHalf * std::sinh(t);
        double as = std::fabs(sh);
        if (as > 350.0) return 0.0;  // offset underflows; contribution ~exp(-700)
        double e = std::exp(-2.0 * as);
        double u = 2.0 * e / (1.0 + e);  // 1 - tanh|sh|
        double w = kPiHalf * std::cosh(t) * 4.0 * e / ((1.0 + e) * (1.0 + e));
        if (w == 0.0) return 0.0;
        double x = (sh >= 0.0) ? b - hw * u : a + hw * u;
        if (x <= a || x >= b) return 0.0;  // endpoint rounded over
        double v = f(x);
        if (!std::isfinite(v)) return 0.0;  // integrable endpoint spike
        return v * w;
    };
    const double t_max = 6.5;
    double h = 1.0;
    double sum = eval(0.0);
    for (double t = h; t <= t_max; t += h) sum += eval(t) + eval(-t);
    double integral = sum * h * hw;
    for (int level = 1; level <= 12; ++level) {
        h *= 0.5;
        double add = 0.0;
        for (double t = h; t <= t_max; t += 2.0 * h) add += eval(t) + eval(-t);
        sum = sum + add;
        double next = sum * h * hw;
        bool converged = std::fabs(next - integral) <=
                         rel_tol * std::max(std::fabs(next), 1e-300);
        integral = next;
        if (converged && level >= 4) return integral;
    }
    return integral;
}

double incomplete_beta(double a, double b, double x) {
    check(a > 0.0 && b > 0.0, "incomplete_beta: parameters must be > 0");
    check(x >= 0.0 && x <= 1.0, "incomplete_beta: x must lie in [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    // continued fraction (modified Lentz)
    auto betacf = [](double aa, double bb, double xx) {
        constexpr double kTiny = 1e-300;
        double qab = aa + bb, qap = aa + 1.0, qam = aa - 1.0;
        double c = 1.0, d = 1.0 - qab * xx / qap;
        if (std::fabs(d) < kTiny) d = kTiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 300; ++m) {
            double m2 = 2.0 * m;
            double num = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < kTiny) d = kTiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < kTiny) c = kTiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            d = 1.0 + num * d;
            if (std::fabs(d) < kTiny) d = kTiny;
            c = 1.0 + num / c;
            if (std::fabs(c) < kTiny) c = kTiny;
            d = 1.0 / d;
            double del = d * c;
            h *= del;
            if (std::fabs(del - 1.0) < 3e-16) break;
        }
        return h;
    };
    double lbeta = specfun::log_gamma(a) + specfun::log_gamma(b) -
                   specfun::log_gamma(a + b);
    double front = std::exp(a * std::log(x) + b * std::log1p(-x) - lbeta);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

}  // namespace detail

}  // namespace mzproj::envelope
