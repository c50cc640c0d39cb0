#pragma once

#include <cstdint>
#include <optional>
#include <vector>

// Reproducible variate generation. Every random quantity in the project is a
// pure function of (master_seed, stream_id, substream, draw counter): streams
// are value types, cheap to construct, and never shared between threads.
// Distinct (master_seed, stream_id) pairs give statistically independent
// streams by construction; substream is an internal second level used by the
// estimators to split work across blocks without perturbing user seeds.
namespace mzproj::sampler {

struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;
    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Counter-based generator: output i is mix64(key + i*gamma) where key is a
// strongly mixed hash of (master_seed, stream_id, substream). State is one
// counter, so copies are cheap and the stream can be replayed exactly.
class Stream {
public:
    explicit Stream(SeedSpec seed, std::uint64_t substream = 0);

    std::uint64_t next_u64();
    // uniform on the open interval (0,1); 53-bit resolution, never 0 or 1
    double next_unit();
    // standard normal via inverse CDF (Wichura's PPND16); one uniform per draw
    double next_normal();
    // fair sign in {-1.0, +1.0}
    double next_sign();
    // Gamma(alpha, 1) via the Marsaglia-Tsang squeeze (alpha >= 1) with the
    // U^{1/alpha} boost for alpha < 1
    double next_gamma(double alpha);

private:
    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

enum class Family { pareto, student_t, gaussian, constant };

// Deterministic periodic scale sequence sigma_k in [sigma_min, sigma_max]:
// a triangle-free linear ramp over each period, exact in rational arithmetic.
struct ScaleModulation {
    double sigma_min = 1.0;
    double sigma_max = 1.0;
    std::int64_t period = 16;
    friend bool operator==(const ScaleModulation&, const ScaleModulation&) = default;
};

struct DistributionSpec {
    Family family = Family::gaussian;
    // pareto: tail exponent beta (survival (scale/x)^beta on x >= scale);
    // student_t: degrees of freedom; ignored for gaussian/constant
    double tail_index = 2.0;
    double scale = 1.0;
    bool symmetrize = false;  // multiply each draw by an independent fair sign
    std::optional<ScaleModulation> scale_modulation;
    friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;
};

void validate(const DistributionSpec& spec);  // throws std::invalid_argument

// scale * sigma_k for 1-based index k
double modulated_scale(const DistributionSpec& spec, std::int64_t k);

// One draw |X| >= 0 of the family's absolute value at unit modulation
// (used by tail-moment estimators; consumes the stream like sample_path).
double draw_abs(const DistributionSpec& spec, Stream& stream);

struct PathSample {
    std::vector<double> values;
    std::vector<double> cum_sq;  // cum_sq[k-1] = sum_{j<=k} values[j-1]^2

    std::int64_t size() const { return static_cast<std::int64_t>(values.size()); }
    double norm_sq(std::int64_t n) const { return cum_sq[static_cast<std::size_t>(n - 1)]; }
    // ln of the partial sum of squares; finite even if cum_sq saturated to
    // +inf (recomputed with exponent scaling in that case)
    double log_norm_sq(std::int64_t n) const;
};

// X_1..X_N with X_k = sigma_k * (family draw), optionally symmetrized.
// Two calls with equal arguments produce bit-identical results.
PathSample sample_path(const DistributionSpec& spec, std::int64_t n, SeedSpec seed);

// Uniform point on the unit sphere S^{n-1} (normalized Gaussian vector).
std::vector<double> sample_sphere(std::int64_t n, Stream& stream);
std::vector<double> sample_sphere(std::int64_t n, SeedSpec seed, std::uint64_t substream = 0);

// Chi-distributed radius: Z_n = sqrt(chi-square with n degrees of freedom).
double sample_chi(std::int64_t n, Stream& stream);
double sample_chi(std::int64_t n, SeedSpec seed, std::uint64_t substream = 0);

// First coordinate of a uniform point on S^{n-1} (exact marginal law:
// xi_1 / sqrt(xi_1^2 + chi-square_{n-1}); a fair sign for n = 1).
double sphere_first_coordinate(std::int64_t n, Stream& stream);

}  // namespace mzproj::sampler
