#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "mzproj/envelope.hpp"
#include "mzproj/rates.hpp"
#include "mzproj/sampler.hpp"

// Experiment configuration: one JSON object drives every subcommand. The
// lifecycle is load -> resolve_defaults -> validate -> run; the manifest
// echoes the fully resolved configuration, and feeding that echo back
// through load reproduces the run bit for bit.
namespace mzproj::config {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Command {
    moment,      // exact spherical moment of one sampled path + MC cross-check
    lln,         // normalized-statistic curve over a grid of n
    remark,      // exceedance probability of the projection event
    rate,        // weighted exceedance series for the maximal statistic
    corollary,   // the r = p series specialization
    identity,    // distributional check of the Gaussian-chi factorization
    envelope,    // mean-domination certification of the configured envelope
    truncation,  // truncation-bound components along the grid
    unset,
};

const char* command_name(Command c);
Command command_from_name(const std::string& name);  // throws ConfigError

struct ExperimentConfig {
    Command command = Command::unset;
    sampler::DistributionSpec distribution;
    envelope::EnvelopeSpec envelope;
    bool envelope_set = false;  // false until a config names one or resolve fills it
    double p = 1.0;
    double r = 1.0;
    double epsilon = 1.0;
    double alpha = -1.0;             // < 0 means "derive from p"
    std::int64_t n = 0;              // moment: path length; identity: dimension
    std::vector<std::int64_t> grid;  // empty means "geometric default"
    std::int64_t n_max = 100000;
    std::int64_t replicas = 200;
    std::int64_t mc = 0;       // 0 means "per-command default"
    std::int64_t mc_theta = 100;
    rates::SeriesMode mode = rates::SeriesMode::thm3;
    sampler::SeedSpec seed;
    int threads = 0;  // 0 = hardware count (MZPROJ_THREADS still caps)
    std::string out = ".";
    friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

// Strict parse: unknown keys and wrong types are errors naming the field.
ExperimentConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg);

// Reads and parses a JSON file; parse errors carry the position diagnostics
// from the JSON parser, field errors the offending key.
ExperimentConfig load_config_file(const std::string& path);

// Fills every "derive me" field: grid, alpha, per-command mc, identity and
// moment dimensions, and the self-envelope (the configured family at its
// largest modulation scale) when none was given.
void resolve_defaults(ExperimentConfig& cfg);

// Per-command precondition checks (the modules re-check at call time; this
// front-loads the diagnostics before any sampling starts).
void validate(const ExperimentConfig& cfg);

}  // namespace mzproj::config
