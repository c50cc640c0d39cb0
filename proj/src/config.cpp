#include "mzproj/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "mzproj/lln.hpp"

namespace mzproj::config {

namespace {

using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void expect_keys(const ordered_json& j, const std::string& where,
                 const std::set<std::string>& allowed) {
    if (!j.is_object()) fail("'" + where + "' must be a JSON object");
    for (const auto& item : j.items())
        if (!allowed.count(item.key()))
            fail("unknown key '" + item.key() + "' in '" + where + "'");
}

template <typename T>
T get_or(const ordered_json& j, const std::string& key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        fail("field '" + key + "' has the wrong type");
    }
}

sampler::Family family_from_name(const std::string& name) {
    if (name == "pareto") return sampler::Family::pareto;
    if (name == "student_t") return sampler::Family::student_t;
    if (name == "gaussian") return sampler::Family::gaussian;
    if (name == "constant") return sampler::Family::constant;
    fail("unknown family '" + name + "'");
}

const char* family_name(sampler::Family f) {
    switch (f) {
        case sampler::Family::pareto: return "pareto";
        case sampler::Family::student_t: return "student_t";
        case sampler::Family::gaussian: return "gaussian";
        case sampler::Family::constant: return "constant";
    }
    fail("unknown family enumerator");
}

sampler::DistributionSpec distribution_from_json(const ordered_json& j,
                                                 const std::string& where) {
    expect_keys(j, where,
                {"family", "tail_index", "scale", "symmetrize", "scale_modulation"});
    sampler::DistributionSpec spec;
    if (!j.contains("family")) fail("'" + where + "' needs a 'family'");
    spec.family = family_from_name(get_or<std::string>(j, "family", ""));
    spec.tail_index = get_or<double>(j, "tail_index", spec.tail_index);
    spec.scale = get_or<double>(j, "scale", spec.scale);
    spec.symmetrize = get_or<bool>(j, "symmetrize", spec.symmetrize);
    if (j.contains("scale_modulation") && !j.at("scale_modulation").is_null()) {
        const auto& m = j.at("scale_modulation");
        expect_keys(m, where + ".scale_modulation", {"sigma_min", "sigma_max", "period"});
        sampler::ScaleModulation mod;
        mod.sigma_min = get_or<double>(m, "sigma_min", mod.sigma_min);
        mod.sigma_max = get_or<double>(m, "sigma_max", mod.sigma_max);
        mod.period = get_or<std::int64_t>(m, "period", mod.period);
        spec.scale_modulation = mod;
    }
    return spec;
}

ordered_json distribution_to_json(const sampler::DistributionSpec& spec) {
    ordered_json j;
    j["family"] = family_name(spec.family);
    j["tail_index"] = spec.tail_index;
    j["scale"] = spec.scale;
    j["symmetrize"] = spec.symmetrize;
    if (spec.scale_modulation) {
        j["scale_modulation"] = {{"sigma_min", spec.scale_modulation->sigma_min},
                                 {"sigma_max", spec.scale_modulation->sigma_max},
                                 {"period", spec.scale_modulation->period}};
    }
    return j;
}

envelope::EnvelopeSpec envelope_from_json(const ordered_json& j) {
    expect_keys(j, "envelope", {"family", "M", "declared"});
    envelope::EnvelopeSpec env;
    if (!j.contains("family")) fail("'envelope' needs a 'family'");
    env.y = distribution_from_json(j.at("family"), "envelope.family");
    env.M = get_or<double>(j, "M", env.M);
    if (j.contains("declared") && !j.at("declared").is_null()) {
        const auto& d = j.at("declared");
        expect_keys(d, "envelope.declared",
                    {"p", "finite_p_moment", "finite_p_log_moment"});
        envelope::MomentFlags flags;
        flags.p = get_or<double>(d, "p", flags.p);
        flags.finite_p_moment = get_or<bool>(d, "finite_p_moment", false);
        flags.finite_p_log_moment = get_or<bool>(d, "finite_p_log_moment", false);
        env.declared = flags;
    }
    return env;
}

ordered_json envelope_to_json(const envelope::EnvelopeSpec& env) {
    ordered_json j;
    j["family"] = distribution_to_json(env.y);
    j["M"] = env.M;
    if (env.declared) {
        j["declared"] = {{"p", env.declared->p},
                         {"finite_p_moment", env.declared->finite_p_moment},
                         {"finite_p_log_moment", env.declared->finite_p_log_moment}};
    }
    return j;
}

[[noreturn]] void fail_field(const std::string& field, const char* what) {
    fail("field '" + field + "': " + what);
}

void check_field(bool ok, const std::string& field, const char* what) {
    if (!ok) fail_field(field, what);
}

}  // namespace

const char* command_name(Command c) {
    switch (c) {
        case Command::moment: return "moment";
        case Command::lln: return "lln";
        case Command::remark: return "remark";
        case Command::rate: return "rate";
        case Command::corollary: return "corollary";
        case Command::identity: return "identity";
        case Command::envelope: return "envelope";
        case Command::truncation: return "truncation";
        case Command::unset: return "unset";
    }
    fail("unknown command enumerator");
}

Command command_from_name(const std::string& name) {
    for (Command c : {Command::moment, Command::lln, Command::remark, Command::rate,
                      Command::corollary, Command::identity, Command::envelope,
                      Command::truncation})
        if (name == command_name(c)) return c;
    fail("unknown command '" + name + "'");
}

ExperimentConfig config_from_json(const ordered_json& j) {
    expect_keys(j, "config",
                {"command", "distribution", "envelope", "p", "r", "epsilon", "alpha",
                 "n", "grid", "n_max", "replicas", "mc", "mc_theta", "mode",
                 "master_seed", "stream_id", "threads", "out"});
    ExperimentConfig cfg;
    if (j.contains("command"))
        cfg.command = command_from_name(get_or<std::string>(j, "command", ""));
    if (j.contains("distribution"))
        cfg.distribution = distribution_from_json(j.at("distribution"), "distribution");
    if (j.contains("envelope")) {
        cfg.envelope = envelope_from_json(j.at("envelope"));
        cfg.envelope_set = true;
    }
    cfg.p = get_or<double>(j, "p", cfg.p);
    cfg.r = get_or<double>(j, "r", cfg.r);
    cfg.epsilon = get_or<double>(j, "epsilon", cfg.epsilon);
    cfg.alpha = get_or<double>(j, "alpha", cfg.alpha);
    cfg.n = get_or<std::int64_t>(j, "n", cfg.n);
    cfg.grid = get_or<std::vector<std::int64_t>>(j, "grid", cfg.grid);
    cfg.n_max = get_or<std::int64_t>(j, "n_max", cfg.n_max);
    cfg.replicas = get_or<std::int64_t>(j, "replicas", cfg.replicas);
    cfg.mc = get_or<std::int64_t>(j, "mc", cfg.mc);
    cfg.mc_theta = get_or<std::int64_t>(j, "mc_theta", cfg.mc_theta);
    if (j.contains("mode")) {
        auto mode = get_or<std::string>(j, "mode", "thm3");
        if (mode == "thm3")
            cfg.mode = rates::SeriesMode::thm3;
        else if (mode == "thm4")
            cfg.mode = rates::SeriesMode::thm4;
        else
            fail("field 'mode': must be \"thm3\" or \"thm4\"");
    }
    cfg.seed.master_seed = get_or<std::uint64_t>(j, "master_seed", cfg.seed.master_seed);
    cfg.seed.stream_id = get_or<std::uint64_t>(j, "stream_id", cfg.seed.stream_id);
    cfg.threads = get_or<int>(j, "threads", cfg.threads);
    cfg.out = get_or<std::string>(j, "out", cfg.out);
    return cfg;
}

nlohmann::ordered_json config_to_json(const ExperimentConfig& cfg) {
    ordered_json j;
    j["command"] = command_name(cfg.command);
    j["distribution"] = distribution_to_json(cfg.distribution);
    if (cfg.envelope_set) j["envelope"] = envelope_to_json(cfg.envelope);
    j["p"] = cfg.p;
    j["r"] = cfg.r;
    j["epsilon"] = cfg.epsilon;
    j["alpha"] = cfg.alpha;
    j["n"] = cfg.n;
    j["grid"] = cfg.grid;
    j["n_max"] = cfg.n_max;
    j["replicas"] = cfg.replicas;
    j["mc"] = cfg.mc;
    j["mc_theta"] = cfg.mc_theta;
    j["mode"] = cfg.mode == rates::SeriesMode::thm3 ? "thm3" : "thm4";
    j["master_seed"] = cfg.seed.master_seed;
    j["stream_id"] = cfg.seed.stream_id;
    j["threads"] = cfg.threads;
    j["out"] = cfg.out;
    return j;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail("cannot open config file '" + path + "'");
    ordered_json j;
    try {
        j = ordered_json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        fail("parse error in '" + path + "': " + e.what());
    }
    return config_from_json(j);
}

void resolve_defaults(ExperimentConfig& cfg) {
    if (cfg.grid.empty()) cfg.grid = lln::default_grid();
    if (cfg.alpha < 0.0 && cfg.p > 0.0 && cfg.p < 2.0) cfg.alpha = lln::default_alpha(cfg.p);
    if (cfg.n == 0) {
        if (cfg.command == Command::identity) cfg.n = 2;
        if (cfg.command == Command::moment) cfg.n = 1000;
    }
    if (cfg.mc == 0) {
        switch (cfg.command) {
            case Command::moment: cfg.mc = 1000000; break;
            case Command::identity: cfg.mc = 100000; break;
            case Command::truncation: cfg.mc = 10000; break;
            default: break;  // unused by the other commands
        }
    }
    if (!cfg.envelope_set) {
        // self-envelope: the family at its largest modulation scale
        // stochastically dominates every X_k, so (MD) holds with M = 1
        envelope::EnvelopeSpec env;
        env.y = cfg.distribution;
        if (env.y.scale_modulation) {
            env.y.scale *= env.y.scale_modulation->sigma_max;
            env.y.scale_modulation.reset();
        }
        env.M = 1.0;
        cfg.envelope = env;
        cfg.envelope_set = true;
    }
    if (!cfg.envelope.declared && cfg.p > 0.0 && std::isfinite(cfg.p))
        cfg.envelope.declared = envelope::analytic_moment_flags(cfg.envelope.y, cfg.p);
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.command == Command::unset)
        fail("no command given (subcommand or config field 'command')");
    try {
        sampler::validate(cfg.distribution);
    } catch (const std::invalid_argument& e) {
        fail_field("distribution", e.what());
    }
    if (cfg.envelope_set) {
        try {
            envelope::validate(cfg.envelope);
        } catch (const std::invalid_argument& e) {
            fail_field("envelope", e.what());
        }
    }
    check_field(cfg.threads >= 0, "threads", "must be >= 0");
    check_field(!cfg.out.empty(), "out", "must name a directory");
    check_field(std::isfinite(cfg.p) && cfg.p > 0.0, "p", "must be > 0");

    const bool uses_grid = cfg.command == Command::lln || cfg.command == Command::remark ||
                           cfg.command == Command::truncation ||
                           cfg.command == Command::envelope;
    if (uses_grid) {
        check_field(!cfg.grid.empty(), "grid", "must be nonempty");
        check_field(cfg.grid.front() >= 1, "grid", "entries must be >= 1");
        for (std::size_t i = 1; i < cfg.grid.size(); ++i)
            check_field(cfg.grid[i] > cfg.grid[i - 1], "grid",
                        "must be strictly increasing");
    }

    switch (cfg.command) {
        case Command::moment:
            check_field(cfg.p <= 2.0, "p", "must lie in (0, 2]");
            check_field(cfg.n >= 1, "n", "must be >= 1");
            check_field(cfg.mc >= 2, "mc", "must be >= 2");
            break;
        case Command::lln:
            check_field(cfg.p <= 2.0, "p", "must lie in (0, 2]");
            check_field(cfg.replicas >= 1, "replicas", "must be >= 1");
            break;
        case Command::remark:
            check_field(cfg.p < 2.0, "p", "must lie in (0, 2)");
            check_field(std::isfinite(cfg.epsilon) && cfg.epsilon > 0.0, "epsilon",
                        "must be > 0");
            check_field(cfg.replicas >= 1, "replicas", "must be >= 1");
            check_field(cfg.mc_theta >= 1, "mc_theta", "must be >= 1");
            break;
        case Command::rate:
        case Command::corollary: {
            rates::RateConfig rc;
            rc.p = cfg.p;
            rc.r = cfg.command == Command::corollary ? cfg.p : cfg.r;
            rc.epsilon = cfg.command == Command::corollary ? 1.0 : cfg.epsilon;
            rc.n_max = cfg.n_max;
            rc.replicas = cfg.replicas;
            rc.mode = cfg.command == Command::corollary ? rates::SeriesMode::thm3
                                                        : cfg.mode;
            try {
                rates::validate(rc);
            } catch (const std::invalid_argument& e) {
                fail(e.what());
            }
            check_field(cfg.replicas >= 30, "replicas",
                        "series estimation needs >= 30");
            break;
        }
        case Command::identity:
            check_field(cfg.n >= 2, "n", "must be >= 2");
            check_field(cfg.mc >= 100, "mc", "must be >= 100");
            break;
        case Command::envelope:
            break;
        case Command::truncation:
            check_field(cfg.p < 2.0, "p", "must lie in (0, 2)");
            check_field(cfg.alpha > 0.0 && cfg.alpha < 1.0 / cfg.p - 0.5, "alpha",
                        "must lie strictly inside (0, 1/p - 1/2)");
            check_field(cfg.mc >= 1000, "mc", "must be >= 1000");
            check_field(!cfg.grid.empty(), "grid", "must be nonempty");
            check_field(!cfg.envelope.y.scale_modulation, "envelope",
                        "truncation envelope cannot be modulated");
            break;
        case Command::unset:
            break;
    }
}

}  // namespace mzproj::config
