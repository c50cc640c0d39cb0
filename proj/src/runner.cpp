#include "mzproj/runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "mzproj/csv.hpp"
#include "mzproj/envelope.hpp"
#include "mzproj/lln.hpp"
#include "mzproj/projection.hpp"
#include "mzproj/rates.hpp"
#include "mzproj/version.hpp"

namespace mzproj::runner {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using config::Command;
using config::ExperimentConfig;

// JSON cannot carry inf; write it as a string so a diverging ratio stays
// distinguishable from a missing one (null = not analytically computable)
ordered_json finite_or_string(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return "nan";
    return v > 0.0 ? "inf" : "-inf";
}

ordered_json md_report_json(const envelope::MdReport& rep) {
    ordered_json j;
    j["max_ratio"] = finite_or_string(rep.max_ratio);
    j["worst_x"] = rep.worst_x;
    j["worst_n"] = rep.worst_n;
    j["grid_pass"] = rep.grid_pass;
    if (rep.limit_ratio)
        j["limit_ratio"] = finite_or_string(*rep.limit_ratio);
    else
        j["limit_ratio"] = nullptr;
    j["pass"] = rep.pass;
    return j;
}

ordered_json series_summary(const rates::SeriesEstimate& est, std::int64_t n_max,
                            std::int64_t replicas) {
    ordered_json j;
    j["mode"] = est.mode == rates::SeriesMode::thm3 ? "thm3" : "thm4";
    j["p"] = est.p;
    j["r"] = est.r;
    j["epsilon"] = est.epsilon;
    j["n_max"] = n_max;
    j["replicas"] = replicas;
    double total = est.partial_sum.back();
    j["partial_sum_total"] = total;
    j["tail_increment"] = est.tail_increment;
    j["tail_fraction"] = total > 0.0 ? est.tail_increment / total : 0.0;
    return j;
}

void write_series_csv(const fs::path& path, const rates::SeriesEstimate& est) {
    csv::Writer w(path);
    w.header({"n", "p_hat", "se", "partial_sum"});
    for (std::size_t i = 0; i < est.p_hat.size(); ++i)
        w.row(static_cast<std::int64_t>(i + 1), est.p_hat[i], est.se[i],
              est.partial_sum[i]);
    w.close();
}

struct CommandOutcome {
    ordered_json summary;
    std::vector<std::string> files;
    bool exploratory = false;
    std::vector<std::string> reasons;
};

CommandOutcome run_moment(const ExperimentConfig& cfg, const fs::path&) {
    CommandOutcome out;
    auto path = sampler::sample_path(cfg.distribution, cfg.n, cfg.seed);
    auto exact = projection::exact_spherical_moment(path.values, cfg.p);
    auto mc = projection::mc_spherical_moment(path.values, cfg.p, cfg.mc, cfg.seed,
                                              cfg.threads);
    out.summary["n"] = cfg.n;
    out.summary["p"] = cfg.p;
    out.summary["norm_sq"] = exact.norm_sq;
    out.summary["exact_moment"] = exact.value;
    out.summary["mc_estimate"] = mc.estimate;
    out.summary["mc_se"] = mc.std_error;
    out.summary["mc_draws"] = mc.m;
    out.summary["deviation_in_se"] =
        mc.std_error > 0.0 ? std::fabs(mc.estimate - exact.value) / mc.std_error : 0.0;
    return out;
}

CommandOutcome run_lln(const ExperimentConfig& cfg, const fs::path& dir) {
    CommandOutcome out;
    auto curve = lln::lln_curve(cfg.distribution, cfg.p, cfg.grid, cfg.replicas,
                                cfg.seed, cfg.threads);
    csv::Writer w(dir / "curve.csv");
    w.header({"n", "replica", "statistic"});
    for (std::size_t i = 0; i < curve.grid.size(); ++i)
        for (std::size_t j = 0; j < curve.per_replica.size(); ++j)
            w.row(curve.grid[i], static_cast<std::int64_t>(j), curve.per_replica[j][i]);
    w.close();
    out.files.push_back("curve.csv");
    out.summary["p"] = cfg.p;
    out.summary["replicas"] = cfg.replicas;
    out.summary["grid"] = curve.grid;
    out.summary["mean"] = curve.mean;
    out.summary["median"] = curve.median;
    out.summary["q05"] = curve.q05;
    out.summary["q95"] = curve.q95;
    if (curve.exploratory) {
        out.exploratory = true;
        out.reasons.push_back("data family has an infinite p-th moment");
    }
    return out;
}

CommandOutcome run_remark(const ExperimentConfig& cfg, const fs::path& dir) {
    CommandOutcome out;
    auto est = lln::remark_probability(cfg.distribution, cfg.p, cfg.epsilon, cfg.grid,
                                       cfg.replicas, cfg.mc_theta, cfg.seed,
                                       cfg.threads);
    csv::Writer w(dir / "remark.csv");
    w.header({"n", "probability", "se"});
    for (std::size_t i = 0; i < est.grid.size(); ++i)
        w.row(est.grid[i], est.probability[i], est.std_error[i]);
    w.close();
    out.files.push_back("remark.csv");
    out.summary["p"] = cfg.p;
    out.summary["epsilon"] = cfg.epsilon;
    out.summary["draws_per_point"] = est.draws;
    out.summary["grid"] = est.grid;
    out.summary["probability"] = est.probability;
    out.summary["se"] = est.std_error;
    if (est.exploratory) {
        out.exploratory = true;
        out.reasons.push_back("data family has an infinite p-th moment");
    }
    return out;
}

CommandOutcome run_series(const ExperimentConfig& cfg, const fs::path& dir) {
    CommandOutcome out;
    rates::SeriesEstimate est;
    if (cfg.command == Command::corollary) {
        est = rates::corollary_series_check(cfg.distribution, cfg.p, cfg.n_max,
                                            cfg.replicas, cfg.seed, cfg.threads);
    } else {
        rates::RateConfig rc;
        rc.p = cfg.p;
        rc.r = cfg.r;
        rc.epsilon = cfg.epsilon;
        rc.n_max = cfg.n_max;
        rc.replicas = cfg.replicas;
        rc.mode = cfg.mode;
        est = rates::estimate_series(cfg.distribution, rc, cfg.seed, cfg.threads);
    }
    write_series_csv(dir / "series.csv", est);
    out.files.push_back("series.csv");
    out.summary = series_summary(est, cfg.n_max, cfg.replicas);
    if (est.exploratory) {
        out.exploratory = true;
        out.reasons.push_back(est.reason);
    }
    return out;
}

CommandOutcome run_identity(const ExperimentConfig& cfg, const fs::path&) {
    CommandOutcome out;
    std::vector<double> direction(static_cast<std::size_t>(cfg.n), 0.0);
    direction[0] = 1.0;
    auto rep =
        projection::identity_test(cfg.n, cfg.mc, direction, cfg.seed, cfg.threads);
    out.summary["n"] = rep.n;
    out.summary["m"] = rep.m;
    out.summary["ks_statistic"] = rep.statistic;
    out.summary["p_value"] = rep.p_value;
    return out;
}

CommandOutcome run_envelope(const ExperimentConfig& cfg, const fs::path&) {
    CommandOutcome out;
    auto rep = envelope::check_md(cfg.distribution, cfg.envelope, cfg.grid,
                                  envelope::default_x_grid());
    out.summary = md_report_json(rep);
    out.summary["M"] = cfg.envelope.M;
    if (!rep.pass) {
        out.exploratory = true;
        out.reasons.push_back("mean-domination check failed");
    }
    return out;
}

CommandOutcome run_truncation(const ExperimentConfig& cfg, const fs::path& dir) {
    CommandOutcome out;
    csv::Writer w(dir / "truncation.csv");
    w.header({"n", "part_prime_bound", "part_doubleprime_tail"});
    ordered_json prime = ordered_json::array(), tail = ordered_json::array(),
                 thresholds = ordered_json::array();
    for (std::int64_t n : cfg.grid) {
        auto diag = lln::truncation_diagnostic(cfg.envelope.y, cfg.p, cfg.alpha, n,
                                               cfg.mc, cfg.seed);
        w.row(diag.n, diag.part_prime_bound, diag.part_doubleprime_tail);
        prime.push_back(diag.part_prime_bound);
        tail.push_back(diag.part_doubleprime_tail);
        thresholds.push_back(std::pow(static_cast<double>(n), cfg.alpha));
    }
    w.close();
    out.files.push_back("truncation.csv");
    out.summary["p"] = cfg.p;
    out.summary["alpha"] = cfg.alpha;
    out.summary["mc"] = cfg.mc;
    out.summary["grid"] = cfg.grid;
    out.summary["threshold"] = thresholds;
    out.summary["part_prime_bound"] = prime;
    out.summary["part_doubleprime_tail"] = tail;
    if (!envelope::analytic_moment_flags(cfg.envelope.y, cfg.p).finite_p_moment) {
        out.exploratory = true;
        out.reasons.push_back("envelope has an infinite p-th moment");
    }
    return out;
}

// commands whose hypotheses include mean domination by the envelope
bool wants_md_preflight(Command c) {
    return c == Command::lln || c == Command::remark || c == Command::rate ||
           c == Command::corollary || c == Command::truncation;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& cfg) {
    fs::path dir(cfg.out);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw config::ConfigError("cannot create output directory " + cfg.out);

    const auto started = std::chrono::steady_clock::now();
    CommandOutcome outcome;
    ordered_json md;
    if (wants_md_preflight(cfg.command)) {
        std::vector<std::int64_t> n_list =
            (cfg.command == Command::rate || cfg.command == Command::corollary)
                ? std::vector<std::int64_t>{cfg.n_max}
                : cfg.grid;
        auto rep = envelope::check_md(cfg.distribution, cfg.envelope, n_list,
                                      envelope::default_x_grid());
        md = md_report_json(rep);
        if (!rep.pass) {
            outcome.exploratory = true;
            outcome.reasons.push_back("mean-domination check failed");
        }
    }

    CommandOutcome one;
    switch (cfg.command) {
        case Command::moment: one = run_moment(cfg, dir); break;
        case Command::lln: one = run_lln(cfg, dir); break;
        case Command::remark: one = run_remark(cfg, dir); break;
        case Command::rate:
        case Command::corollary: one = run_series(cfg, dir); break;
        case Command::identity: one = run_identity(cfg, dir); break;
        case Command::envelope: one = run_envelope(cfg, dir); break;
        case Command::truncation: one = run_truncation(cfg, dir); break;
        case Command::unset: throw config::ConfigError("config: no command given");
    }
    outcome.summary = std::move(one.summary);
    outcome.files = std::move(one.files);
    outcome.exploratory |= one.exploratory;
    for (auto& r : one.reasons) outcome.reasons.push_back(std::move(r));
    const auto finished = std::chrono::steady_clock::now();

    RunResult result;
    result.manifest["tool"] = "mzproj";
    result.manifest["version"] = kVersion;
    result.manifest["command"] = config::command_name(cfg.command);
    result.manifest["config"] = config::config_to_json(cfg);
    result.manifest["wall_clock_seconds"] =
        std::chrono::duration<double>(finished - started).count();
    result.manifest["summary"] = std::move(outcome.summary);
    if (!md.is_null()) result.manifest["md_check"] = std::move(md);
    result.manifest["exploratory"] = outcome.exploratory;
    result.manifest["reasons"] = outcome.reasons;
    result.manifest["status"] = outcome.exploratory ? "exploratory" : "ok";
    result.manifest["outputs"] = outcome.files;
    result.outputs = outcome.files;
    result.exit_code = outcome.exploratory ? 3 : 0;

    std::ofstream mf(dir / "manifest.json", std::ios::binary);
    if (!mf) throw config::ConfigError("cannot write manifest.json in " + cfg.out);
    mf << result.manifest.dump(2) << '\n';
    mf.close();
    if (mf.fail()) throw config::ConfigError("manifest.json write failed");
    return result;
}

}  // namespace mzproj::runner
