#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "fsothz/errors.hpp"
#include "fsothz/montecarlo.hpp"
#include "fsothz/report.hpp"
#include "fsothz/scenario.hpp"
#include "fsothz/studies.hpp"

namespace {

using namespace fsothz;

struct CommonOptions {
    std::string config;
    std::string out;
    std::vector<std::string> strategies;
    std::uint64_t seed = 1;
    std::uint64_t trials = 0;  // 0 keeps the study default
    unsigned workers = 0;      // 0 picks hardware concurrency
};

void add_common_options(CLI::App& sub, CommonOptions& opts) {
    sub.add_option("--config", opts.config,
                   "Scenario file (key = value lines); defaults apply when "
                   "omitted")
        ->envname("FSOTHZ_CONFIG");
    sub.add_option("--seed", opts.seed, "Master seed")->capture_default_str();
    sub.add_option("--trials", opts.trials,
                   "Trials per sweep point (0 keeps the study default)");
    sub.add_option("--out", opts.out,
                   "Output basename; writes <out>.csv and "
                   "<out>.manifest.json");
    sub.add_option("--strategies", opts.strategies,
                   "Comma-separated subset of the study's strategies")
        ->delimiter(',');
    sub.add_option("--workers", opts.workers,
                   "Worker threads (0 = hardware); never changes results");
}

Scenario load_base_scenario(const CommonOptions& opts) {
    if (opts.config.empty()) {
        return table_defaults();
    }
    return load_scenario_file(opts.config);
}

void report_row(const SweepRow& row, const SweepSpec& spec) {
    std::fprintf(stderr, "  %s=%s %s: %.6g +- %.2g (%llu trials, %.2fs)\n",
                 to_string(spec.axis), format_value(row.axis_value).c_str(),
                 row.strategy.c_str(), row.estimate.value,
                 row.estimate.std_error,
                 static_cast<unsigned long long>(row.estimate.trials),
                 row.seconds);
}

int write_outputs(const std::string& out_base, const std::string& study_name,
                  const Scenario& scenario, const SweepSpec& spec,
                  const std::vector<SweepRow>& rows) {
    RunManifest manifest;
    manifest.tool_version = kToolVersion;
    manifest.study = study_name;
    manifest.scenario_text = serialize_scenario(scenario);
    manifest.scenario_digest = fnv1a64(manifest.scenario_text.data(),
                                       manifest.scenario_text.size());
    manifest.spec = spec;
    for (const SweepRow& row : rows) {
        manifest.point_seconds.push_back(row.seconds);
    }

    const std::string csv_path = out_base + ".csv";
    const std::string manifest_path = out_base + ".manifest.json";
    write_file_atomic(csv_path, sweep_csv(rows));
    write_file_atomic(manifest_path, manifest_json(manifest));
    std::printf("wrote %s (%zu rows) and %s\n", csv_path.c_str(), rows.size(),
                manifest_path.c_str());
    return 0;
}

int run_study(const std::string& name, const CommonOptions& opts) {
    const Scenario base = load_base_scenario(opts);
    const Study study = make_study(name, base, opts.trials, opts.seed,
                                   opts.workers, opts.strategies);
    const std::vector<SweepRow> rows =
        run_sweep(study.scenario, study.spec,
                  [&](const SweepRow& row) { report_row(row, study.spec); });
    const std::string out = opts.out.empty() ? name : opts.out;
    return write_outputs(out, study.name, study.scenario, study.spec, rows);
}

std::vector<double> parse_axis_points(const std::string& axis_spec,
                                      SweepAxis* axis) {
    // Format: <axis>:<start>:<stop>:<step>
    std::vector<std::string> parts;
    std::size_t begin = 0;
    while (begin <= axis_spec.size()) {
        const std::size_t colon = axis_spec.find(':', begin);
        if (colon == std::string::npos) {
            parts.push_back(axis_spec.substr(begin));
            break;
        }
        parts.push_back(axis_spec.substr(begin, colon - begin));
        begin = colon + 1;
    }
    if (parts.size() != 4) {
        throw ConfigError("axis",
                          "expected <axis>:<start>:<stop>:<step>, got `" +
                              axis_spec + "`");
    }
    *axis = axis_from_string(parts[0]);
    double start = 0;
    double stop = 0;
    double step = 0;
    try {
        start = std::stod(parts[1]);
        stop = std::stod(parts[2]);
        step = std::stod(parts[3]);
    } catch (const std::exception&) {
        throw ConfigError("axis", "non-numeric bound in `" + axis_spec + "`");
    }
    if (!(step > 0) || stop < start) {
        throw ConfigError("axis", "need stop >= start and step > 0");
    }
    const double count = (stop - start) / step;
    const auto n = static_cast<long>(count + 0.5);
    if (std::abs(count - static_cast<double>(n)) > 1e-9 * (1.0 + count)) {
        throw ConfigError("axis", "step does not divide the range evenly");
    }
    std::vector<double> points;
    for (long i = 0; i <= n; ++i) {
        points.push_back(start + static_cast<double>(i) * step);
    }
    return points;
}

int run_custom(const CommonOptions& opts, const std::string& axis_spec,
               const std::string& metric_name, double threshold_db) {
    const Scenario base = load_base_scenario(opts);
    SweepSpec spec;
    spec.points = parse_axis_points(axis_spec, &spec.axis);
    spec.metric = metric_from_string(metric_name);
    spec.strategies = opts.strategies;
    spec.trials_per_point =
        opts.trials != 0
            ? opts.trials
            : (spec.metric == Metric::kOutage ? 10'000'000 : 100'000);
    spec.seed = opts.seed;
    spec.workers = opts.workers;
    spec.outage_threshold_db = threshold_db;

    const std::vector<SweepRow> rows = run_sweep(
        base, spec, [&](const SweepRow& row) { report_row(row, spec); });
    const std::string out = opts.out.empty() ? "custom" : opts.out;
    return write_outputs(out, "custom", base, spec, rows);
}

int run_validate(const std::string& config) {
    const Scenario scenario =
        config.empty() ? table_defaults() : load_scenario_file(config);
    validate_scenario(scenario);
    std::fputs(serialize_scenario(scenario).c_str(), stdout);
    return 0;
}

int run_rerun(const std::string& manifest_path, std::string out,
              unsigned workers_override, bool workers_set) {
    std::string manifest_text;
    try {
        manifest_text = read_file(manifest_path);
    } catch (const std::runtime_error& error) {
        throw ConfigError("rerun", error.what());
    }
    RunManifest manifest = parse_manifest(manifest_text);
    const Scenario scenario = parse_scenario(manifest.scenario_text);
    if (workers_set) {
        manifest.spec.workers = workers_override;
    }
    const std::vector<SweepRow> rows =
        run_sweep(scenario, manifest.spec, [&](const SweepRow& row) {
            report_row(row, manifest.spec);
        });
    if (out.empty()) {
        out = manifest.study + "-rerun";
    }
    return write_outputs(out, manifest.study, scenario, manifest.spec, rows);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo studies of hybrid FSO / sub-THz multi-hop "
                 "wireless backhaul"};
    app.require_subcommand(1);

    struct StudyCommand {
        CLI::App* sub = nullptr;
        CommonOptions opts;
    };
    std::vector<StudyCommand> studies(study_names().size());
    const char* descriptions[] = {
        "End-to-end outage vs UE position for topology modes 1-7",
        "Hop outage vs backhaul transmit SNR for five receiver strategies",
        "Hop ergodic rate vs FSO visibility",
        "Hop outage vs beamwidth at 200 m and 400 m",
    };
    for (std::size_t i = 0; i < study_names().size(); ++i) {
        studies[i].sub = app.add_subcommand(study_names()[i], descriptions[i]);
        add_common_options(*studies[i].sub, studies[i].opts);
    }

    CommonOptions custom_opts;
    std::string custom_axis;
    std::string custom_metric = "outage";
    double custom_threshold_db = std::numeric_limits<double>::quiet_NaN();
    CLI::App* custom =
        app.add_subcommand("custom", "Sweep a chosen axis with chosen "
                                     "strategies on the base scenario");
    add_common_options(*custom, custom_opts);
    custom->add_option("--axis", custom_axis,
                       "Axis spec <axis>:<start>:<stop>:<step>, axis one of "
                       "ue_distance, tx_snr_db, visibility_km, beamwidth_m")
        ->required();
    custom->add_option("--metric", custom_metric,
                       "Metric: outage or ergodic_rate")
        ->capture_default_str();
    custom->add_option("--threshold-db", custom_threshold_db,
                       "Outage threshold in dB (default: service node "
                       "threshold)");

    std::string validate_config;
    CLI::App* validate = app.add_subcommand(
        "validate", "Check a scenario file and print the resolved config");
    validate->add_option("--config", validate_config, "Scenario file")
        ->envname("FSOTHZ_CONFIG");

    std::string rerun_manifest;
    std::string rerun_out;
    unsigned rerun_workers = 0;
    CLI::App* rerun = app.add_subcommand(
        "rerun", "Reproduce a previous run from its manifest");
    rerun->add_option("--manifest", rerun_manifest, "Manifest file")
        ->required();
    rerun->add_option("--out", rerun_out, "Output basename");
    CLI::Option* rerun_workers_opt = rerun->add_option(
        "--workers", rerun_workers, "Worker threads; never changes results");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForAllHelp& help) {
        return app.exit(help);
    } catch (const CLI::CallForVersion& version) {
        return app.exit(version);
    } catch (const CLI::ParseError& error) {
        app.exit(error);
        return 2;
    }

    try {
        for (std::size_t i = 0; i < studies.size(); ++i) {
            if (studies[i].sub->parsed()) {
                return run_study(study_names()[i], studies[i].opts);
            }
        }
        if (custom->parsed()) {
            return run_custom(custom_opts, custom_axis, custom_metric,
                              custom_threshold_db);
        }
        if (validate->parsed()) {
            return run_validate(validate_config);
        }
        if (rerun->parsed()) {
            return run_rerun(rerun_manifest, rerun_out, rerun_workers,
                             rerun_workers_opt->count() > 0);
        }
    } catch (const ConfigError& error) {
        std::fprintf(stderr, "config error: %s\n", error.what());
        return 2;
    } catch (const ParameterError& error) {
        std::fprintf(stderr, "parameter error: %s\n", error.what());
        return 2;
    } catch (const std::exception& error) {
        std::fprintf(stderr, "error: %s\n", error.what());
        return 3;
    }
    return 0;
}
