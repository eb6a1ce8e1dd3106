#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cdice/error.hpp"
#include "cdice/experiment.hpp"
#include "cdice/format.hpp"
#include "cdice/metrics.hpp"
#include "cdice/presets.hpp"
#include "cdice/volume.hpp"
#include "cdice/volume_io.hpp"

// Command-line front end. Exit codes: 0 success, 1 usage error, 2
// data/validation error. All output is a pure function of the arguments and
// the input files.

namespace cdice::cli {

namespace detail {

inline std::optional<std::pair<std::size_t, double>> first_non_binary(std::span<const double> d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0.0 && d[i] != 1.0) return std::make_pair(i, d[i]);
    return std::nullopt;
}

inline std::optional<std::pair<std::size_t, double>> first_out_of_range(std::span<const double> d) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (!(0.0 <= d[i] && d[i] <= 1.0)) return std::make_pair(i, d[i]);
    return std::nullopt;
}

struct MetricArgs {
    std::string truth_path;
    std::string pred_path;
    std::string mode = "both";
    std::string report = "text";
    double threshold = 0.0;
    bool has_threshold = false;
};

inline int run_metric(const MetricArgs& args, std::ostream& out, std::ostream& err) {
    const BinaryMask truth = validate_binary(load_volume(args.truth_path));
    ScalarVolume pred_sv = load_volume(args.pred_path);
    const auto non_binary = first_non_binary(pred_sv.data());
    const ProbMap pred = validate_probmap(std::move(pred_sv));

    const bool want_dc = args.mode != "cdc";
    const bool want_cdc = args.mode != "dc";

    std::optional<MetricReport> dc_report;
    std::optional<MetricReport> cdc_report;
    if (want_cdc) cdc_report = continuous_dice(truth, pred);
    if (want_dc) {
        if (!non_binary)
            dc_report = dice_binary(truth, validate_binary(ScalarVolume(pred.volume())));
        else if (args.has_threshold)
            dc_report = thresholded_dice(truth, pred, args.threshold);
        else
            throw NotBinaryError(non_binary->first, non_binary->second);
    }

    // Shared operand fields come from the probabilistic comparison when one
    // was made; a thresholded DC changes the prediction operand.
    const MetricReport& shared = cdc_report ? *cdc_report : *dc_report;
    if (shared.spacing_mismatch)
        err << "warning: truth and pred disagree on spacing; the metrics ignore spacing\n";

    if (args.report == "json") {
        std::string j = "{";
        if (dc_report) j += "\"dc\": " + format_full(dc_report->value) + ", ";
        if (cdc_report) j += "\"cdc\": " + format_full(cdc_report->value) + ", ";
        j += "\"c\": " + format_full(shared.c) + ", ";
        j += "\"size_a\": " + format_full(shared.size_a) + ", ";
        j += "\"size_b\": " + format_full(shared.size_b) + ", ";
        j += "\"intersection\": " + format_full(shared.intersection) + ", ";
        j += "\"overlap_support\": " + std::to_string(shared.overlap_support) + "}";
        out << j << '\n';
    } else {
        if (dc_report) out << "dc: " << format_short(dc_report->value) << '\n';
        if (cdc_report) out << "cdc: " << format_short(cdc_report->value) << '\n';
        out << "c: " << format_short(shared.c) << '\n';
        out << "size_a: " << format_short(shared.size_a) << '\n';
        out << "size_b: " << format_short(shared.size_b) << '\n';
        out << "intersection: " << format_short(shared.intersection) << '\n';
        out << "overlap_support: " << shared.overlap_support << '\n';
        if (shared.both_empty) out << "both_empty: yes\n";
    }
    return 0;
}

struct SweepArgs {
    std::string truth_path;
    std::string pred_path;
    double grid_start = 0.0;
    double grid_stop = 0.0;
    double grid_step = 0.0;
};

inline int run_sweep(const SweepArgs& args, std::ostream& out, std::ostream& err) {
    if (!(std::isfinite(args.grid_start) && std::isfinite(args.grid_stop) && std::isfinite(args.grid_step)) ||
        args.grid_start < 0.0 || args.grid_stop > 1.0 || args.grid_start > args.grid_stop || args.grid_step <= 0.0) {
        err << "error: invalid grid; need 0 <= start <= stop <= 1 and step > 0\n";
        return 1;
    }

    const BinaryMask truth = validate_binary(load_volume(args.truth_path));
    const ProbMap pred = validate_probmap(load_volume(args.pred_path));

    std::vector<double> grid;
    for (std::size_t k = 0;; ++k) {
        const double t = args.grid_start + static_cast<double>(k) * args.grid_step;
        if (t > args.grid_stop + 1e-12) break;
        grid.push_back(std::min(t, 1.0));
    }

    const ThresholdSweepResult sweep = best_threshold_dice(truth, pred, grid);
    for (const auto& [t, dc] : sweep.entries) out << format_full(t) << ',' << format_full(dc) << '\n';
    out << "best," << format_full(sweep.best_t) << ',' << format_full(sweep.best_dc) << '\n';
    return 0;
}

struct SimulateArgs {
    std::string config_path;
    std::string structure;
    double shift_mm = 0.25;
    bool has_shift = false;
    std::uint32_t trials = 20;
    bool has_trials = false;
    std::uint64_t seed = 0;
    bool has_seed = false;
    std::string out_path;
    unsigned threads = 1;
};

inline int run_simulate(const SimulateArgs& args, std::ostream& out, std::ostream& err) {
    sim::ExperimentConfig cfg;
    std::string label;

    if (!args.config_path.empty()) {
        std::ifstream in(args.config_path);
        if (!in) throw IoError("cannot open config " + args.config_path);
        nlohmann::json j;
        try {
            in >> j;
            cfg = j.get<sim::ExperimentConfig>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(std::string("invalid config: ") + e.what());
        }
        label = std::filesystem::path(args.config_path).stem().string();
    } else if (!args.structure.empty()) {
        const auto structure = sim::parse_structure(args.structure);
        if (!structure) {
            err << "error: unknown structure \"" << args.structure << "\"\n";
            return 1;
        }
        cfg = sim::preset_config(*structure);
        if (args.has_shift) cfg.shift_mm = args.shift_mm;
        if (args.has_trials) cfg.n_trials = args.trials;
        if (args.has_seed) cfg.seed = args.seed;
        label = std::string(sim::structure_name(*structure));
    } else {
        err << "error: simulate needs --config or --structure\n";
        return 1;
    }

    const sim::TrialStatistics stats = sim::run_pve_experiment(cfg, args.threads);

    std::ostringstream csv;
    sim::emit_statistics_csv(stats, label, csv);
    {
        std::ofstream f(args.out_path, std::ios::binary);
        if (!f) throw IoError("cannot open " + args.out_path + " for writing");
        f << csv.str();
        if (!f) throw IoError("failed writing " + args.out_path);
    }

    out << sim::summary_row(stats, label) << '\n';
    if (const auto structure = sim::parse_structure(label))
        if (const auto ref = sim::published_reference(*structure))
            out << label << ",reference," << format_short(ref->mean_dc) << ',' << format_short(ref->sd_dc) << ','
                << format_short(ref->mean_cdc) << ',' << format_short(ref->sd_cdc) << '\n';
    return 0;
}

inline int run_convert_check(const std::string& volume_path, std::ostream& out) {
    const ScalarVolume v = load_volume(volume_path);
    const auto d = v.data();
    const auto [min_it, max_it] = std::minmax_element(d.begin(), d.end());

    out << "dims: " << v.dims().describe() << '\n';
    out << "spacing_mm: " << format_short(v.spacing().sx) << ' ' << format_short(v.spacing().sy) << ' '
        << format_short(v.spacing().sz) << '\n';
    out << "voxels: " << v.size() << '\n';
    out << "min: " << format_short(*min_it) << '\n';
    out << "max: " << format_short(*max_it) << '\n';
    out << "scalar: yes\n";

    const auto non_binary = first_non_binary(d);
    if (non_binary)
        out << "binary: no (index " << non_binary->first << ", " << format_short(non_binary->second) << ")\n";
    else
        out << "binary: yes\n";

    const auto out_of_range = first_out_of_range(d);
    if (out_of_range)
        out << "probmap: no (index " << out_of_range->first << ", " << format_short(out_of_range->second) << ")\n";
    else
        out << "probmap: yes\n";
    return 0;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"overlap metrics for probabilistic segmentations (SVOL volumes)", "cdice"};
    app.require_subcommand(1);

    detail::MetricArgs metric_args;
    auto* metric = app.add_subcommand("metric", "compute DC and/or cDC for a truth/prediction pair");
    metric->add_option("--truth", metric_args.truth_path, "binary ground-truth volume (.svol.json or base name)")
        ->required();
    metric->add_option("--pred", metric_args.pred_path, "prediction volume")->required();
    metric->add_option("--mode", metric_args.mode, "which metrics to compute")
        ->check(CLI::IsMember({"dc", "cdc", "both"}));
    metric->add_option("--report", metric_args.report, "output format")->check(CLI::IsMember({"text", "json"}));
    auto* threshold_opt =
        metric->add_option("--threshold", metric_args.threshold, "binarize a non-binary prediction at this cutoff for DC")
            ->check(CLI::Range(0.0, 1.0));

    detail::SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "DC across a threshold grid, plus the maximizing threshold");
    sweep->add_option("--truth", sweep_args.truth_path)->required();
    sweep->add_option("--pred", sweep_args.pred_path)->required();
    sweep->add_option("--grid-start", sweep_args.grid_start)->required();
    sweep->add_option("--grid-stop", sweep_args.grid_stop)->required();
    sweep->add_option("--grid-step", sweep_args.grid_step)->required();

    detail::SimulateArgs sim_args;
    auto* simulate = app.add_subcommand("simulate", "run a partial-volume-effect experiment and write trial CSV");
    auto* config_opt = simulate->add_option("--config", sim_args.config_path, "experiment config JSON");
    auto* structure_opt =
        simulate->add_option("--structure", sim_args.structure, "preset phantom: stn, gp, or thalamus");
    auto* shift_opt = simulate->add_option("--shift-mm", sim_args.shift_mm, "translation magnitude in mm");
    auto* trials_opt = simulate->add_option("--trials", sim_args.trials)->check(CLI::PositiveNumber);
    auto* seed_opt = simulate->add_option("--seed", sim_args.seed);
    simulate->add_option("--out", sim_args.out_path, "output CSV path")->required();
    simulate->add_option("--threads", sim_args.threads, "worker threads (any count gives identical results)")
        ->check(CLI::PositiveNumber);
    // Config files and preset flags must not be mixed.
    config_opt->excludes(structure_opt)->excludes(shift_opt)->excludes(trials_opt)->excludes(seed_opt);

    std::string convert_volume_path;
    auto* convert = app.add_subcommand("convert-check", "validate a volume file and report its classes");
    convert->add_option("--volume", convert_volume_path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 1;
    }

    metric_args.has_threshold = threshold_opt->count() > 0;
    sim_args.has_shift = shift_opt->count() > 0;
    sim_args.has_trials = trials_opt->count() > 0;
    sim_args.has_seed = seed_opt->count() > 0;

    try {
        if (app.got_subcommand(metric)) return detail::run_metric(metric_args, out, err);
        if (app.got_subcommand(sweep)) return detail::run_sweep(sweep_args, out, err);
        if (app.got_subcommand(simulate)) return detail::run_simulate(sim_args, out, err);
        if (app.got_subcommand(convert)) return detail::run_convert_check(convert_volume_path, out);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace cdice::cli
