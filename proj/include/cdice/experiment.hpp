#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cdice/error.hpp"
#include "cdice/format.hpp"
#include "cdice/metrics.hpp"
#include "cdice/phantom.hpp"
#include "cdice/resample.hpp"
#include "cdice/rng.hpp"

namespace cdice::sim {

/// One partial-volume-effect experiment: an ellipsoid phantom, a simulated
/// confidence map over it, and n_trials random sub-voxel translations. Each
/// trial shifts both the confidence map (scored with cDC against the
/// unshifted mask) and a rebinarized copy of the mask (scored with DC).
struct ExperimentConfig {
    PhantomSpec phantom{};
    GaussianMapSpec gmap{};
    double shift_mm = 0.25;
    std::uint32_t n_trials = 20;
    std::uint64_t seed = 0;
    double rebinarize_threshold = 0.5;
};

struct TrialRecord {
    double dc = 0.0;
    double cdc = 0.0;
};

struct TrialStatistics {
    std::vector<TrialRecord> trials;  ///< ordered by trial index
    double mean_dc = 0.0;
    double sd_dc = 0.0;  ///< sample standard deviation (n-1)
    double mean_cdc = 0.0;
    double sd_cdc = 0.0;
};

// JSON representation with field names exactly matching the type
// definitions. "support" is "mask-only" or "everywhere".

inline void to_json(nlohmann::json& j, const GaussianMapSpec& g) {
    j = nlohmann::json{{"sigma_scale", g.sigma_scale},
                       {"support", g.support == GaussianSupport::MaskOnly ? "mask-only" : "everywhere"}};
}

inline void from_json(const nlohmann::json& j, GaussianMapSpec& g) {
    g.sigma_scale = j.at("sigma_scale").get<double>();
    const auto s = j.at("support").get<std::string>();
    if (s == "mask-only")
        g.support = GaussianSupport::MaskOnly;
    else if (s == "everywhere")
        g.support = GaussianSupport::Everywhere;
    else
        throw Error("GaussianMapSpec: unknown support \"" + s + "\"");
}

inline void to_json(nlohmann::json& j, const PhantomSpec& p) {
    j = nlohmann::json{{"semi_axes_mm", {p.semi_axes_mm.x, p.semi_axes_mm.y, p.semi_axes_mm.z}},
                       {"spacing", {{"sx", p.spacing.sx}, {"sy", p.spacing.sy}, {"sz", p.spacing.sz}}},
                       {"margin_mm", p.margin_mm}};
}

inline void from_json(const nlohmann::json& j, PhantomSpec& p) {
    const auto& axes = j.at("semi_axes_mm");
    if (!axes.is_array() || axes.size() != 3) throw Error("PhantomSpec: \"semi_axes_mm\" must be [rx, ry, rz]");
    p.semi_axes_mm = Vec3{axes[0].get<double>(), axes[1].get<double>(), axes[2].get<double>()};
    const auto& sp = j.at("spacing");
    p.spacing = Spacing(sp.at("sx").get<double>(), sp.at("sy").get<double>(), sp.at("sz").get<double>());
    p.margin_mm = j.value("margin_mm", 0.0);
}

inline void to_json(nlohmann::json& j, const ExperimentConfig& c) {
    j = nlohmann::json{{"phantom", c.phantom}, {"gmap", c.gmap},
                       {"shift_mm", c.shift_mm}, {"n_trials", c.n_trials},
                       {"seed", c.seed},         {"rebinarize_threshold", c.rebinarize_threshold}};
}

inline void from_json(const nlohmann::json& j, ExperimentConfig& c) {
    c.phantom = j.at("phantom").get<PhantomSpec>();
    c.gmap = j.at("gmap").get<GaussianMapSpec>();
    c.shift_mm = j.at("shift_mm").get<double>();
    c.n_trials = j.at("n_trials").get<std::uint32_t>();
    c.seed = j.at("seed").get<std::uint64_t>();
    c.rebinarize_threshold = j.value("rebinarize_threshold", 0.5);
}

namespace detail {

inline std::pair<double, double> mean_sample_sd(const std::vector<TrialRecord>& trials, double TrialRecord::*field) {
    const auto n = static_cast<double>(trials.size());
    double sum = 0.0;
    for (const auto& t : trials) sum += t.*field;
    const double mean = sum / n;
    if (trials.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (const auto& t : trials) {
        const double d = t.*field - mean;
        ss += d * d;
    }
    return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace detail

/// Runs the experiment. Trial k draws its direction from a generator seeded
/// with seed xor k, so results are identical for any thread count and any
/// execution order.
inline TrialStatistics run_pve_experiment(const ExperimentConfig& cfg, unsigned n_threads = 1) {
    if (cfg.n_trials < 1) throw Error("ExperimentConfig: n_trials must be >= 1");
    if (!(std::isfinite(cfg.shift_mm) && cfg.shift_mm >= 0.0))
        throw Error("ExperimentConfig: shift_mm must be finite and >= 0");
    if (!(std::isfinite(cfg.rebinarize_threshold) && 0.0 <= cfg.rebinarize_threshold &&
          cfg.rebinarize_threshold <= 1.0))
        throw Error("ExperimentConfig: rebinarize_threshold must be in [0, 1]");

    const BinaryMask mask = make_ellipsoid_mask(cfg.phantom);
    const ProbMap confidence = gaussian_probmap(mask, cfg.phantom.semi_axes_mm, cfg.gmap);
    const ProbMap mask_as_prob{ScalarVolume(mask.volume())};

    TrialStatistics stats;
    stats.trials.resize(cfg.n_trials);

    const auto run_trial = [&](std::uint32_t k) {
        SplitMix64 rng(cfg.seed ^ static_cast<std::uint64_t>(k));
        const Vec3 dir = random_unit_direction(rng);
        const Vec3 offset{cfg.shift_mm * dir.x, cfg.shift_mm * dir.y, cfg.shift_mm * dir.z};
        const ProbMap shifted_confidence = translate_resample(confidence, offset);
        const BinaryMask shifted_truth =
            threshold(translate_resample(mask_as_prob, offset), cfg.rebinarize_threshold);
        stats.trials[k].dc = dice_binary(mask, shifted_truth).value;
        stats.trials[k].cdc = continuous_dice(mask, shifted_confidence).value;
    };

    const unsigned workers = std::min<unsigned>(n_threads == 0 ? 1u : n_threads, cfg.n_trials);
    if (workers <= 1) {
        for (std::uint32_t k = 0; k < cfg.n_trials; ++k) run_trial(k);
    } else {
        std::atomic<std::uint32_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (;;) {
                    const std::uint32_t k = next.fetch_add(1);
                    if (k >= cfg.n_trials) break;
                    run_trial(k);
                }
            });
        for (auto& t : pool) t.join();
    }

    std::tie(stats.mean_dc, stats.sd_dc) = detail::mean_sample_sd(stats.trials, &TrialRecord::dc);
    std::tie(stats.mean_cdc, stats.sd_cdc) = detail::mean_sample_sd(stats.trials, &TrialRecord::cdc);
    return stats;
}

inline std::string summary_row(const TrialStatistics& stats, std::string_view label) {
    return std::string(label) + ",summary," + format_full(stats.mean_dc) + ',' + format_full(stats.sd_dc) + ',' +
           format_full(stats.mean_cdc) + ',' + format_full(stats.sd_cdc);
}

/// CSV report: header "label,trial,dc,cdc", one row per trial (0-based
/// index), then the summary row
/// "label,summary,mean_dc,sd_dc,mean_cdc,sd_cdc". Byte output is a pure
/// function of the statistics and the label.
inline void emit_statistics_csv(const TrialStatistics& stats, std::string_view label, std::ostream& os) {
    os << "label,trial,dc,cdc\n";
    for (std::size_t k = 0; k < stats.trials.size(); ++k)
        os << label << ',' << k << ',' << format_full(stats.trials[k].dc) << ',' << format_full(stats.trials[k].cdc)
           << '\n';
    os << summary_row(stats, label) << '\n';
    if (!os) throw IoError("emit_statistics_csv: write failed");
}

}  // namespace cdice::sim
