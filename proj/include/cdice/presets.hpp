#pragma once

#include <optional>
#include <string_view>

#include "cdice/experiment.hpp"

namespace cdice::sim {

/// Built-in phantom presets sized like the deep-brain structures the
/// harness contrasts: small (stn), medium (gp), large (thalamus).
enum class Structure { Stn, Gp, Thalamus };

inline std::string_view structure_name(Structure s) {
    switch (s) {
        case Structure::Stn: return "stn";
        case Structure::Gp: return "gp";
        default: return "thalamus";
    }
}

inline std::optional<Structure> parse_structure(std::string_view name) {
    if (name == "stn") return Structure::Stn;
    if (name == "gp") return Structure::Gp;
    if (name == "thalamus") return Structure::Thalamus;
    return std::nullopt;
}

/// Default experiment for a preset: 0.5 mm isotropic grid (so the default
/// 0.25 mm shift is half a voxel), 2 mm margin, sigma at half the semi-axis,
/// in-mask Gaussian support, 20 trials, rebinarization at 0.5.
inline ExperimentConfig preset_config(Structure s) {
    Vec3 axes;
    switch (s) {
        case Structure::Stn: axes = {2.0, 3.0, 4.0}; break;
        case Structure::Gp: axes = {6.0, 7.0, 10.0}; break;
        case Structure::Thalamus: axes = {10.0, 12.0, 15.0}; break;
    }
    ExperimentConfig cfg;
    cfg.phantom = PhantomSpec{axes, Spacing(0.5, 0.5, 0.5), 2.0};
    cfg.gmap = GaussianMapSpec{0.5, GaussianSupport::MaskOnly};
    cfg.shift_mm = 0.25;
    cfg.n_trials = 20;
    cfg.seed = 0;
    cfg.rebinarize_threshold = 0.5;
    return cfg;
}

/// Reference DC/cDC summaries reported for manually segmented structures
/// under the equivalent half-voxel-shift protocol. The simulate command
/// prints them next to simulated results for comparison; they are not a
/// pass/fail gate (the phantom is not patient anatomy).
struct ReferenceSummary {
    double mean_dc;
    double sd_dc;
    double mean_cdc;
    double sd_cdc;
};

inline std::optional<ReferenceSummary> published_reference(Structure s) {
    switch (s) {
        case Structure::Stn: return ReferenceSummary{0.86, 0.025, 0.97, 0.006};
        case Structure::Thalamus: return ReferenceSummary{0.98, 0.006, 0.99, 0.001};
        default: return std::nullopt;
    }
}

}  // namespace cdice::sim
