#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cdice/error.hpp"
#include "cdice/volume.hpp"

namespace cdice {

/// One metric evaluation plus the operand summaries it was built from.
/// `value` holds the DC or cDC; for the binary DC the normalizer c is 1.
struct MetricReport {
    double value = 0.0;                 ///< the DC or cDC, always in [0, 1]
    double c = 1.0;                     ///< mean prediction over the overlap; 1 for binary DC
    double size_a = 0.0;                ///< sum of truth voxels
    double size_b = 0.0;                ///< sum of prediction voxels
    double intersection = 0.0;          ///< sum of truth * prediction
    std::uint64_t overlap_support = 0;  ///< count of voxels with truth 1 and prediction > 0
    bool both_empty = false;            ///< size_a == size_b == 0; value is 1 by convention
    bool spacing_mismatch = false;      ///< operands disagreed on spacing (metrics ignore spacing)
};

namespace detail {

inline void require_same_dims(const Dims& a, const Dims& b) {
    if (!(a == b)) throw DimsMismatchError("truth is " + a.describe() + ", prediction is " + b.describe());
}

struct OverlapSums {
    double intersection = 0.0;
    double size_a = 0.0;
    double size_b = 0.0;
    std::uint64_t support = 0;  // exact integer count, one rounding source fewer than a float sum
};

inline OverlapSums overlap_sums(std::span<const double> a, std::span<const double> b) {
    OverlapSums s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double av = a[i];
        const double bv = b[i];
        s.intersection += av * bv;
        s.size_a += av;
        s.size_b += bv;
        if (av != 0.0 && bv > 0.0) ++s.support;
    }
    return s;
}

inline double clamp01(double v) { return std::min(std::max(v, 0.0), 1.0); }

}  // namespace detail

/// Classical Dice coefficient on two binary masks,
///   DC = 2|A∩B| / (|A| + |B|).
/// Symmetric in its arguments. Two empty masks score 1 by convention, with
/// both_empty set so callers can exclude the case.
inline MetricReport dice_binary(const BinaryMask& a, const BinaryMask& b) {
    detail::require_same_dims(a.dims(), b.dims());
    const auto s = detail::overlap_sums(a.data(), b.data());
    MetricReport r;
    r.c = 1.0;
    r.size_a = s.size_a;
    r.size_b = s.size_b;
    r.intersection = s.intersection;
    r.overlap_support = s.support;
    r.both_empty = s.size_a == 0.0 && s.size_b == 0.0;
    r.spacing_mismatch = !(a.spacing() == b.spacing());
    r.value = r.both_empty ? 1.0 : detail::clamp01(2.0 * s.intersection / (s.size_a + s.size_b));
    return r;
}

/// Normalizer for the continuous Dice coefficient: the mean prediction value
/// over voxels where both truth and prediction are positive,
///   c = Σ aᵢbᵢ / Σ aᵢ·sign(bᵢ),
/// and 1 when that overlap is empty. Always in (0, 1] for a ProbMap operand.
inline double c_coefficient(const BinaryMask& a, const ProbMap& b) {
    detail::require_same_dims(a.dims(), b.dims());
    const auto s = detail::overlap_sums(a.data(), b.data());
    return s.support > 0 ? s.intersection / static_cast<double>(s.support) : 1.0;
}

/// Continuous Dice coefficient,
///   cDC = 2|A∩B| / (c|A| + |B|),
/// scoring a probabilistic map against a binary ground truth.
///
/// The arguments are NOT interchangeable: `a` must be the binary ground
/// truth and `b` the probabilistic prediction; the formula is asymmetric in
/// them. For a binary `b` the result equals dice_binary(a, b) exactly.
inline MetricReport continuous_dice(const BinaryMask& a, const ProbMap& b) {
    detail::require_same_dims(a.dims(), b.dims());
    const auto s = detail::overlap_sums(a.data(), b.data());
    MetricReport r;
    r.c = s.support > 0 ? s.intersection / static_cast<double>(s.support) : 1.0;
    r.size_a = s.size_a;
    r.size_b = s.size_b;
    r.intersection = s.intersection;
    r.overlap_support = s.support;
    r.both_empty = s.size_a == 0.0 && s.size_b == 0.0;
    r.spacing_mismatch = !(a.spacing() == b.spacing());
    // clamp01: the ratio is mathematically in [0, 1] but c*size_a can round
    // a hair below intersection at complete overlap.
    r.value = r.both_empty ? 1.0 : detail::clamp01(2.0 * s.intersection / (r.c * s.size_a + s.size_b));
    return r;
}

/// DC after binarizing the prediction at cutoff t (strict comparison).
inline MetricReport thresholded_dice(const BinaryMask& a, const ProbMap& b, double t) {
    detail::require_same_dims(a.dims(), b.dims());
    return dice_binary(a, threshold(b, t));
}

/// Full record of a threshold sweep. best_t is the smallest grid value
/// attaining the maximal DC.
struct ThresholdSweepResult {
    std::vector<std::pair<double, double>> entries;  // (t, dc) in grid order
    double best_t = 0.0;
    double best_dc = 0.0;
};

inline ThresholdSweepResult best_threshold_dice(const BinaryMask& a, const ProbMap& b, std::span<const double> grid) {
    if (grid.empty()) throw EmptyGridError();
    detail::require_same_dims(a.dims(), b.dims());
    ThresholdSweepResult out;
    out.entries.reserve(grid.size());
    bool first = true;
    for (const double t : grid) {
        const double dc = thresholded_dice(a, b, t).value;
        out.entries.emplace_back(t, dc);
        if (first || dc > out.best_dc || (dc == out.best_dc && t < out.best_t)) {
            out.best_dc = dc;
            out.best_t = t;
            first = false;
        }
    }
    return out;
}

}  // namespace cdice
