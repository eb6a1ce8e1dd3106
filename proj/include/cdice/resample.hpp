#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cdice/error.hpp"
#include "cdice/volume.hpp"

namespace cdice::sim {

/// Shifts a volume by offset_mm and resamples it onto the original grid with
/// trilinear interpolation: output voxel g reads the input at g - offset.
/// Sample positions outside the input extent read as 0.
inline ScalarVolume translate_resample(const ScalarVolume& v, const Vec3& offset_mm) {
    if (!(std::isfinite(offset_mm.x) && std::isfinite(offset_mm.y) && std::isfinite(offset_mm.z)))
        throw Error("translate_resample: offset must be finite");

    const Dims& dims = v.dims();
    const auto in = v.data();
    const double ox = offset_mm.x / v.spacing().sx;  // voxel units
    const double oy = offset_mm.y / v.spacing().sy;
    const double oz = offset_mm.z / v.spacing().sz;

    const auto nx = static_cast<std::ptrdiff_t>(dims.nx);
    const auto ny = static_cast<std::ptrdiff_t>(dims.ny);
    const auto nz = static_cast<std::ptrdiff_t>(dims.nz);

    const auto fetch = [&](std::ptrdiff_t x, std::ptrdiff_t y, std::ptrdiff_t z) -> double {
        if (x < 0 || y < 0 || z < 0 || x >= nx || y >= ny || z >= nz) return 0.0;
        return in[static_cast<std::size_t>(x + nx * (y + ny * z))];
    };

    std::vector<double> out(dims.voxel_count());
    std::size_t i = 0;
    for (std::ptrdiff_t z = 0; z < nz; ++z) {
        const double pz = static_cast<double>(z) - oz;
        const auto z0 = static_cast<std::ptrdiff_t>(std::floor(pz));
        const double fz = pz - static_cast<double>(z0);
        for (std::ptrdiff_t y = 0; y < ny; ++y) {
            const double py = static_cast<double>(y) - oy;
            const auto y0 = static_cast<std::ptrdiff_t>(std::floor(py));
            const double fy = py - static_cast<double>(y0);
            for (std::ptrdiff_t x = 0; x < nx; ++x, ++i) {
                const double px = static_cast<double>(x) - ox;
                const auto x0 = static_cast<std::ptrdiff_t>(std::floor(px));
                const double fx = px - static_cast<double>(x0);

                const double c00 = std::lerp(fetch(x0, y0, z0), fetch(x0 + 1, y0, z0), fx);
                const double c10 = std::lerp(fetch(x0, y0 + 1, z0), fetch(x0 + 1, y0 + 1, z0), fx);
                const double c01 = std::lerp(fetch(x0, y0, z0 + 1), fetch(x0 + 1, y0, z0 + 1), fx);
                const double c11 = std::lerp(fetch(x0, y0 + 1, z0 + 1), fetch(x0 + 1, y0 + 1, z0 + 1), fx);
                out[i] = std::lerp(std::lerp(c00, c10, fy), std::lerp(c01, c11, fy), fz);
            }
        }
    }

    return ScalarVolume(dims, v.spacing(), std::move(out));
}

/// ProbMap overload. Interpolating values in [0, 1] stays in [0, 1] up to
/// rounding; the result is clamped so the ProbMap invariant holds exactly.
inline ProbMap translate_resample(const ProbMap& p, const Vec3& offset_mm) {
    ScalarVolume shifted = translate_resample(p.volume(), offset_mm);
    std::vector<double> out(shifted.data().begin(), shifted.data().end());
    for (double& v : out) v = std::min(std::max(v, 0.0), 1.0);
    return ProbMap(ScalarVolume(shifted.dims(), shifted.spacing(), std::move(out)));
}

}  // namespace cdice::sim
