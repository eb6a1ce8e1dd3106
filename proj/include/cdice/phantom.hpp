#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cdice/error.hpp"
#include "cdice/volume.hpp"

namespace cdice::sim {

/// Axis-aligned ellipsoid centred in its volume. Grid dimensions are derived
/// so the ellipsoid plus margin fits entirely inside; axis counts come out
/// odd, which puts a voxel centre exactly on the ellipsoid centre.
struct PhantomSpec {
    Vec3 semi_axes_mm{};  ///< rx, ry, rz, all > 0
    Spacing spacing{};
    double margin_mm = 0.0;
};

inline Dims phantom_dims(const PhantomSpec& spec) {
    const auto axis = [&](double r, double s) {
        const double half = (r + spec.margin_mm) / s;
        return 2 * static_cast<std::size_t>(std::ceil(half)) + 1;
    };
    return Dims(axis(spec.semi_axes_mm.x, spec.spacing.sx), axis(spec.semi_axes_mm.y, spec.spacing.sy),
                axis(spec.semi_axes_mm.z, spec.spacing.sz));
}

/// Voxel = 1 iff its centre, in mm relative to the volume centre, satisfies
/// (x/rx)^2 + (y/ry)^2 + (z/rz)^2 <= 1.
inline BinaryMask make_ellipsoid_mask(const PhantomSpec& spec) {
    for (double r : {spec.semi_axes_mm.x, spec.semi_axes_mm.y, spec.semi_axes_mm.z})
        if (!(std::isfinite(r) && r > 0.0)) throw DegenerateSpecError("semi-axes must be positive and finite");
    if (!(std::isfinite(spec.margin_mm) && spec.margin_mm >= 0.0))
        throw DegenerateSpecError("margin must be nonnegative and finite");

    const Dims dims = phantom_dims(spec);
    const double cx = 0.5 * static_cast<double>(dims.nx - 1);
    const double cy = 0.5 * static_cast<double>(dims.ny - 1);
    const double cz = 0.5 * static_cast<double>(dims.nz - 1);

    std::vector<double> data(dims.voxel_count());
    std::size_t i = 0;
    for (std::size_t z = 0; z < dims.nz; ++z) {
        const double qz = (static_cast<double>(z) - cz) * spec.spacing.sz / spec.semi_axes_mm.z;
        for (std::size_t y = 0; y < dims.ny; ++y) {
            const double qy = (static_cast<double>(y) - cy) * spec.spacing.sy / spec.semi_axes_mm.y;
            for (std::size_t x = 0; x < dims.nx; ++x, ++i) {
                const double qx = (static_cast<double>(x) - cx) * spec.spacing.sx / spec.semi_axes_mm.x;
                data[i] = qx * qx + qy * qy + qz * qz <= 1.0 ? 1.0 : 0.0;
            }
        }
    }

    BinaryMask mask{ScalarVolume(dims, spec.spacing, std::move(data))};
    if (mask.empty()) throw DegenerateSpecError("ellipsoid contains no voxel centres");
    return mask;
}

enum class GaussianSupport {
    MaskOnly,   ///< values only on the mask's set voxels, 0 elsewhere
    Everywhere  ///< values on the whole grid
};

struct GaussianMapSpec {
    double sigma_scale = 0.5;  ///< per-axis sigma as a fraction of the corresponding semi-axis
    GaussianSupport support = GaussianSupport::MaskOnly;
};

/// Simulated confidence map: peaks at 1 at the mask centroid and falls off
/// as a separable Gaussian with sigma = sigma_scale * semi-axis per axis.
inline ProbMap gaussian_probmap(const BinaryMask& mask, const Vec3& semi_axes_mm, const GaussianMapSpec& spec) {
    if (mask.empty()) throw EmptyMaskError();
    if (!(std::isfinite(spec.sigma_scale) && spec.sigma_scale > 0.0))
        throw Error("GaussianMapSpec: sigma_scale must be positive and finite");
    for (double r : {semi_axes_mm.x, semi_axes_mm.y, semi_axes_mm.z})
        if (!(std::isfinite(r) && r > 0.0)) throw Error("gaussian_probmap: semi-axes must be positive and finite");

    const Dims& dims = mask.dims();
    const Spacing& sp = mask.spacing();
    const auto mdata = mask.data();

    // Centroid of the set voxels, in voxel coordinates.
    double sum_x = 0.0, sum_y = 0.0, sum_z = 0.0;
    std::size_t i = 0;
    for (std::size_t z = 0; z < dims.nz; ++z)
        for (std::size_t y = 0; y < dims.ny; ++y)
            for (std::size_t x = 0; x < dims.nx; ++x, ++i)
                if (mdata[i] == 1.0) {
                    sum_x += static_cast<double>(x);
                    sum_y += static_cast<double>(y);
                    sum_z += static_cast<double>(z);
                }
    const double count = static_cast<double>(mask.set_count());
    const double gx = sum_x / count;
    const double gy = sum_y / count;
    const double gz = sum_z / count;

    const double sigma_x = spec.sigma_scale * semi_axes_mm.x;
    const double sigma_y = spec.sigma_scale * semi_axes_mm.y;
    const double sigma_z = spec.sigma_scale * semi_axes_mm.z;

    const bool everywhere = spec.support == GaussianSupport::Everywhere;
    std::vector<double> data(dims.voxel_count(), 0.0);
    i = 0;
    for (std::size_t z = 0; z < dims.nz; ++z) {
        const double dz = (static_cast<double>(z) - gz) * sp.sz / sigma_z;
        for (std::size_t y = 0; y < dims.ny; ++y) {
            const double dy = (static_cast<double>(y) - gy) * sp.sy / sigma_y;
            for (std::size_t x = 0; x < dims.nx; ++x, ++i) {
                if (!everywhere && mdata[i] != 1.0) continue;
                const double dx = (static_cast<double>(x) - gx) * sp.sx / sigma_x;
                data[i] = std::exp(-0.5 * (dx * dx + dy * dy + dz * dz));
            }
        }
    }

    return ProbMap(ScalarVolume(dims, sp, std::move(data)));
}

}  // namespace cdice::sim
