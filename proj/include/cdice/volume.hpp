#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cdice/error.hpp"

namespace cdice {

/// Cartesian triple in millimetres. Used for offsets, directions, and
/// ellipsoid semi-axes.
struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

/// Voxel counts per axis. Construction rejects zero axes and products that
/// do not fit the platform's addressable range.
struct Dims {
    std::size_t nx = 1, ny = 1, nz = 1;

    Dims() = default;

    Dims(std::size_t nx_, std::size_t ny_, std::size_t nz_) : nx(nx_), ny(ny_), nz(nz_) {
        if (nx == 0 || ny == 0 || nz == 0) throw Error("Dims: every axis must have at least one voxel");
        const std::size_t max = std::numeric_limits<std::size_t>::max();
        if (nx > max / ny || nx * ny > max / nz) throw Error("Dims: voxel count exceeds addressable range");
    }

    std::size_t voxel_count() const noexcept { return nx * ny * nz; }

    std::string describe() const { return std::to_string(nx) + "x" + std::to_string(ny) + "x" + std::to_string(nz); }

    friend bool operator==(const Dims&, const Dims&) = default;
};

/// Physical voxel edge lengths in millimetres, strictly positive and finite.
struct Spacing {
    double sx = 1.0, sy = 1.0, sz = 1.0;

    Spacing() = default;

    Spacing(double sx_, double sy_, double sz_) : sx(sx_), sy(sy_), sz(sz_) {
        for (double s : {sx, sy, sz})
            if (!(std::isfinite(s) && s > 0.0)) throw Error("Spacing: edge lengths must be positive and finite");
    }

    friend bool operator==(const Spacing&, const Spacing&) = default;
};

/// Dense 3D scalar grid with x-fastest layout: index(x,y,z) = x + nx*(y + ny*z).
/// Immutable after construction; every stored value is finite. Values are kept
/// as doubles in memory regardless of the on-disk representation.
class ScalarVolume {
public:
    ScalarVolume(Dims dims, Spacing spacing, std::vector<double> data)
        : dims_(dims), spacing_(spacing), data_(std::move(data)) {
        if (data_.size() != dims_.voxel_count())
            throw Error("ScalarVolume: data length " + std::to_string(data_.size()) + " does not match dims " +
                        dims_.describe());
        for (std::size_t i = 0; i < data_.size(); ++i)
            if (!std::isfinite(data_[i])) throw NonFiniteError(i);
    }

    static ScalarVolume filled(Dims dims, Spacing spacing, double value) {
        return ScalarVolume(dims, spacing, std::vector<double>(dims.voxel_count(), value));
    }

    const Dims& dims() const noexcept { return dims_; }
    const Spacing& spacing() const noexcept { return spacing_; }
    std::span<const double> data() const noexcept { return data_; }
    std::size_t size() const noexcept { return data_.size(); }

    std::size_t index_of(std::size_t x, std::size_t y, std::size_t z) const noexcept {
        return x + dims_.nx * (y + dims_.ny * z);
    }

    double operator[](std::size_t i) const noexcept { return data_[i]; }
    double at(std::size_t x, std::size_t y, std::size_t z) const noexcept { return data_[index_of(x, y, z)]; }

private:
    Dims dims_;
    Spacing spacing_;
    std::vector<double> data_;
};

/// ScalarVolume whose voxels are all exactly 0 or 1. Every construction path
/// validates, so the invariant holds wherever a BinaryMask appears.
class BinaryMask {
public:
    explicit BinaryMask(ScalarVolume v) : vol_(std::move(v)) {
        const auto d = vol_.data();
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 1.0)
                ++set_count_;
            else if (d[i] != 0.0)
                throw NotBinaryError(i, d[i]);
        }
    }

    const ScalarVolume& volume() const noexcept { return vol_; }
    const Dims& dims() const noexcept { return vol_.dims(); }
    const Spacing& spacing() const noexcept { return vol_.spacing(); }
    std::span<const double> data() const noexcept { return vol_.data(); }
    std::size_t size() const noexcept { return vol_.size(); }

    /// Number of 1-voxels.
    std::uint64_t set_count() const noexcept { return set_count_; }
    bool empty() const noexcept { return set_count_ == 0; }

private:
    ScalarVolume vol_;
    std::uint64_t set_count_ = 0;
};

/// ScalarVolume whose voxels all lie in the closed interval [0, 1].
class ProbMap {
public:
    explicit ProbMap(ScalarVolume v) : vol_(std::move(v)) {
        const auto d = vol_.data();
        for (std::size_t i = 0; i < d.size(); ++i)
            if (!(0.0 <= d[i] && d[i] <= 1.0)) throw OutOfRangeError(i, d[i]);
    }

    const ScalarVolume& volume() const noexcept { return vol_; }
    const Dims& dims() const noexcept { return vol_.dims(); }
    const Spacing& spacing() const noexcept { return vol_.spacing(); }
    std::span<const double> data() const noexcept { return vol_.data(); }
    std::size_t size() const noexcept { return vol_.size(); }

private:
    ScalarVolume vol_;
};

/// Wraps v as a BinaryMask if every voxel is exactly 0.0 or 1.0.
inline BinaryMask validate_binary(ScalarVolume v) { return BinaryMask(std::move(v)); }

/// Wraps v as a ProbMap if every voxel lies in [0, 1].
inline ProbMap validate_probmap(ScalarVolume v) { return ProbMap(std::move(v)); }

/// output[i] = 1 if p[i] > t else 0. The comparison is strict, so
/// threshold(p, 0) selects exactly the positive support and coincides with
/// sign_map.
inline BinaryMask threshold(const ProbMap& p, double t) {
    if (!(std::isfinite(t) && 0.0 <= t && t <= 1.0)) throw Error("threshold: cutoff must be in [0, 1]");
    std::vector<double> out(p.size());
    const auto d = p.data();
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] > t ? 1.0 : 0.0;
    return BinaryMask(ScalarVolume(p.dims(), p.spacing(), std::move(out)));
}

/// Positive-support indicator. ProbMap values are never negative, so this is
/// the {0, 1} restriction of the three-way sign.
inline BinaryMask sign_map(const ProbMap& p) {
    std::vector<double> out(p.size());
    const auto d = p.data();
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = d[i] > 0.0 ? 1.0 : 0.0;
    return BinaryMask(ScalarVolume(p.dims(), p.spacing(), std::move(out)));
}

}  // namespace cdice
