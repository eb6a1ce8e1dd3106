#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "cdice/format.hpp"

namespace cdice {

/// Base type for every failure the library reports. The what() string
/// always starts with the error kind, e.g. "NotBinary: ...".
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& message) : std::runtime_error(message) {}
};

/// A voxel was expected to be exactly 0 or 1. Reports the first offender.
class NotBinaryError : public Error {
public:
    NotBinaryError(std::size_t index_, double value_)
        : Error("NotBinary: voxel " + std::to_string(index_) + " has value " + format_short(value_)),
          index(index_),
          value(value_) {}

    std::size_t index;
    double value;
};

/// A voxel was expected to lie in the closed interval [0, 1].
class OutOfRangeError : public Error {
public:
    OutOfRangeError(std::size_t index_, double value_)
        : Error("OutOfRange: voxel " + std::to_string(index_) + " has value " + format_short(value_) +
                ", outside [0, 1]"),
          index(index_),
          value(value_) {}

    std::size_t index;
    double value;
};

/// A voxel holds NaN or an infinity.
class NonFiniteError : public Error {
public:
    explicit NonFiniteError(std::size_t index_)
        : Error("NonFinite: voxel " + std::to_string(index_) + " is NaN or infinite"), index(index_) {}

    std::size_t index;
};

/// Two volumes compared by a metric have different voxel counts per axis.
class DimsMismatchError : public Error {
public:
    explicit DimsMismatchError(const std::string& detail) : Error("DimsMismatch: " + detail) {}
};

class EmptyGridError : public Error {
public:
    EmptyGridError() : Error("EmptyGrid: threshold grid must contain at least one value") {}
};

/// Phantom specification does not describe a usable ellipsoid.
class DegenerateSpecError : public Error {
public:
    explicit DegenerateSpecError(const std::string& detail) : Error("DegenerateSpec: " + detail) {}
};

class EmptyMaskError : public Error {
public:
    EmptyMaskError() : Error("EmptyMask: mask has no set voxels") {}
};

// I/O errors for the SVOL container.

class MalformedHeaderError : public Error {
public:
    explicit MalformedHeaderError(const std::string& detail) : Error("MalformedHeader: " + detail) {}
};

class UnsupportedVersionError : public Error {
public:
    explicit UnsupportedVersionError(const std::string& detail) : Error("UnsupportedVersion: " + detail) {}
};

/// Declared payload length does not match the raw file contents.
class HeaderMismatchError : public Error {
public:
    explicit HeaderMismatchError(const std::string& detail) : Error("HeaderMismatch: " + detail) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& detail) : Error("IoFailure: " + detail) {}
};

}  // namespace cdice
