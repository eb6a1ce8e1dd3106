#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cdice/error.hpp"
#include "cdice/volume.hpp"

namespace cdice {

// SVOL container, version 1. A volume is a pair of files:
//   <name>.svol.json  UTF-8 JSON header
//   <name>.svol.raw   nx*ny*nz little-endian float32 values, x-fastest order
// The header references the raw file by name; the raw file lives next to the
// header. Values are widened to double on load.

inline constexpr int kSvolVersion = 1;

namespace detail {

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

}  // namespace detail

/// Accepts either the header path itself ("vol.svol.json") or a base name
/// ("vol") and returns the header path.
inline std::filesystem::path svol_header_path(const std::filesystem::path& path) {
    const std::string s = path.string();
    if (detail::ends_with(s, ".svol.json")) return path;
    return std::filesystem::path(s + ".svol.json");
}

inline void store_volume(const ScalarVolume& v, const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    const fs::path header_path = svol_header_path(path);
    std::string raw_name = header_path.filename().string();
    raw_name.replace(raw_name.size() - 5, 5, ".raw");  // ".json" -> ".raw"

    nlohmann::ordered_json header;
    header["svol_version"] = kSvolVersion;
    header["dims"] = {v.dims().nx, v.dims().ny, v.dims().nz};
    header["spacing_mm"] = {v.spacing().sx, v.spacing().sy, v.spacing().sz};
    header["dtype"] = "f32le";
    header["order"] = "x-fastest";
    header["data_file"] = raw_name;

    std::ofstream hout(header_path, std::ios::binary);
    if (!hout) throw IoError("store_volume: cannot open " + header_path.string() + " for writing");
    hout << header.dump(2) << '\n';
    if (!hout) throw IoError("store_volume: failed writing " + header_path.string());

    const fs::path raw_path = header_path.parent_path() / raw_name;
    std::ofstream rout(raw_path, std::ios::binary);
    if (!rout) throw IoError("store_volume: cannot open " + raw_path.string() + " for writing");

    std::vector<unsigned char> buf;
    buf.reserve(1 << 16);
    const auto data = v.data();
    for (std::size_t i = 0; i < data.size(); ++i) {
        const float f = static_cast<float>(data[i]);
        if (!std::isfinite(f)) throw IoError("store_volume: voxel " + std::to_string(i) + " overflows float32");
        const std::uint32_t bits = std::bit_cast<std::uint32_t>(f);
        buf.push_back(static_cast<unsigned char>(bits & 0xFF));
        buf.push_back(static_cast<unsigned char>((bits >> 8) & 0xFF));
        buf.push_back(static_cast<unsigned char>((bits >> 16) & 0xFF));
        buf.push_back(static_cast<unsigned char>((bits >> 24) & 0xFF));
        if (buf.size() == buf.capacity()) {
            rout.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
            buf.clear();
        }
    }
    if (!buf.empty()) rout.write(reinterpret_cast<const char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    if (!rout) throw IoError("store_volume: failed writing " + raw_path.string());
}

inline ScalarVolume load_volume(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    const fs::path header_path = svol_header_path(path);

    std::ifstream hin(header_path, std::ios::binary);
    if (!hin) throw IoError("load_volume: cannot open " + header_path.string());

    nlohmann::json header;
    try {
        hin >> header;
    } catch (const nlohmann::json::exception& e) {
        throw MalformedHeaderError(std::string("header is not valid JSON (") + e.what() + ")");
    }

    if (!header.is_object()) throw MalformedHeaderError("header must be a JSON object");
    if (!header.contains("svol_version") || !header["svol_version"].is_number_integer())
        throw MalformedHeaderError("missing or invalid \"svol_version\"");
    const auto version = header["svol_version"].get<std::int64_t>();
    if (version != kSvolVersion)
        throw UnsupportedVersionError("svol_version " + std::to_string(version) + " (expected " +
                                      std::to_string(kSvolVersion) + ")");

    if (!header.contains("dims") || !header["dims"].is_array() || header["dims"].size() != 3)
        throw MalformedHeaderError("missing or invalid \"dims\"");
    for (const auto& d : header["dims"])
        if (!d.is_number_unsigned() || d.get<std::uint64_t>() == 0) throw MalformedHeaderError("invalid \"dims\" entry");
    Dims dims;
    try {
        dims = Dims(header["dims"][0].get<std::size_t>(), header["dims"][1].get<std::size_t>(),
                    header["dims"][2].get<std::size_t>());
    } catch (const Error&) {
        throw MalformedHeaderError("invalid \"dims\"");
    }

    if (!header.contains("spacing_mm") || !header["spacing_mm"].is_array() || header["spacing_mm"].size() != 3)
        throw MalformedHeaderError("missing or invalid \"spacing_mm\"");
    Spacing spacing;
    try {
        spacing = Spacing(header["spacing_mm"][0].get<double>(), header["spacing_mm"][1].get<double>(),
                          header["spacing_mm"][2].get<double>());
    } catch (const std::exception&) {
        throw MalformedHeaderError("invalid \"spacing_mm\"");
    }

    if (!header.contains("dtype") || header["dtype"] != "f32le")
        throw MalformedHeaderError("\"dtype\" must be \"f32le\" in version 1");
    if (!header.contains("order") || header["order"] != "x-fastest")
        throw MalformedHeaderError("\"order\" must be \"x-fastest\" in version 1");
    if (!header.contains("data_file") || !header["data_file"].is_string())
        throw MalformedHeaderError("missing or invalid \"data_file\"");

    const fs::path raw_path = header_path.parent_path() / header["data_file"].get<std::string>();
    std::ifstream rin(raw_path, std::ios::binary);
    if (!rin) throw IoError("load_volume: cannot open " + raw_path.string());

    const std::size_t count = dims.voxel_count();
    if (count > std::numeric_limits<std::size_t>::max() / 4) throw MalformedHeaderError("\"dims\" payload too large");
    const std::uintmax_t expected_bytes = static_cast<std::uintmax_t>(count) * 4;
    std::error_code ec;
    const std::uintmax_t actual_bytes = fs::file_size(raw_path, ec);
    if (ec) throw IoError("load_volume: cannot stat " + raw_path.string());
    if (actual_bytes != expected_bytes)
        throw HeaderMismatchError("header declares " + std::to_string(expected_bytes) + " payload bytes, " +
                                  raw_path.filename().string() + " has " + std::to_string(actual_bytes));

    std::vector<double> data(count);
    std::vector<unsigned char> buf(1 << 16);
    std::size_t i = 0;
    while (i < count) {
        const std::size_t want = std::min(buf.size(), (count - i) * 4);
        rin.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(want));
        if (static_cast<std::size_t>(rin.gcount()) != want) throw IoError("load_volume: short read from " + raw_path.string());
        for (std::size_t k = 0; k < want; k += 4, ++i) {
            const std::uint32_t bits = static_cast<std::uint32_t>(buf[k]) |
                                       (static_cast<std::uint32_t>(buf[k + 1]) << 8) |
                                       (static_cast<std::uint32_t>(buf[k + 2]) << 16) |
                                       (static_cast<std::uint32_t>(buf[k + 3]) << 24);
            data[i] = static_cast<double>(std::bit_cast<float>(bits));
        }
    }

    return ScalarVolume(dims, spacing, std::move(data));
}

}  // namespace cdice
