#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgp::io {

inline constexpr std::string_view kVersion = "1.0.0";

// 17 significant digits, round-trip exact.
std::string fmt17(double v);

// FNV-1a 64-bit, hex encoded.
std::string fnv1a_hex(std::string_view text);

// What every emitted file states about itself.
struct Provenance {
    std::string config_hash = "none";
    std::string normalization = "full";
};

// "qgpdark <version> config=<hash> normalization=<...>", without comment markers.
std::string provenance_text(const Provenance& p);

// Writes through a temporary sibling and renames, so a failed run leaves no
// partial file behind. Throws std::runtime_error with the OS message.
void write_text_file(const std::filesystem::path& path, std::string_view contents);

struct Series {
    std::vector<double> x;
    std::vector<double> y;
    std::string color = "#555555";
};

struct Marker {
    double x;
    double y;
    std::string label;
};

struct HorizontalLine {
    double y;
    std::string label;
};

struct Plot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
    std::vector<Marker> markers;
    std::vector<HorizontalLine> levels;
};

// Self-contained SVG (polylines, text, no external assets).
std::string render_svg(const Plot& plot, const Provenance& provenance);

}  // namespace qgp::io
