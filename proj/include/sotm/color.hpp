#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace sotm {

struct Rgb {
    std::uint8_t r = 0, g = 0, b = 0;
    bool operator==(const Rgb&) const = default;
};

std::string to_hex(Rgb color); // "#rrggbb"

// CIELab -> sRGB (D65, standard transform), channels clipped to gamut.
Rgb lab_to_srgb(double l, double a, double b);

// Maps coordinates onto the blue-to-yellow CIELab axis: min(y)..max(y) spans
// b* in [-60, +60] at fixed L* = 60, a* = 0. A degenerate (all-equal) input
// maps everything to b* = 0.
std::vector<Rgb> cielab_unit_colors(const std::vector<double>& sammon_y);

// Sequential 9-class single-hue blue ramp, linearly interpolated; u in [0,1],
// light (low) to dark (high).
Rgb blues_ramp(double u);

// Categorical palette for trajectory groups; cycles past its length.
Rgb category_color(std::size_t index);

} // namespace sotm
