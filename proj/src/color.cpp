#include "sotm/color.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace sotm {

namespace {

double lab_f_inverse(double t) {
    constexpr double epsilon = 216.0 / 24389.0;
    constexpr double kappa = 24389.0 / 27.0;
    const double cube = t * t * t;
    return cube > epsilon ? cube : (116.0 * t - 16.0) / kappa;
}

double srgb_gamma(double c) {
    return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

std::uint8_t to_channel(double c) {
    const double clipped = std::clamp(srgb_gamma(c), 0.0, 1.0);
    return static_cast<std::uint8_t>(std::lround(clipped * 255.0));
}

} // namespace

std::string to_hex(Rgb color) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", color.r, color.g, color.b);
    return buf;
}

Rgb lab_to_srgb(double l, double a, double b) {
    // D65 reference white.
    constexpr double xn = 0.95047, yn = 1.0, zn = 1.08883;
    const double fy = (l + 16.0) / 116.0;
    const double fx = fy + a / 500.0;
    const double fz = fy - b / 200.0;
    const double x = xn * lab_f_inverse(fx);
    const double y = yn * lab_f_inverse(fy);
    const double z = zn * lab_f_inverse(fz);

    const double rl = 3.2404542 * x - 1.5371385 * y - 0.4985314 * z;
    const double gl = -0.9692660 * x + 1.8760108 * y + 0.0415560 * z;
    const double bl = 0.0556434 * x - 0.2040259 * y + 1.0572252 * z;
    return Rgb{to_channel(rl), to_channel(gl), to_channel(bl)};
}

std::vector<Rgb> cielab_unit_colors(const std::vector<double>& sammon_y) {
    std::vector<Rgb> colors(sammon_y.size());
    if (sammon_y.empty()) return colors;
    const auto [lo_it, hi_it] = std::minmax_element(sammon_y.begin(), sammon_y.end());
    const double lo = *lo_it, hi = *hi_it;
    const double range = hi - lo;
    for (std::size_t i = 0; i < sammon_y.size(); ++i) {
        const double bstar = range > 0.0 ? -60.0 + 120.0 * (sammon_y[i] - lo) / range : 0.0;
        colors[i] = lab_to_srgb(60.0, 0.0, bstar);
    }
    return colors;
}

Rgb blues_ramp(double u) {
    static constexpr Rgb ramp[9] = {
        {0xf7, 0xfb, 0xff}, {0xde, 0xeb, 0xf7}, {0xc6, 0xdb, 0xef},
        {0x9e, 0xca, 0xe1}, {0x6b, 0xae, 0xd6}, {0x42, 0x92, 0xc6},
        {0x21, 0x71, 0xb5}, {0x08, 0x51, 0x9c}, {0x08, 0x30, 0x6b},
    };
    u = std::clamp(u, 0.0, 1.0);
    const double pos = u * 8.0;
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(pos), 7);
    const double f = pos - static_cast<double>(k);
    auto lerp = [f](std::uint8_t a, std::uint8_t b) {
        return static_cast<std::uint8_t>(std::lround(a + f * (static_cast<double>(b) - a)));
    };
    return Rgb{lerp(ramp[k].r, ramp[k + 1].r), lerp(ramp[k].g, ramp[k + 1].g),
               lerp(ramp[k].b, ramp[k + 1].b)};
}

Rgb category_color(std::size_t index) {
    static constexpr Rgb palette[10] = {
        {0x1f, 0x77, 0xb4}, {0xff, 0x7f, 0x0e}, {0x2c, 0xa0, 0x2c}, {0xd6, 0x27, 0x28},
        {0x94, 0x67, 0xbd}, {0x8c, 0x56, 0x4b}, {0xe3, 0x77, 0xc2}, {0x7f, 0x7f, 0x7f},
        {0xbc, 0xbd, 0x22}, {0x17, 0xbe, 0xcf},
    };
    return palette[index % 10];
}

} // namespace sotm
