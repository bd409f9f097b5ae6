#pragma once

#include <algorithm>
#include <cmath>

#include "rsvt/image.hpp"

namespace rsvt {

// BT.601 luma weights.
inline constexpr double kLumaR = 0.299;
inline constexpr double kLumaG = 0.587;
inline constexpr double kLumaB = 0.114;

struct Rgb {
    double r = 0.0, g = 0.0, b = 0.0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};

/// Hue as a fraction of a turn in [0,1); saturation and value in [0,1].
struct Hsv {
    double h = 0.0, s = 0.0, v = 0.0;
    friend bool operator==(const Hsv&, const Hsv&) = default;
};

[[nodiscard]] constexpr double luma(double r, double g, double b) noexcept {
    return kLumaR * r + kLumaG * g + kLumaB * b;
}

[[nodiscard]] constexpr double luma(const Rgb& c) noexcept { return luma(c.r, c.g, c.b); }

/// Hexcone RGB to HSV. Hue is 0 for achromatic input.
[[nodiscard]] inline Hsv to_hsv(const Rgb& c) noexcept {
    const double mx = std::max({c.r, c.g, c.b});
    const double mn = std::min({c.r, c.g, c.b});
    const double chroma = mx - mn;
    Hsv out;
    out.v = mx;
    out.s = mx > 0.0 ? chroma / mx : 0.0;
    if (chroma <= 0.0) return out;

    double h;
    if (mx == c.r) {
        h = (c.g - c.b) / chroma;
        if (h < 0.0) h += 6.0;
    } else if (mx == c.g) {
        h = (c.b - c.r) / chroma + 2.0;
    } else {
        h = (c.r - c.g) / chroma + 4.0;
    }
    h /= 6.0;
    if (h >= 1.0) h -= 1.0;
    out.h = h;
    return out;
}

/// Inverse hexcone conversion.
[[nodiscard]] inline Rgb to_rgb(const Hsv& c) noexcept {
    const double v = c.v;
    if (c.s <= 0.0) return {v, v, v};
    double h6 = (c.h - std::floor(c.h)) * 6.0;
    if (h6 >= 6.0) h6 = 0.0;
    const int sector = static_cast<int>(h6);
    const double f = h6 - sector;
    const double p = v * (1.0 - c.s);
    const double q = v * (1.0 - c.s * f);
    const double t = v * (1.0 - c.s * (1.0 - f));
    switch (sector) {
        case 0: return {v, t, p};
        case 1: return {q, v, p};
        case 2: return {p, v, t};
        case 3: return {p, q, v};
        case 4: return {t, p, v};
        default: return {v, p, q};
    }
}

[[nodiscard]] inline Rgb pixel(const RgbImage& img, std::size_t i) noexcept {
    return {img.r[i], img.g[i], img.b[i]};
}

[[nodiscard]] inline GrayMap rgb_to_gray(const RgbImage& img) {
    GrayMap out(img.width(), img.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = luma(img.r[i], img.g[i], img.b[i]);
    return out;
}

[[nodiscard]] inline HsvImage rgb_to_hsv(const RgbImage& img) {
    HsvImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const Hsv c = to_hsv(pixel(img, i));
        out.h[i] = c.h;
        out.s[i] = c.s;
        out.v[i] = c.v;
    }
    return out;
}

[[nodiscard]] inline RgbImage hsv_to_rgb(const HsvImage& img) {
    RgbImage out(img.width(), img.height());
    for (std::size_t i = 0; i < img.pixel_count(); ++i) {
        const Rgb c = to_rgb({img.h[i], img.s[i], img.v[i]});
        out.r[i] = c.r;
        out.g[i] = c.g;
        out.b[i] = c.b;
    }
    return out;
}

/// Circular distance between two hues, in turns; at most 0.5.
[[nodiscard]] inline double hue_distance(double h1, double h2) noexcept {
    const double d = std::abs(h1 - h2);
    return std::min(d, 1.0 - d);
}

}  // namespace rsvt
