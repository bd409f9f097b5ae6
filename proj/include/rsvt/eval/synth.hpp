#pragma once

#include <stdexcept>

#include "rsvt/atmos.hpp"
#include "rsvt/image.hpp"

namespace rsvt::eval {

/// I = J t + A (1 - t), per channel.
[[nodiscard]] inline RgbImage synthesize_haze(const RgbImage& clean, const GrayMap& t, const Airlight& a) {
    require_same_size(clean, t, "synthesize_haze");
    RgbImage out(clean.width(), clean.height());
    for (int c = 0; c < 3; ++c) {
        const GrayMap& j = clean.channel(c);
        GrayMap& dst = out.channel(c);
        const double ac = a.channel(c);
        for (std::size_t i = 0; i < j.size(); ++i) dst[i] = j[i] * t[i] + ac * (1.0 - t[i]);
    }
    return out;
}

[[nodiscard]] inline RgbImage synthesize_haze(const RgbImage& clean, double t, const Airlight& a) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("transmission must lie in [0,1]");
    return synthesize_haze(clean, GrayMap(clean.width(), clean.height(), t), a);
}

/// Vertical depth ramp: t_top on the first row, linearly to t_bottom on the last.
[[nodiscard]] inline GrayMap depth_ramp(int width, int height, double t_top, double t_bottom) {
    GrayMap t(width, height);
    for (int y = 0; y < height; ++y) {
        const double f = height > 1 ? static_cast<double>(y) / (height - 1) : 0.0;
        const double v = t_top + (t_bottom - t_top) * f;
        for (int x = 0; x < width; ++x) t(x, y) = v;
    }
    return t;
}

}  // namespace rsvt::eval
