#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "rsvt/color.hpp"
#include "rsvt/filters.hpp"
#include "rsvt/image.hpp"
#include "rsvt/softseg.hpp"

namespace rsvt {

/// Global atmospheric light with its saturation/value coordinates.
struct Airlight {
    Rgb rgb;
    double s_a = 0.0;
    double v_a = 0.0;

    [[nodiscard]] static Airlight from_rgb(const Rgb& c) {
        const Hsv hsv = to_hsv(c);
        return {c, hsv.s, hsv.v};
    }
    [[nodiscard]] static Airlight gray(double level) { return from_rgb({level, level, level}); }

    [[nodiscard]] double channel(int c) const noexcept { return c == 0 ? rgb.r : (c == 1 ? rgb.g : rgb.b); }
};

struct TransmissionMap {
    GrayMap t;
    int window_radius = 0;
};

struct TransmissionParams {
    double omega = 0.95;
    GuidedFilterParams refine{60, 1e-4};

    void validate() const {
        if (!(omega > 0.0 && omega <= 1.0)) throw std::invalid_argument("omega must lie in (0,1]");
        refine.validate();
    }
};

inline constexpr double kAirlightTopFraction = 0.001;

/**
 * @brief Mean colour of the brightest 0.1% of middle-ground pixels.
 *
 * Brightness is gray luma. If the mask has no middle ground the candidates
 * fall back to every pixel with M < 1, then to the whole image.
 */
[[nodiscard]] inline Airlight estimate_airlight(const RgbImage& img, const SegMask& mask) {
    require_same_size(img, mask.m, "estimate_airlight");
    const std::size_t n = img.pixel_count();

    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < n; ++i) {
        if (mask.is_middle_ground(i)) candidates.push_back(i);
    }
    if (candidates.empty()) {
        for (std::size_t i = 0; i < n; ++i) {
            if (mask.m[i] < 1.0) candidates.push_back(i);
        }
    }
    if (candidates.empty()) {
        candidates.resize(n);
        std::iota(candidates.begin(), candidates.end(), std::size_t{0});
    }

    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(kAirlightTopFraction * static_cast<double>(candidates.size()))));
    std::vector<double> brightness(n);
    for (std::size_t i : candidates) brightness[i] = luma(pixel(img, i));
    // Ties broken by index so the selection is deterministic.
    auto brighter = [&](std::size_t a, std::size_t b) {
        return brightness[a] != brightness[b] ? brightness[a] > brightness[b] : a < b;
    };
    std::nth_element(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(count - 1),
                     candidates.end(), brighter);

    Rgb sum;
    for (std::size_t k = 0; k < count; ++k) {
        const Rgb c = pixel(img, candidates[k]);
        sum.r += c.r;
        sum.g += c.g;
        sum.b += c.b;
    }
    const double inv = 1.0 / static_cast<double>(count);
    return Airlight::from_rgb({sum.r * inv, sum.g * inv, sum.b * inv});
}

/// Min over the (2r+1)^2 patch and the channels of I_c / A_c, each ratio clamped to [0,1].
[[nodiscard]] inline GrayMap dark_channel(const RgbImage& img, const Airlight& a, int radius) {
    if (a.rgb.r <= 0.0 || a.rgb.g <= 0.0 || a.rgb.b <= 0.0) {
        throw std::invalid_argument("dark_channel: airlight has a zero channel");
    }
    GrayMap ratio(img.width(), img.height());
    for (std::size_t i = 0; i < ratio.size(); ++i) {
        ratio[i] = std::min({clamp01(img.r[i] / a.rgb.r), clamp01(img.g[i] / a.rgb.g), clamp01(img.b[i] / a.rgb.b)});
    }
    return erode(ratio, StructuringElement::square(radius));
}

[[nodiscard]] inline GrayMap coarse_transmission(const GrayMap& dark, double omega) {
    return map_pixels(dark, [omega](double d) { return 1.0 - omega * d; });
}

[[nodiscard]] inline TransmissionMap refine_transmission(const GrayMap& coarse, const GrayMap& gray,
                                                         const GuidedFilterParams& gf, int window_radius = 0) {
    return {clamp01(guided_filter(coarse, gray, gf)), window_radius};
}

[[nodiscard]] inline TransmissionMap estimate_transmission(const RgbImage& img, const Airlight& a, const GrayMap& gray,
                                                           const TransmissionParams& p, int window_radius) {
    p.validate();
    const GrayMap coarse = coarse_transmission(dark_channel(img, a, window_radius), p.omega);
    return refine_transmission(coarse, gray, p.refine, window_radius);
}

/// 3x3 dark-channel transmission used by the saturation-value translation.
[[nodiscard]] inline TransmissionMap background_transmission(const RgbImage& img, const Airlight& a,
                                                             const GrayMap& gray, const TransmissionParams& p) {
    return estimate_transmission(img, a, gray, p, 1);
}

/// 15x15 dark-channel transmission used by the dark-channel recovery.
[[nodiscard]] inline TransmissionMap foreground_transmission(const RgbImage& img, const Airlight& a,
                                                             const GrayMap& gray, const TransmissionParams& p) {
    return estimate_transmission(img, a, gray, p, 7);
}

}  // namespace rsvt
