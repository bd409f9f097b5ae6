#pragma once

#include <cmath>
#include <stdexcept>

#include "rsvt/color.hpp"
#include "rsvt/filters.hpp"
#include "rsvt/image.hpp"

namespace rsvt {

struct SoftSegParams {
    int fg_radius = 3;         ///< erosion disk for the foreground channel
    int bg_radius = 30;        ///< dilation disk for the background channel
    double sigmoid_gain = 20.0;  ///< steep enough that hazy textured ground stays near 0
    double sigmoid_center = 0.7;
    double tau = 0.01;         ///< fused values below this are hard foreground
    double lambda = 2.0;       ///< brightness compensation before the clamp at 1
    GuidedFilterParams refine{40, 1e-3};

    void validate() const {
        if (fg_radius < 1) throw std::invalid_argument("fg_radius must be >= 1");
        if (bg_radius < fg_radius) throw std::invalid_argument("bg_radius must be >= fg_radius");
        if (!(sigmoid_gain > 0.0)) throw std::invalid_argument("sigmoid gain must be > 0");
        if (!(sigmoid_center >= 0.0 && sigmoid_center <= 1.0)) {
            throw std::invalid_argument("sigmoid center must lie in [0,1]");
        }
        if (!(tau >= 0.0 && tau < 1.0)) throw std::invalid_argument("tau must lie in [0,1)");
        if (!(lambda >= 1.0)) throw std::invalid_argument("lambda must be >= 1");
        refine.validate();
    }
};

enum class Region { HardForeground, MiddleGround, HardBackground };

/// Soft segmentation mask: 0 is hard foreground, 1 hard background, anything between is middle ground.
struct SegMask {
    GrayMap m;

    [[nodiscard]] int width() const noexcept { return m.width(); }
    [[nodiscard]] int height() const noexcept { return m.height(); }
    [[nodiscard]] std::size_t size() const noexcept { return m.size(); }

    [[nodiscard]] Region region(std::size_t i) const noexcept {
        if (m[i] <= 0.0) return Region::HardForeground;
        if (m[i] >= 1.0) return Region::HardBackground;
        return Region::MiddleGround;
    }
    [[nodiscard]] bool is_middle_ground(std::size_t i) const noexcept { return region(i) == Region::MiddleGround; }
};

/// Everything computed on the way to the mask.
struct SoftSegResult {
    SegMask mask;
    GrayMap gray;
    GrayMap edge;        ///< 1 - sobel(gray)
    GrayMap foreground;  ///< refined eroded min channel
    GrayMap background;  ///< refined dilated max channel
    GrayMap fused;       ///< stretched product after the tau cut
};

[[nodiscard]] inline double logistic(double x) noexcept { return 1.0 / (1.0 + std::exp(-x)); }

/// Logistic curve rescaled so that 0 maps to 0 and 1 maps to 1.
[[nodiscard]] inline double sigmoid_stretch(double x, double gain, double center) noexcept {
    const double lo = logistic(-gain * center);
    const double hi = logistic(gain * (1.0 - center));
    return (logistic(gain * (x - center)) - lo) / (hi - lo);
}

[[nodiscard]] inline GrayMap sigmoid_stretch(const GrayMap& x, double gain, double center) {
    return map_pixels(x, [=](double v) { return sigmoid_stretch(v, gain, center); });
}

[[nodiscard]] inline GrayMap foreground_channel(const RgbImage& img, const GrayMap& gray, const SoftSegParams& p,
                                                const GuidedFilterParams& gf) {
    const GrayMap coarse = erode(min_channel(img), StructuringElement::disk(p.fg_radius));
    return clamp01(guided_filter(coarse, gray, gf));
}

[[nodiscard]] inline GrayMap background_channel(const RgbImage& img, const GrayMap& gray, const SoftSegParams& p,
                                                const GuidedFilterParams& gf) {
    const GrayMap coarse = dilate(max_channel(img), StructuringElement::disk(p.bg_radius));
    return clamp01(guided_filter(coarse, gray, gf));
}

/// Stretched product of the two channels, with values under tau forced to 0.
[[nodiscard]] inline GrayMap fuse_channels(const GrayMap& fore, const GrayMap& back, const SoftSegParams& p) {
    require_same_size(fore, back, "fuse_channels");
    GrayMap fused(fore.width(), fore.height());
    for (std::size_t i = 0; i < fused.size(); ++i) {
        const double s = sigmoid_stretch(fore[i] * back[i], p.sigmoid_gain, p.sigmoid_center);
        fused[i] = s < p.tau ? 0.0 : s;
    }
    return fused;
}

/// M = min(lambda * edge * fused, 1).
[[nodiscard]] inline SegMask refine_mask(const GrayMap& fused, const GrayMap& edge, double lambda) {
    require_same_size(fused, edge, "refine_mask");
    GrayMap m(fused.width(), fused.height());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::clamp(lambda * edge[i] * fused[i], 0.0, 1.0);
    return {std::move(m)};
}

[[nodiscard]] inline SegMask fuse_and_refine(const GrayMap& fore, const GrayMap& back, const GrayMap& edge,
                                             const SoftSegParams& p) {
    require_same_size(fore, edge, "fuse_and_refine");
    return refine_mask(fuse_channels(fore, back, p), edge, p.lambda);
}

[[nodiscard]] inline GrayMap inverse_edge(const GrayMap& gray) {
    return map_pixels(sobel_edge(gray), [](double v) { return 1.0 - v; });
}

[[nodiscard]] inline SoftSegResult compute_mask(const RgbImage& img, const SoftSegParams& p) {
    p.validate();
    SoftSegResult out;
    out.gray = rgb_to_gray(img);
    out.edge = inverse_edge(out.gray);
    out.foreground = foreground_channel(img, out.gray, p, p.refine);
    out.background = background_channel(img, out.gray, p, p.refine);
    out.fused = fuse_channels(out.foreground, out.background, p);
    out.mask = refine_mask(out.fused, out.edge, p.lambda);
    return out;
}

}  // namespace rsvt
