#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rsvt/atmos.hpp"
#include "rsvt/color.hpp"
#include "rsvt/image.hpp"

namespace rsvt {

struct RsvtParams {
    double r_correlation = 3.0;  ///< R = r / t_b, held constant over the image
    double min_tb = 0.2;         ///< t_b is clamped to [min_tb, 1] before computing delta
    /// Cut negative translation factors (R*t_b > 1) to zero. Off by default: a negative
    /// delta pulls the pixel toward the airlight, which is what separates R=5 from R=10.
    bool clamp_negative = false;

    void validate() const {
        if (!(r_correlation > 0.0)) throw std::invalid_argument("R must be > 0");
        if (!(min_tb > 0.0 && min_tb <= 1.0)) throw std::invalid_argument("min_tb must lie in (0,1]");
    }
};

/// Euclidean distance from (s,v) to the airlight in the saturation-value plane.
[[nodiscard]] inline double sv_distance(double s, double v, const Airlight& a) noexcept {
    return std::hypot(s - a.s_a, v - a.v_a);
}

/**
 * Translation magnitude for one pixel:
 *   delta = (1 - R*tb) / (R*tb) * dist,  tb clamped to [min_tb, 1].
 * Negative when R*tb > 1 (the point moves toward the airlight) unless
 * clamp_negative is set.
 */
[[nodiscard]] inline double translation_delta(double dist, double tb, const RsvtParams& p) noexcept {
    const double rt = p.r_correlation * std::clamp(tb, p.min_tb, 1.0);
    const double factor = (1.0 - rt) / rt;
    return (p.clamp_negative ? std::max(0.0, factor) : factor) * dist;
}

/// Pushes S and V away from the airlight by delta; hue is untouched. Ties take the "+" branch.
[[nodiscard]] inline Hsv translate_pixel(const Hsv& h, const Airlight& a, double delta) noexcept {
    Hsv out = h;
    out.s = clamp01(h.s >= a.s_a ? h.s + delta : h.s - delta);
    out.v = clamp01(h.v >= a.v_a ? h.v + delta : h.v - delta);
    return out;
}

/// Translation applied to an HSV image; returns the translated HSV planes.
[[nodiscard]] inline HsvImage translate_hsv(const HsvImage& hsv, const GrayMap& tb, const Airlight& a,
                                            const RsvtParams& p) {
    require_same_size(hsv.h, tb, "translate_hsv");
    p.validate();
    HsvImage out(hsv.width(), hsv.height());
    for (std::size_t i = 0; i < hsv.pixel_count(); ++i) {
        const Hsv in{hsv.h[i], hsv.s[i], hsv.v[i]};
        const double delta = translation_delta(sv_distance(in.s, in.v, a), tb[i], p);
        Hsv moved = translate_pixel(in, a, delta);
        // Hue is undefined on the gray axis; giving such a pixel saturation would tint it red.
        if (in.s == 0.0) moved.s = 0.0;
        out.h[i] = moved.h;
        out.s[i] = moved.s;
        out.v[i] = moved.v;
    }
    return out;
}

/// Bright-region restoration D(x): translate in HSV, convert back to RGB.
[[nodiscard]] inline RgbImage rsvt_dehaze(const RgbImage& img, const TransmissionMap& tb, const Airlight& a,
                                          const RsvtParams& p) {
    require_same_size(img, tb.t, "rsvt_dehaze");
    return hsv_to_rgb(translate_hsv(rgb_to_hsv(img), tb.t, a, p));
}

}  // namespace rsvt
