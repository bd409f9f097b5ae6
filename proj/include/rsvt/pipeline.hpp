#pragma once

#include <algorithm>
#include <stdexcept>

#include "rsvt/atmos.hpp"
#include "rsvt/color.hpp"
#include "rsvt/image.hpp"
#include "rsvt/softseg.hpp"
#include "rsvt/translation.hpp"

namespace rsvt {

/// Every tunable of the dehazing pipeline. Defaults are the reference configuration.
struct DehazeParams {
    RsvtParams rsvt;
    TransmissionParams transmission;  // omega and the transmission guided filter
    double t0 = 0.1;                  // lower bound on t in the recovery
    SoftSegParams softseg;
    int bg_window = 1;  // 3x3 dark channel for t_b
    int fg_window = 7;  // 15x15 dark channel for t

    void validate() const {
        rsvt.validate();
        transmission.validate();
        softseg.validate();
        if (!(t0 > 0.0 && t0 <= 1.0)) throw std::invalid_argument("t0 must lie in (0,1]");
        if (bg_window < 0 || fg_window < 0) throw std::invalid_argument("dark-channel window radius must be >= 0");
    }
};

struct DehazeOutput {
    RgbImage restored;
    SegMask mask;
    Airlight airlight;
    TransmissionMap t_foreground;
    TransmissionMap t_background;
    RgbImage rsvt_branch;
    RgbImage dcp_branch;
    SoftSegResult segmentation;
};

/// (I - A(1 - t)) / max(t0, t), clamped to [0,1].
[[nodiscard]] inline RgbImage dcp_recover(const RgbImage& img, const TransmissionMap& t, const Airlight& a,
                                          double t0) {
    require_same_size(img, t.t, "dcp_recover");
    RgbImage out(img.width(), img.height());
    for (int c = 0; c < 3; ++c) {
        const GrayMap& in = img.channel(c);
        GrayMap& dst = out.channel(c);
        const double ac = a.channel(c);
        for (std::size_t i = 0; i < in.size(); ++i) {
            const double ti = t.t[i];
            dst[i] = clamp01((in[i] - ac * (1.0 - ti)) / std::max(t0, ti));
        }
    }
    return out;
}

/// Per-pixel convex combination dcp*(1-M) + rsvt*M. M=0 and M=1 copy the branch exactly.
[[nodiscard]] inline RgbImage blend(const RgbImage& dcp, const RgbImage& rsvt_d, const SegMask& mask) {
    require_same_size(dcp, rsvt_d, "blend");
    require_same_size(dcp, mask.m, "blend");
    RgbImage out(dcp.width(), dcp.height());
    for (int c = 0; c < 3; ++c) {
        const GrayMap& d = dcp.channel(c);
        const GrayMap& s = rsvt_d.channel(c);
        GrayMap& dst = out.channel(c);
        for (std::size_t i = 0; i < d.size(); ++i) {
            const double m = mask.m[i];
            if (m <= 0.0) {
                dst[i] = d[i];
            } else if (m >= 1.0) {
                dst[i] = s[i];
            } else {
                dst[i] = std::clamp(d[i] * (1.0 - m) + s[i] * m, std::min(d[i], s[i]), std::max(d[i], s[i]));
            }
        }
    }
    return out;
}

/// Full pipeline: mask, airlight, t_b, translation branch, t, dark-channel branch, blend.
[[nodiscard]] inline DehazeOutput dehaze(const RgbImage& img, const DehazeParams& params = {}) {
    params.validate();
    DehazeOutput out;
    out.segmentation = compute_mask(img, params.softseg);
    out.mask = out.segmentation.mask;
    const GrayMap& gray = out.segmentation.gray;

    out.airlight = estimate_airlight(img, out.mask);
    // A channel of exactly 0 would make the dark channel undefined.
    Rgb safe = out.airlight.rgb;
    safe.r = std::max(safe.r, 1e-6);
    safe.g = std::max(safe.g, 1e-6);
    safe.b = std::max(safe.b, 1e-6);
    const Airlight dark_airlight = Airlight::from_rgb(safe);

    out.t_background = estimate_transmission(img, dark_airlight, gray, params.transmission, params.bg_window);
    out.rsvt_branch = rsvt_dehaze(img, out.t_background, out.airlight, params.rsvt);

    out.t_foreground = estimate_transmission(img, dark_airlight, gray, params.transmission, params.fg_window);
    out.dcp_branch = dcp_recover(img, out.t_foreground, out.airlight, params.t0);

    out.restored = clamp01(blend(out.dcp_branch, out.rsvt_branch, out.mask));
    return out;
}

}  // namespace rsvt
