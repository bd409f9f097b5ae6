#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rsvt/image.hpp"

namespace rsvt {

struct GuidedFilterParams {
    int radius = 60;
    double epsilon = 1e-4;

    void validate() const {
        if (radius < 1) throw std::invalid_argument("guided filter radius must be >= 1");
        if (!(epsilon > 0.0)) throw std::invalid_argument("guided filter epsilon must be > 0");
    }
};

/**
 * @brief Symmetric structuring element stored as one horizontal run per row.
 *
 * Row dy (in [-radius, radius]) covers dx in [-half_width(dy), half_width(dy)].
 * Disks and squares both have this form, which lets erosion and dilation run
 * as incremental 1-D extrema instead of a full neighbourhood scan.
 */
class StructuringElement {
public:
    /// All (dx,dy) with dx^2 + dy^2 <= radius^2.
    [[nodiscard]] static StructuringElement disk(int radius) {
        if (radius < 0) throw std::invalid_argument("structuring element radius must be >= 0");
        StructuringElement se;
        se.radius_ = radius;
        se.half_widths_.resize(2 * radius + 1);
        for (int dy = -radius; dy <= radius; ++dy) {
            const long long rem = static_cast<long long>(radius) * radius - static_cast<long long>(dy) * dy;
            auto w = static_cast<int>(std::sqrt(static_cast<double>(rem)));
            while (static_cast<long long>(w + 1) * (w + 1) <= rem) ++w;
            while (static_cast<long long>(w) * w > rem) --w;
            se.half_widths_[dy + radius] = w;
        }
        return se;
    }

    /// The (2*radius+1)^2 square patch.
    [[nodiscard]] static StructuringElement square(int radius) {
        if (radius < 0) throw std::invalid_argument("structuring element radius must be >= 0");
        StructuringElement se;
        se.radius_ = radius;
        se.half_widths_.assign(2 * radius + 1, radius);
        return se;
    }

    [[nodiscard]] int radius() const noexcept { return radius_; }
    [[nodiscard]] int half_width(int dy) const noexcept { return half_widths_[dy + radius_]; }

    [[nodiscard]] std::vector<std::pair<int, int>> offsets() const {
        std::vector<std::pair<int, int>> out;
        for (int dy = -radius_; dy <= radius_; ++dy) {
            for (int dx = -half_width(dy); dx <= half_width(dy); ++dx) out.emplace_back(dx, dy);
        }
        return out;
    }

private:
    int radius_ = 0;
    std::vector<int> half_widths_;
};

/// Mean over the (2r+1)^2 window clipped to the image, divided by the true pixel count.
[[nodiscard]] inline GrayMap box_mean(const GrayMap& in, int radius) {
    const int w = in.width();
    const int h = in.height();
    const std::size_t stride = static_cast<std::size_t>(w) + 1;
    std::vector<double> integral(stride * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
        double run = 0.0;
        for (int x = 0; x < w; ++x) {
            run += in(x, y);
            integral[(y + 1) * stride + x + 1] = integral[y * stride + x + 1] + run;
        }
    }
    GrayMap out(w, h);
    for (int y = 0; y < h; ++y) {
        const int y0 = std::max(0, y - radius);
        const int y1 = std::min(h - 1, y + radius) + 1;
        for (int x = 0; x < w; ++x) {
            const int x0 = std::max(0, x - radius);
            const int x1 = std::min(w - 1, x + radius) + 1;
            const double sum = integral[y1 * stride + x1] - integral[y0 * stride + x1] -
                               integral[y1 * stride + x0] + integral[y0 * stride + x0];
            out(x, y) = sum / static_cast<double>((x1 - x0) * (y1 - y0));
        }
    }
    return out;
}

/**
 * @brief Gray-guided edge-preserving filter.
 *
 * Fits q = a*guide + b in every window, then averages the coefficients of all
 * windows covering each pixel. Cost is independent of the radius.
 */
[[nodiscard]] inline GrayMap guided_filter(const GrayMap& p, const GrayMap& guide, const GuidedFilterParams& params) {
    require_same_size(p, guide, "guided_filter");
    params.validate();
    const int r = params.radius;
    const std::size_t n = p.size();

    GrayMap guide_p(p.width(), p.height());
    GrayMap guide_sq(p.width(), p.height());
    for (std::size_t i = 0; i < n; ++i) {
        guide_p[i] = guide[i] * p[i];
        guide_sq[i] = guide[i] * guide[i];
    }
    const GrayMap mean_i = box_mean(guide, r);
    const GrayMap mean_p = box_mean(p, r);
    const GrayMap mean_ip = box_mean(guide_p, r);
    const GrayMap mean_ii = box_mean(guide_sq, r);

    GrayMap a(p.width(), p.height());
    GrayMap b(p.width(), p.height());
    for (std::size_t i = 0; i < n; ++i) {
        const double var = mean_ii[i] - mean_i[i] * mean_i[i];
        const double cov = mean_ip[i] - mean_i[i] * mean_p[i];
        a[i] = cov / (var + params.epsilon);
        b[i] = mean_p[i] - a[i] * mean_i[i];
    }
    const GrayMap mean_a = box_mean(a, r);
    const GrayMap mean_b = box_mean(b, r);

    GrayMap q(p.width(), p.height());
    for (std::size_t i = 0; i < n; ++i) q[i] = mean_a[i] * guide[i] + mean_b[i];
    return q;
}

/// 3x3 Sobel gradient magnitude with replicated borders, clamped to [0,1].
[[nodiscard]] inline GrayMap sobel_edge(const GrayMap& gray) {
    const int w = gray.width();
    const int h = gray.height();
    auto at = [&](int x, int y) { return gray(std::clamp(x, 0, w - 1), std::clamp(y, 0, h - 1)); };
    GrayMap out(w, h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const double gx = (at(x + 1, y - 1) + 2.0 * at(x + 1, y) + at(x + 1, y + 1)) -
                              (at(x - 1, y - 1) + 2.0 * at(x - 1, y) + at(x - 1, y + 1));
            const double gy = (at(x - 1, y + 1) + 2.0 * at(x, y + 1) + at(x + 1, y + 1)) -
                              (at(x - 1, y - 1) + 2.0 * at(x, y - 1) + at(x + 1, y - 1));
            out(x, y) = std::min(1.0, std::sqrt(gx * gx + gy * gy));
        }
    }
    return out;
}

namespace detail {

// Out-of-bounds offsets are skipped. For each source row the running extremum
// over [x-w, x+w] is grown one width at a time and pushed to every output row
// whose structuring-element row has that half width.
template <typename Pick>
[[nodiscard]] GrayMap morph(const GrayMap& in, const StructuringElement& se, Pick pick) {
    const int w = in.width();
    const int h = in.height();
    const int r = se.radius();

    std::vector<std::vector<int>> rows_by_width(static_cast<std::size_t>(r) + 1);
    int max_width = 0;
    for (int dy = -r; dy <= r; ++dy) {
        rows_by_width[se.half_width(dy)].push_back(dy);
        max_width = std::max(max_width, se.half_width(dy));
    }

    GrayMap out = in;
    std::vector<double> run(static_cast<std::size_t>(w));
    for (int sy = 0; sy < h; ++sy) {
        const auto src = in.row(sy);
        std::copy(src.begin(), src.end(), run.begin());
        for (int hw = 0; hw <= max_width; ++hw) {
            if (hw > 0) {
                for (int x = 0; x < w; ++x) {
                    double v = run[x];
                    if (x - hw >= 0) v = pick(v, src[x - hw]);
                    if (x + hw < w) v = pick(v, src[x + hw]);
                    run[x] = v;
                }
            }
            for (int dy : rows_by_width[hw]) {
                const int oy = sy - dy;
                if (oy < 0 || oy >= h) continue;
                auto dst = out.row(oy);
                for (int x = 0; x < w; ++x) dst[x] = pick(dst[x], run[x]);
            }
        }
    }
    return out;
}

}  // namespace detail

[[nodiscard]] inline GrayMap erode(const GrayMap& gray, const StructuringElement& se) {
    return detail::morph(gray, se, [](double a, double b) { return std::min(a, b); });
}

[[nodiscard]] inline GrayMap dilate(const GrayMap& gray, const StructuringElement& se) {
    return detail::morph(gray, se, [](double a, double b) { return std::max(a, b); });
}

[[nodiscard]] inline GrayMap min_channel(const RgbImage& img) {
    GrayMap out(img.width(), img.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::min({img.r[i], img.g[i], img.b[i]});
    return out;
}

[[nodiscard]] inline GrayMap max_channel(const RgbImage& img) {
    GrayMap out(img.width(), img.height());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::max({img.r[i], img.g[i], img.b[i]});
    return out;
}

}  // namespace rsvt
