#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rsvt/color.hpp"
#include "rsvt/image.hpp"

namespace rsvt::eval {

/// Reported for bit-identical images, where the MSE is zero.
inline constexpr double kPsnrIdentical = 99.0;

[[nodiscard]] inline double mse(const RgbImage& a, const RgbImage& b) {
    require_same_size(a, b, "mse");
    double sum = 0.0;
    for (int c = 0; c < 3; ++c) {
        const GrayMap& pa = a.channel(c);
        const GrayMap& pb = b.channel(c);
        for (std::size_t i = 0; i < pa.size(); ++i) {
            const double d = pa[i] - pb[i];
            sum += d * d;
        }
    }
    return sum / (3.0 * static_cast<double>(a.pixel_count()));
}

/// 10 log10(1 / MSE) on the unit scale.
[[nodiscard]] inline double psnr(const RgbImage& a, const RgbImage& b) {
    const double e = mse(a, b);
    if (e == 0.0) return kPsnrIdentical;
    return 10.0 * std::log10(1.0 / e);
}

struct SsimParams {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

class ImageTooSmall : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace detail {

[[nodiscard]] inline std::vector<double> gaussian_kernel(int size, double sigma) {
    std::vector<double> k(static_cast<std::size_t>(size));
    const double c = (size - 1) / 2.0;
    double sum = 0.0;
    for (int i = 0; i < size; ++i) {
        k[i] = std::exp(-((i - c) * (i - c)) / (2.0 * sigma * sigma));
        sum += k[i];
    }
    for (auto& v : k) v /= sum;
    return k;
}

// Separable Gaussian over the fully-contained ("valid") window positions.
[[nodiscard]] inline std::vector<double> filter_valid(const GrayMap& in, const std::vector<double>& k) {
    const int w = in.width();
    const int h = in.height();
    const int n = static_cast<int>(k.size());
    const int ow = w - n + 1;
    const int oh = h - n + 1;
    std::vector<double> horiz(static_cast<std::size_t>(ow) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += k[i] * in(x + i, y);
            horiz[static_cast<std::size_t>(y) * ow + x] = s;
        }
    }
    std::vector<double> out(static_cast<std::size_t>(ow) * oh);
    for (int y = 0; y < oh; ++y) {
        for (int x = 0; x < ow; ++x) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += k[i] * horiz[static_cast<std::size_t>(y + i) * ow + x];
            out[static_cast<std::size_t>(y) * ow + x] = s;
        }
    }
    return out;
}

}  // namespace detail

/**
 * @brief Single-scale SSIM on BT.601 luma.
 *
 * Gaussian-weighted local statistics over every window position that lies
 * fully inside the image, averaged. Both sides must be at least window x window.
 */
[[nodiscard]] inline double ssim(const RgbImage& a, const RgbImage& b, const SsimParams& p = {}) {
    require_same_size(a, b, "ssim");
    if (a.width() < p.window || a.height() < p.window) {
        throw ImageTooSmall("ssim: image smaller than the " + std::to_string(p.window) + "x" +
                            std::to_string(p.window) + " window");
    }
    const GrayMap x = rgb_to_gray(a);
    const GrayMap y = rgb_to_gray(b);
    GrayMap xx(x.width(), x.height()), yy(x.width(), x.height()), xy(x.width(), x.height());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xx[i] = x[i] * x[i];
        yy[i] = y[i] * y[i];
        xy[i] = x[i] * y[i];
    }
    const auto k = detail::gaussian_kernel(p.window, p.sigma);
    const auto mu_x = detail::filter_valid(x, k);
    const auto mu_y = detail::filter_valid(y, k);
    const auto e_xx = detail::filter_valid(xx, k);
    const auto e_yy = detail::filter_valid(yy, k);
    const auto e_xy = detail::filter_valid(xy, k);

    const double c1 = (p.k1 * p.dynamic_range) * (p.k1 * p.dynamic_range);
    const double c2 = (p.k2 * p.dynamic_range) * (p.k2 * p.dynamic_range);
    double total = 0.0;
    for (std::size_t i = 0; i < mu_x.size(); ++i) {
        const double mx = mu_x[i];
        const double my = mu_y[i];
        const double vx = e_xx[i] - mx * mx;
        const double vy = e_yy[i] - my * my;
        const double cxy = e_xy[i] - mx * my;
        total += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
    }
    return total / static_cast<double>(mu_x.size());
}

}  // namespace rsvt::eval
