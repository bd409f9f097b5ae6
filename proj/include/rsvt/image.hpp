#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsvt {

/// Thrown when two images that must share a size do not.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/**
 * @brief Single-channel row-major floating-point plane.
 *
 * Used for gray images, dark channels, transmissions, masks and edge maps.
 * Samples are nominally in [0,1]; the container does not clamp, so
 * intermediate values outside that range are representable (see
 * is_unit_range()).
 */
class GrayMap {
public:
    GrayMap() = default;

    GrayMap(int width, int height, double fill = 0.0)
        : width_(width), height_(height) {
        if (width < 1 || height < 1) {
            throw std::invalid_argument("GrayMap: width and height must be >= 1");
        }
        data_.assign(static_cast<std::size_t>(width) * height, fill);
    }

    [[nodiscard]] int width() const noexcept { return width_; }
    [[nodiscard]] int height() const noexcept { return height_; }
    [[nodiscard]] std::size_t size() const noexcept { return data_.size(); }
    [[nodiscard]] bool empty() const noexcept { return data_.empty(); }

    [[nodiscard]] double& operator()(int x, int y) noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    [[nodiscard]] double operator()(int x, int y) const noexcept {
        return data_[static_cast<std::size_t>(y) * width_ + x];
    }
    [[nodiscard]] double& operator[](std::size_t i) noexcept { return data_[i]; }
    [[nodiscard]] double operator[](std::size_t i) const noexcept { return data_[i]; }

    [[nodiscard]] std::span<double> row(int y) noexcept {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }
    [[nodiscard]] std::span<const double> row(int y) const noexcept {
        return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
    }

    [[nodiscard]] std::span<double> data() noexcept { return data_; }
    [[nodiscard]] std::span<const double> data() const noexcept { return data_; }

    [[nodiscard]] bool same_size(const GrayMap& o) const noexcept {
        return width_ == o.width_ && height_ == o.height_;
    }

    [[nodiscard]] bool is_unit_range() const noexcept {
        return std::all_of(data_.begin(), data_.end(), [](double v) { return v >= 0.0 && v <= 1.0; });
    }

    friend bool operator==(const GrayMap&, const GrayMap&) = default;

private:
    int width_ = 0;
    int height_ = 0;
    std::vector<double> data_;
};

/// Planar RGB image with samples in [0,1].
struct RgbImage {
    GrayMap r, g, b;

    RgbImage() = default;
    RgbImage(int width, int height, double fill = 0.0)
        : r(width, height, fill), g(width, height, fill), b(width, height, fill) {}
    RgbImage(int width, int height, double red, double green, double blue)
        : r(width, height, red), g(width, height, green), b(width, height, blue) {}
    RgbImage(GrayMap red, GrayMap green, GrayMap blue)
        : r(std::move(red)), g(std::move(green)), b(std::move(blue)) {
        if (!r.same_size(g) || !r.same_size(b)) {
            throw DimensionError("RgbImage: channel planes differ in size");
        }
    }

    [[nodiscard]] int width() const noexcept { return r.width(); }
    [[nodiscard]] int height() const noexcept { return r.height(); }
    [[nodiscard]] std::size_t pixel_count() const noexcept { return r.size(); }
    [[nodiscard]] bool empty() const noexcept { return r.empty(); }

    [[nodiscard]] GrayMap& channel(int c) noexcept { return c == 0 ? r : (c == 1 ? g : b); }
    [[nodiscard]] const GrayMap& channel(int c) const noexcept { return c == 0 ? r : (c == 1 ? g : b); }

    [[nodiscard]] bool is_unit_range() const noexcept {
        return r.is_unit_range() && g.is_unit_range() && b.is_unit_range();
    }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Hue (fraction of a turn, [0,1)), saturation and value planes.
struct HsvImage {
    GrayMap h, s, v;

    HsvImage() = default;
    HsvImage(int width, int height) : h(width, height), s(width, height), v(width, height) {}

    [[nodiscard]] int width() const noexcept { return h.width(); }
    [[nodiscard]] int height() const noexcept { return h.height(); }
    [[nodiscard]] std::size_t pixel_count() const noexcept { return h.size(); }
};

inline void require_same_size(const GrayMap& a, const GrayMap& b, const char* what) {
    if (!a.same_size(b)) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.width()) + "x" +
                             std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
                             std::to_string(b.height()) + ")");
    }
}

inline void require_same_size(const RgbImage& a, const GrayMap& b, const char* what) {
    require_same_size(a.r, b, what);
}

inline void require_same_size(const RgbImage& a, const RgbImage& b, const char* what) {
    require_same_size(a.r, b.r, what);
}

/// Elementwise map of one plane.
template <typename F>
[[nodiscard]] GrayMap map_pixels(const GrayMap& in, F&& f) {
    GrayMap out(in.width(), in.height());
    for (std::size_t i = 0; i < in.size(); ++i) out[i] = f(in[i]);
    return out;
}

/// Elementwise map over every channel of an RGB image.
template <typename F>
[[nodiscard]] RgbImage map_channels(const RgbImage& in, F&& f) {
    return RgbImage(map_pixels(in.r, f), map_pixels(in.g, f), map_pixels(in.b, f));
}

[[nodiscard]] inline double clamp01(double v) noexcept { return std::clamp(v, 0.0, 1.0); }

[[nodiscard]] inline GrayMap clamp01(const GrayMap& m) {
    return map_pixels(m, [](double v) { return clamp01(v); });
}

[[nodiscard]] inline RgbImage clamp01(const RgbImage& img) {
    return map_channels(img, [](double v) { return clamp01(v); });
}

}  // namespace rsvt
