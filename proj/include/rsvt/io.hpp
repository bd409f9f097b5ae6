#pragma once

// PNG/JPEG codec I/O. Requires linking opencv_core and opencv_imgcodecs.

#include <cctype>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

#include "rsvt/image.hpp"

namespace rsvt {

class ImageIoError : public std::runtime_error {
public:
    enum class Kind { FileNotFound, Unreadable, UnsupportedFormat, EmptyImage, WriteFailed };

    ImageIoError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

namespace detail {

inline std::string lower_extension(const std::filesystem::path& p) {
    std::string ext = p.extension().string();
    for (auto& ch : ext) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    return ext;
}

inline bool is_supported_extension(const std::string& ext) {
    return ext == ".png" || ext == ".jpg" || ext == ".jpeg";
}

}  // namespace detail

/// Loads an 8- or 16-bit PNG or a JPEG. Alpha is discarded; gray files are expanded to RGB.
[[nodiscard]] inline RgbImage load_image(const std::filesystem::path& path) {
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::exists(path, ec)) {
        throw ImageIoError(ImageIoError::Kind::FileNotFound, "file not found: " + path.string());
    }
    if (!detail::is_supported_extension(detail::lower_extension(path))) {
        throw ImageIoError(ImageIoError::Kind::UnsupportedFormat, "unsupported format: " + path.string());
    }
    if (fs::file_size(path, ec) == 0 || ec) {
        throw ImageIoError(ImageIoError::Kind::EmptyImage, "empty file: " + path.string());
    }

    cv::Mat raw = cv::imread(path.string(), cv::IMREAD_UNCHANGED);
    if (raw.empty()) {
        throw ImageIoError(ImageIoError::Kind::Unreadable, "cannot decode image: " + path.string());
    }
    if (raw.cols < 1 || raw.rows < 1) {
        throw ImageIoError(ImageIoError::Kind::EmptyImage, "zero-sized image: " + path.string());
    }

    double scale;
    switch (raw.depth()) {
        case CV_8U: scale = 1.0 / 255.0; break;
        case CV_16U: scale = 1.0 / 65535.0; break;
        default:
            throw ImageIoError(ImageIoError::Kind::UnsupportedFormat, "unsupported bit depth: " + path.string());
    }

    const int channels = raw.channels();
    RgbImage out(raw.cols, raw.rows);
    for (int y = 0; y < raw.rows; ++y) {
        for (int x = 0; x < raw.cols; ++x) {
            double bgr[3];
            for (int c = 0; c < 3; ++c) {
                const int src = channels >= 3 ? c : 0;
                const double v = raw.depth() == CV_8U
                                     ? raw.ptr<std::uint8_t>(y)[x * channels + src]
                                     : raw.ptr<std::uint16_t>(y)[x * channels + src];
                bgr[c] = v * scale;
            }
            out.b(x, y) = bgr[0];
            out.g(x, y) = bgr[1];
            out.r(x, y) = bgr[2];
        }
    }
    return out;
}

[[nodiscard]] inline std::uint8_t quantize8(double v) noexcept {
    return static_cast<std::uint8_t>(std::lround(clamp01(v) * 255.0));
}

/// Writes an 8-bit RGB PNG; samples are clamped to [0,1] and rounded.
inline void save_image(const RgbImage& img, const std::filesystem::path& path) {
    cv::Mat out(img.height(), img.width(), CV_8UC3);
    for (int y = 0; y < img.height(); ++y) {
        auto* row = out.ptr<std::uint8_t>(y);
        for (int x = 0; x < img.width(); ++x) {
            row[3 * x + 0] = quantize8(img.b(x, y));
            row[3 * x + 1] = quantize8(img.g(x, y));
            row[3 * x + 2] = quantize8(img.r(x, y));
        }
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), out);
    } catch (const cv::Exception& e) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed, "cannot write " + path.string() + ": " + e.what());
    }
    if (!ok) throw ImageIoError(ImageIoError::Kind::WriteFailed, "cannot write " + path.string());
}

/// Writes a single plane as an 8-bit grayscale PNG.
inline void save_gray(const GrayMap& map, const std::filesystem::path& path) {
    cv::Mat out(map.height(), map.width(), CV_8UC1);
    for (int y = 0; y < map.height(); ++y) {
        auto* row = out.ptr<std::uint8_t>(y);
        for (int x = 0; x < map.width(); ++x) row[x] = quantize8(map(x, y));
    }
    bool ok = false;
    try {
        ok = cv::imwrite(path.string(), out);
    } catch (const cv::Exception& e) {
        throw ImageIoError(ImageIoError::Kind::WriteFailed, "cannot write " + path.string() + ": " + e.what());
    }
    if (!ok) throw ImageIoError(ImageIoError::Kind::WriteFailed, "cannot write " + path.string());
}

}  // namespace rsvt
