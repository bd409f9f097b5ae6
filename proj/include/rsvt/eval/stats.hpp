#pragma once

// Statistics over hazy/clean pairs that back the saturation-value prior:
// hue stability in bright regions, S-V line intersections, and R = r / t_b.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "rsvt/atmos.hpp"
#include "rsvt/color.hpp"
#include "rsvt/image.hpp"

namespace rsvt::eval {

using PixelMask = std::vector<std::uint8_t>;

/// Normalized histogram; the last bin may extend to +inf.
struct Histogram {
    std::vector<double> edges;  // bins + 1 entries
    std::vector<double> mass;
    std::size_t samples = 0;

    [[nodiscard]] bool empty() const noexcept { return samples == 0; }
    [[nodiscard]] std::size_t bins() const noexcept { return mass.size(); }

    [[nodiscard]] double total() const noexcept {
        double s = 0.0;
        for (double m : mass) s += m;
        return s;
    }

    /// Uniform bins of `width` from 0; `overflow` appends a [last, inf) bin.
    [[nodiscard]] static Histogram build(const std::vector<double>& values, double width, std::size_t bins,
                                         bool overflow = false) {
        Histogram h;
        for (std::size_t i = 0; i <= bins; ++i) h.edges.push_back(width * static_cast<double>(i));
        if (overflow) h.edges.push_back(std::numeric_limits<double>::infinity());
        h.mass.assign(h.edges.size() - 1, 0.0);
        h.samples = values.size();
        if (values.empty()) return h;
        for (double v : values) {
            auto idx = static_cast<std::size_t>(std::max(0.0, std::floor(v / width)));
            idx = std::min(idx, h.mass.size() - 1);
            h.mass[idx] += 1.0;
        }
        for (auto& m : h.mass) m /= static_cast<double>(values.size());
        return h;
    }
};

inline void write_histogram_csv(std::ostream& os, const Histogram& h) {
    os << "bin_low,bin_high,mass\n";
    for (std::size_t i = 0; i < h.bins(); ++i) {
        os << h.edges[i] << ',';
        if (std::isinf(h.edges[i + 1])) {
            os << "inf";
        } else {
            os << h.edges[i + 1];
        }
        os << ',' << h.mass[i] << '\n';
    }
}

/// One distance level on the 8-bit scale.
inline constexpr double kLevel = 1.0 / 255.0;
inline constexpr double kBinWidth = 10.0 * kLevel;
inline constexpr double kBrightThreshold = 0.7;
inline constexpr double kTruncationMargin = 2.0 * kLevel;
inline constexpr double kShortLine = 5.0 * kLevel;

/// Pixels whose gray luma exceeds the threshold.
[[nodiscard]] inline PixelMask bright_mask(const RgbImage& img, double threshold = kBrightThreshold) {
    PixelMask out(img.pixel_count(), 0);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = luma(pixel(img, i)) > threshold ? 1 : 0;
    return out;
}

struct HazeCleanPair {
    std::string id;
    RgbImage hazy;
    RgbImage clean;
};

struct HueStats {
    Histogram histogram;
    double fraction_below = 0.0;  // share of distances under one bin width
    std::vector<double> distances;
};

/// Circular hue distance between hazy and clean over each pair's mask.
[[nodiscard]] inline HueStats hue_difference_stats(const std::vector<HazeCleanPair>& pairs,
                                                   const std::vector<PixelMask>& masks) {
    if (masks.size() != pairs.size()) throw std::invalid_argument("hue_difference_stats: one mask per pair");
    HueStats out;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& p = pairs[k];
        require_same_size(p.hazy, p.clean, "hue_difference_stats");
        if (masks[k].size() != p.hazy.pixel_count()) throw DimensionError("hue_difference_stats: mask size");
        for (std::size_t i = 0; i < masks[k].size(); ++i) {
            if (!masks[k][i]) continue;
            out.distances.push_back(hue_distance(to_hsv(pixel(p.hazy, i)).h, to_hsv(pixel(p.clean, i)).h));
        }
    }
    const auto bins = static_cast<std::size_t>(std::ceil(0.5 / kBinWidth));
    out.histogram = Histogram::build(out.distances, kBinWidth, bins);
    if (!out.distances.empty()) {
        const auto below = std::count_if(out.distances.begin(), out.distances.end(),
                                         [](double d) { return d < kBinWidth; });
        out.fraction_below = static_cast<double>(below) / static_cast<double>(out.distances.size());
    }
    return out;
}

struct SvPoint {
    double s = 0.0;
    double v = 0.0;
};

/// Segment from a hazy point to its clean counterpart in the S-V plane.
struct SvLine {
    SvPoint hazy;
    SvPoint clean;
    bool valid = true;

    [[nodiscard]] double length() const noexcept { return std::hypot(clean.s - hazy.s, clean.v - hazy.v); }
};

struct SvLineFilter {
    double truncation_margin = kTruncationMargin;
    double min_length = kShortLine;
};

/// Marks lines touching the [0,1] bounds within the margin, or shorter than the minimum, as invalid.
[[nodiscard]] inline SvLine make_sv_line(const Hsv& hazy, const Hsv& clean, const SvLineFilter& f = {}) {
    SvLine line{{hazy.s, hazy.v}, {clean.s, clean.v}, true};
    auto near_bound = [&](double c) { return c < f.truncation_margin || c > 1.0 - f.truncation_margin; };
    if (near_bound(hazy.s) || near_bound(hazy.v) || near_bound(clean.s) || near_bound(clean.v)) line.valid = false;
    if (line.length() < f.min_length) line.valid = false;
    return line;
}

[[nodiscard]] inline std::vector<SvLine> sv_lines(const HazeCleanPair& pair, const PixelMask& mask,
                                                  const SvLineFilter& f = {}) {
    require_same_size(pair.hazy, pair.clean, "sv_lines");
    std::vector<SvLine> out;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (!mask[i]) continue;
        out.push_back(make_sv_line(to_hsv(pixel(pair.hazy, i)), to_hsv(pixel(pair.clean, i)), f));
    }
    return out;
}

struct Intersections {
    SvPoint centroid;
    std::vector<SvPoint> points;
    std::size_t skipped_parallel = 0;
};

class NoIntersection : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kParallelDeterminant = 1e-9;

/**
 * @brief Intersections of every unordered pair of valid lines and their centroid.
 *
 * Lines are extended to infinity. Pairs whose 2x2 determinant is below
 * 1e-9 in magnitude count as parallel and are skipped.
 */
[[nodiscard]] inline Intersections sv_intersections(const std::vector<SvLine>& lines) {
    std::vector<const SvLine*> valid;
    for (const auto& l : lines) {
        if (l.valid) valid.push_back(&l);
    }
    if (valid.size() < 2) throw NoIntersection("sv_intersections: need at least two valid lines");

    Intersections out;
    double sum_s = 0.0, sum_v = 0.0;
    for (std::size_t i = 0; i < valid.size(); ++i) {
        const SvLine& a = *valid[i];
        const double d1s = a.clean.s - a.hazy.s, d1v = a.clean.v - a.hazy.v;
        for (std::size_t j = i + 1; j < valid.size(); ++j) {
            const SvLine& b = *valid[j];
            const double d2s = b.clean.s - b.hazy.s, d2v = b.clean.v - b.hazy.v;
            // a.hazy + u*d1 = b.hazy + w*d2
            const double det = d1s * (-d2v) - (-d2s) * d1v;
            if (std::abs(det) < kParallelDeterminant) {
                ++out.skipped_parallel;
                continue;
            }
            const double rs = b.hazy.s - a.hazy.s, rv = b.hazy.v - a.hazy.v;
            const double u = (rs * (-d2v) - (-d2s) * rv) / det;
            const SvPoint p{a.hazy.s + u * d1s, a.hazy.v + u * d1v};
            out.points.push_back(p);
            sum_s += p.s;
            sum_v += p.v;
        }
    }
    if (out.points.empty()) throw NoIntersection("sv_intersections: all line pairs are parallel");
    const auto n = static_cast<double>(out.points.size());
    out.centroid = {sum_s / n, sum_v / n};
    return out;
}

[[nodiscard]] inline double intersection_airlight_distance(const SvPoint& e, const Airlight& a) noexcept {
    return std::hypot(e.s - a.s_a, e.v - a.v_a);
}

/// Evenly strided subset of the valid lines, at most `cap` of them.
[[nodiscard]] inline std::vector<SvLine> subsample_valid(const std::vector<SvLine>& lines, std::size_t cap) {
    std::vector<SvLine> valid;
    for (const auto& l : lines) {
        if (l.valid) valid.push_back(l);
    }
    if (valid.size() <= cap || cap == 0) return valid;
    std::vector<SvLine> out;
    out.reserve(cap);
    for (std::size_t k = 0; k < cap; ++k) out.push_back(valid[k * valid.size() / cap]);
    return out;
}

struct RatioSample {
    double r = 0.0;  // ||h - A|| / ||c - A||
    double tb = 0.0;
    double R = 0.0;
};

struct RatioStats {
    Histogram histogram;
    std::vector<RatioSample> samples;
    std::size_t dropped = 0;  // invalid lines and lines whose clean point sits on A
    double fraction_in_2_5 = 0.0;
    double fraction_at_most_5 = 0.0;
};

class NoValidLines : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr double kRatioBinWidth = 0.5;
inline constexpr std::size_t kRatioBins = 20;  // [0,10) plus an overflow bin

/**
 * @brief Histogram of R = r / t_b over the bright-region S-V lines of every pair.
 *
 * The airlight stands in for the line intersection. t_b is clamped to
 * [min_tb, 1], the same clamp the translation applies.
 */
[[nodiscard]] inline RatioStats r_ratio_stats(const std::vector<HazeCleanPair>& pairs,
                                              const std::vector<PixelMask>& masks,
                                              const std::vector<Airlight>& airlights,
                                              const std::vector<GrayMap>& tb_maps, double min_tb = 0.2,
                                              const SvLineFilter& f = {}) {
    if (masks.size() != pairs.size() || airlights.size() != pairs.size() || tb_maps.size() != pairs.size()) {
        throw std::invalid_argument("r_ratio_stats: one mask, airlight and t_b map per pair");
    }
    RatioStats out;
    std::vector<double> values;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& p = pairs[k];
        require_same_size(p.hazy, tb_maps[k], "r_ratio_stats");
        const Airlight& a = airlights[k];
        for (std::size_t i = 0; i < masks[k].size(); ++i) {
            if (!masks[k][i]) continue;
            const Hsv h = to_hsv(pixel(p.hazy, i));
            const Hsv c = to_hsv(pixel(p.clean, i));
            const SvLine line = make_sv_line(h, c, f);
            const double clean_dist = std::hypot(c.s - a.s_a, c.v - a.v_a);
            if (!line.valid || clean_dist < 1e-12) {
                ++out.dropped;
                continue;
            }
            RatioSample s;
            s.r = std::hypot(h.s - a.s_a, h.v - a.v_a) / clean_dist;
            s.tb = std::clamp(tb_maps[k][i], min_tb, 1.0);
            s.R = s.r / s.tb;
            out.samples.push_back(s);
            values.push_back(s.R);
        }
    }
    if (values.empty()) throw NoValidLines("r_ratio_stats: no S-V line survived the filters");
    out.histogram = Histogram::build(values, kRatioBinWidth, kRatioBins, true);
    const auto n = static_cast<double>(values.size());
    out.fraction_in_2_5 =
        static_cast<double>(std::count_if(values.begin(), values.end(), [](double v) { return v >= 2.0 && v <= 5.0; })) / n;
    out.fraction_at_most_5 =
        static_cast<double>(std::count_if(values.begin(), values.end(), [](double v) { return v <= 5.0; })) / n;
    return out;
}

}  // namespace rsvt::eval
