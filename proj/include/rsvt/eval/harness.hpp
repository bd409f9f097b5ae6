#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <map>
#include <mutex>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "rsvt/atmos.hpp"
#include "rsvt/eval/metrics.hpp"
#include "rsvt/eval/stats.hpp"
#include "rsvt/io.hpp"
#include "rsvt/pipeline.hpp"

namespace rsvt::eval {

/// Runs fn(i) for i in [0,n) on up to `jobs` threads. The first exception is rethrown.
template <typename F>
void parallel_for(std::size_t n, unsigned jobs, F&& fn) {
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t) {
        workers.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard lock(error_mutex);
                    if (!error) error = std::current_exception();
                }
            }
        });
    }
    for (auto& w : workers) w.join();
    if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Dark-channel baseline

/// Classic airlight: brightest input pixel among the top 0.1% of the 15x15 dark channel.
[[nodiscard]] inline Airlight dark_channel_airlight(const RgbImage& img, int radius = 7) {
    const GrayMap dark = erode(min_channel(img), StructuringElement::square(radius));
    std::vector<std::size_t> idx(dark.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    const auto count = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(kAirlightTopFraction * static_cast<double>(idx.size()))));
    std::nth_element(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(count - 1), idx.end(),
                     [&](std::size_t a, std::size_t b) { return dark[a] != dark[b] ? dark[a] > dark[b] : a < b; });
    std::size_t best = idx[0];
    for (std::size_t k = 1; k < count; ++k) {
        const std::size_t i = idx[k];
        const double li = luma(pixel(img, i));
        const double lb = luma(pixel(img, best));
        if (li > lb || (li == lb && i < best)) best = i;
    }
    return Airlight::from_rgb(pixel(img, best));
}

/// Plain dark-channel-prior restoration with the same transmission settings as the full pipeline.
[[nodiscard]] inline RgbImage dcp_baseline(const RgbImage& img, const DehazeParams& params = {}) {
    Airlight a = dark_channel_airlight(img, params.fg_window);
    a = Airlight::from_rgb({std::max(a.rgb.r, 1e-6), std::max(a.rgb.g, 1e-6), std::max(a.rgb.b, 1e-6)});
    const GrayMap gray = rgb_to_gray(img);
    const TransmissionMap t = estimate_transmission(img, a, gray, params.transmission, params.fg_window);
    return dcp_recover(img, t, a, params.t0);
}

// ---------------------------------------------------------------------------
// Dataset layout

enum class Naming {
    Flat,   ///< hazy/<id>.<ext> pairs with clean/<id>.<ext>
    Reside  ///< hazy/<id>_<beta...>.<ext> pairs with clean/<id>.<ext>
};

struct PairPaths {
    std::string id;
    std::filesystem::path hazy;
    std::filesystem::path clean;
};

struct DatasetListing {
    std::vector<PairPaths> pairs;
    std::vector<std::filesystem::path> unpaired;
};

[[nodiscard]] inline bool is_image_file(const std::filesystem::path& p) {
    return std::filesystem::is_regular_file(p) && rsvt::detail::is_supported_extension(rsvt::detail::lower_extension(p));
}

/// Pairs <dir>/hazy with <dir>/clean by id. Missing subdirectories give an empty listing.
[[nodiscard]] inline DatasetListing list_pairs(const std::filesystem::path& dir, Naming naming = Naming::Flat) {
    namespace fs = std::filesystem;
    DatasetListing out;
    const fs::path hazy_dir = dir / "hazy";
    const fs::path clean_dir = dir / "clean";
    if (!fs::is_directory(hazy_dir)) return out;

    std::map<std::string, fs::path> clean_by_id;
    if (fs::is_directory(clean_dir)) {
        for (const auto& e : fs::directory_iterator(clean_dir)) {
            if (is_image_file(e.path())) clean_by_id.emplace(e.path().stem().string(), e.path());
        }
    }
    std::vector<fs::path> hazy_files;
    for (const auto& e : fs::directory_iterator(hazy_dir)) {
        if (is_image_file(e.path())) hazy_files.push_back(e.path());
    }
    std::sort(hazy_files.begin(), hazy_files.end());

    for (const auto& h : hazy_files) {
        std::string stem = h.stem().string();
        std::string id = stem;
        if (naming == Naming::Reside) {
            const auto us = stem.find('_');
            if (us != std::string::npos) id = stem.substr(0, us);
        }
        auto it = clean_by_id.find(id);
        if (it == clean_by_id.end()) {
            out.unpaired.push_back(h);
            continue;
        }
        out.pairs.push_back({stem, h, it->second});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Benchmark

struct MetricRow {
    std::string id;
    double psnr = 0.0;
    double ssim = 0.0;
};

struct MetricReport {
    double r_correlation = 0.0;
    std::vector<MetricRow> rows;

    [[nodiscard]] double mean_psnr() const {
        double s = 0.0;
        for (const auto& r : rows) s += r.psnr;
        return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
    }
    [[nodiscard]] double mean_ssim() const {
        double s = 0.0;
        for (const auto& r : rows) s += r.ssim;
        return rows.empty() ? 0.0 : s / static_cast<double>(rows.size());
    }
};

[[nodiscard]] inline MetricRow score(const std::string& id, const RgbImage& restored, const RgbImage& clean) {
    return {id, psnr(restored, clean), ssim(restored, clean)};
}

/// Dehazes every pair once per R in the sweep. Rows keep the input order regardless of `jobs`.
[[nodiscard]] inline std::vector<MetricReport> run_benchmark(const std::vector<HazeCleanPair>& pairs,
                                                             const DehazeParams& params,
                                                             const std::vector<double>& sweep, unsigned jobs = 1) {
    std::vector<MetricReport> reports;
    for (double r : sweep) {
        DehazeParams p = params;
        p.rsvt.r_correlation = r;
        p.validate();
        MetricReport rep;
        rep.r_correlation = r;
        rep.rows.resize(pairs.size());
        parallel_for(pairs.size(), jobs, [&](std::size_t i) {
            rep.rows[i] = score(pairs[i].id, dehaze(pairs[i].hazy, p).restored, pairs[i].clean);
        });
        reports.push_back(std::move(rep));
    }
    return reports;
}

[[nodiscard]] inline std::vector<HazeCleanPair> load_pairs(const std::vector<PairPaths>& paths, unsigned jobs = 1) {
    std::vector<HazeCleanPair> out(paths.size());
    parallel_for(paths.size(), jobs, [&](std::size_t i) {
        out[i] = {paths[i].id, load_image(paths[i].hazy), load_image(paths[i].clean)};
    });
    return out;
}

/// CSV `id,R,psnr,ssim`, one aggregate row per R with id "mean".
inline void write_report_csv(std::ostream& os, const std::vector<MetricReport>& reports) {
    os << "id,R,psnr,ssim\n";
    for (const auto& rep : reports) {
        for (const auto& row : rep.rows) os << row.id << ',' << rep.r_correlation << ',' << row.psnr << ',' << row.ssim << '\n';
        if (!rep.rows.empty()) {
            os << "mean," << rep.r_correlation << ',' << rep.mean_psnr() << ',' << rep.mean_ssim() << '\n';
        }
    }
}

// ---------------------------------------------------------------------------
// Prior statistics

struct PriorStatsOptions {
    double bright_threshold = kBrightThreshold;
    std::size_t max_lines_per_pair = 300;  // intersections are quadratic in the line count
    SvLineFilter filter;
};

struct PriorStats {
    HueStats hue;
    Histogram intersection_distance;
    std::vector<double> distances;
    std::optional<RatioStats> ratio;
    std::vector<Airlight> airlights;
    std::vector<std::string> warnings;
};

/**
 * @brief Hue, intersection-distance and R statistics over a corpus.
 *
 * The airlight and t_b of every pair come from the hazy image through the
 * pipeline's own mask, airlight estimator and 3x3 transmission, unless
 * `known_airlight` is supplied.
 */
[[nodiscard]] inline PriorStats prior_stats(const std::vector<HazeCleanPair>& pairs, const DehazeParams& params,
                                            const PriorStatsOptions& opt = {},
                                            std::optional<Airlight> known_airlight = std::nullopt) {
    PriorStats out;
    std::vector<PixelMask> masks;
    std::vector<GrayMap> tbs;
    std::vector<double> distances;
    for (const auto& p : pairs) {
        require_same_size(p.hazy, p.clean, "prior_stats");
        masks.push_back(bright_mask(p.hazy, opt.bright_threshold));
        const GrayMap gray = rgb_to_gray(p.hazy);
        Airlight a = known_airlight ? *known_airlight : estimate_airlight(p.hazy, compute_mask(p.hazy, params.softseg).mask);
        const Airlight safe = Airlight::from_rgb({std::max(a.rgb.r, 1e-6), std::max(a.rgb.g, 1e-6), std::max(a.rgb.b, 1e-6)});
        tbs.push_back(estimate_transmission(p.hazy, safe, gray, params.transmission, params.bg_window).t);
        out.airlights.push_back(a);

        const auto lines = subsample_valid(sv_lines(p, masks.back(), opt.filter), opt.max_lines_per_pair);
        try {
            const auto inter = sv_intersections(lines);
            distances.push_back(intersection_airlight_distance(inter.centroid, a));
        } catch (const NoIntersection& e) {
            out.warnings.push_back(p.id + ": " + e.what());
        }
    }
    out.hue = hue_difference_stats(pairs, masks);
    const auto bins = static_cast<std::size_t>(std::ceil(std::sqrt(2.0) / kBinWidth));
    out.intersection_distance = Histogram::build(distances, kBinWidth, bins);
    out.distances = std::move(distances);
    try {
        out.ratio = r_ratio_stats(pairs, masks, out.airlights, tbs, params.rsvt.min_tb, opt.filter);
    } catch (const NoValidLines& e) {
        out.warnings.emplace_back(e.what());
    }
    return out;
}

}  // namespace rsvt::eval
