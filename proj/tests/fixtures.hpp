#pragma once

// Synthetic outdoor scenes and random images shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "rsvt/atmos.hpp"
#include "rsvt/eval/stats.hpp"
#include "rsvt/eval/synth.hpp"
#include "rsvt/image.hpp"

namespace rsvt::test {

[[nodiscard]] inline GrayMap random_map(int w, int h, std::mt19937& rng, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> d(lo, hi);
    GrayMap m(w, h);
    for (auto& v : m.data()) v = d(rng);
    return m;
}

[[nodiscard]] inline RgbImage random_image(int w, int h, std::mt19937& rng, double lo = 0.0, double hi = 1.0) {
    return {random_map(w, h, rng, lo, hi), random_map(w, h, rng, lo, hi), random_map(w, h, rng, lo, hi)};
}

/// Clean scene, the transmission used to haze it, and the airlight level.
struct Scene {
    RgbImage clean;
    GrayMap t;
    double airlight = 0.9;
    int horizon = 0;
};

/**
 * Outdoor-like scene: pale sky above the horizon, muted textured ground with
 * shadowed blocks below. The sky is dimmer than the airlight. Haze hugs the
 * ground: t is 0.3 just below the horizon and rises to 0.7 at the bottom row;
 * the sky sees t from 0.7 (top) to 0.5 (horizon).
 */
[[nodiscard]] inline Scene make_scene(unsigned seed, int w = 120, int h = 90) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 0.05);
    Scene s;
    s.clean = RgbImage(w, h);
    s.t = GrayMap(w, h);
    s.horizon = static_cast<int>(h * (0.35 + 0.15 * u(rng)));

    const double sr = 0.55 + 0.1 * u(rng), sg = 0.7 + 0.05 * u(rng), sb = 0.82 + 0.03 * u(rng);
    for (int y = 0; y < s.horizon; ++y) {
        const double f = static_cast<double>(y) / s.horizon;
        for (int x = 0; x < w; ++x) {
            s.clean.r(x, y) = clamp01(sr + 0.08 * f);
            s.clean.g(x, y) = clamp01(sg + 0.05 * f);
            s.clean.b(x, y) = clamp01(sb + 0.02 * f);
        }
    }

    const double br = 0.2 + 0.2 * u(rng), bg = 0.25 + 0.2 * u(rng), bb = 0.1 + 0.1 * u(rng);
    for (int y = s.horizon; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            s.clean.r(x, y) = clamp01(br + noise(rng));
            s.clean.g(x, y) = clamp01(bg + noise(rng));
            s.clean.b(x, y) = clamp01(bb + noise(rng));
        }
    }
    const int blocks = 6 + static_cast<int>(u(rng) * 6);
    for (int k = 0; k < blocks; ++k) {
        const int bw = 6 + static_cast<int>(u(rng) * w / 5);
        const int bh = 6 + static_cast<int>(u(rng) * h / 4);
        const int x0 = static_cast<int>(u(rng) * (w - bw));
        const int y0 = s.horizon - bh / 2 + static_cast<int>(u(rng) * (h - s.horizon));
        const double cr = 0.6 * u(rng), cg = 0.6 * u(rng), cb = 0.6 * u(rng);
        for (int y = std::max(0, y0); y < std::min(h, y0 + bh); ++y) {
            for (int x = x0; x < std::min(w, x0 + bw); ++x) {
                const double shade = ((x - x0) / 3 + (y - y0) / 3) % 4 == 0 ? 0.15 : 1.0;
                s.clean.r(x, y) = clamp01(shade * cr + 0.5 * noise(rng));
                s.clean.g(x, y) = clamp01(shade * cg + 0.5 * noise(rng));
                s.clean.b(x, y) = clamp01(shade * cb + 0.5 * noise(rng));
            }
        }
    }

    for (int y = 0; y < h; ++y) {
        double t;
        if (y < s.horizon) {
            t = 0.7 - 0.2 * static_cast<double>(y) / s.horizon;
        } else {
            t = 0.3 + 0.4 * static_cast<double>(y - s.horizon) / std::max(1, h - 1 - s.horizon);
        }
        for (int x = 0; x < w; ++x) s.t(x, y) = t;
    }
    s.airlight = 0.88 + 0.07 * u(rng);
    return s;
}

/// Colourful 6x6 tiles, each with one channel near zero, so every patch has a
/// dark pixel. make_scene's ground does not have that property.
[[nodiscard]] inline RgbImage make_tiles(unsigned seed, int w = 64, int h = 48) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    RgbImage img(w, h);
    for (int by = 0; by < h; by += 6)
        for (int bx = 0; bx < w; bx += 6) {
            double c[3] = {0.2 + 0.6 * u(rng), 0.2 + 0.6 * u(rng), 0.2 + 0.6 * u(rng)};
            c[static_cast<int>(u(rng) * 3) % 3] = 0.02 * u(rng);
            for (int y = by; y < std::min(h, by + 6); ++y)
                for (int x = bx; x < std::min(w, bx + 6); ++x) {
                    img.r(x, y) = c[0];
                    img.g(x, y) = c[1];
                    img.b(x, y) = c[2];
                }
        }
    return img;
}

/// Hazy/clean pairs with an achromatic airlight; hazy images are quantized to 8 bits.
[[nodiscard]] inline std::vector<eval::HazeCleanPair> make_corpus(int count, unsigned seed = 200, int w = 120,
                                                                  int h = 90) {
    std::vector<eval::HazeCleanPair> out;
    for (int i = 0; i < count; ++i) {
        const Scene s = make_scene(seed + static_cast<unsigned>(i), w, h);
        RgbImage hazy = eval::synthesize_haze(s.clean, s.t, Airlight::gray(s.airlight));
        hazy = map_channels(hazy, [](double v) { return std::round(v * 255.0) / 255.0; });
        out.push_back({"pair" + std::to_string(i), std::move(hazy), s.clean});
    }
    return out;
}

}  // namespace rsvt::test
