#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "rsvt/color.hpp"

using namespace rsvt;

TEST(Gray, LumaWeights) {
    EXPECT_DOUBLE_EQ(rgb_to_gray(RgbImage(1, 1, 1.0))[0], 1.0);
    EXPECT_DOUBLE_EQ(rgb_to_gray(RgbImage(1, 1, 0.0))[0], 0.0);
    EXPECT_DOUBLE_EQ(rgb_to_gray(RgbImage(1, 1, 1.0, 0.0, 0.0))[0], 0.299);
}

TEST(Gray, BetweenChannelExtremes) {
    std::mt19937 rng(3);
    const RgbImage img = test::random_image(16, 16, rng);
    const GrayMap g = rgb_to_gray(img);
    for (std::size_t i = 0; i < g.size(); ++i) {
        EXPECT_GE(g[i], std::min({img.r[i], img.g[i], img.b[i]}) - 1e-15);
        EXPECT_LE(g[i], std::max({img.r[i], img.g[i], img.b[i]}) + 1e-15);
    }
}

TEST(Hsv, KnownColours) {
    Hsv red = to_hsv({1, 0, 0});
    EXPECT_DOUBLE_EQ(red.h, 0.0);
    EXPECT_DOUBLE_EQ(red.s, 1.0);
    EXPECT_DOUBLE_EQ(red.v, 1.0);

    Hsv grey = to_hsv({0.5, 0.5, 0.5});
    EXPECT_DOUBLE_EQ(grey.h, 0.0);
    EXPECT_DOUBLE_EQ(grey.s, 0.0);
    EXPECT_DOUBLE_EQ(grey.v, 0.5);

    Hsv cyan = to_hsv({0, 1, 1});
    EXPECT_DOUBLE_EQ(cyan.h, 0.5);
    EXPECT_DOUBLE_EQ(cyan.s, 1.0);
    EXPECT_DOUBLE_EQ(cyan.v, 1.0);

    EXPECT_DOUBLE_EQ(to_hsv({0, 0, 0}).s, 0.0);
}

TEST(Hsv, InverseKnownColours) {
    const Rgb g = to_rgb({0.0, 0.0, 0.3});
    EXPECT_EQ(g, (Rgb{0.3, 0.3, 0.3}));
    const Rgb blue = to_rgb({2.0 / 3.0, 1.0, 1.0});
    EXPECT_NEAR(blue.r, 0.0, 1e-12);
    EXPECT_NEAR(blue.g, 0.0, 1e-12);
    EXPECT_NEAR(blue.b, 1.0, 1e-12);
}

TEST(Hsv, RoundTripRgb) {
    std::mt19937 rng(11);
    const RgbImage img = test::random_image(8, 8, rng);
    const RgbImage back = hsv_to_rgb(rgb_to_hsv(img));
    for (int c = 0; c < 3; ++c) {
        for (std::size_t i = 0; i < img.pixel_count(); ++i) EXPECT_NEAR(back.channel(c)[i], img.channel(c)[i], 1e-6);
    }
}

TEST(Hsv, RoundTripHsv) {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int k = 0; k < 500; ++k) {
        const Hsv in{u(rng) * 0.999999, u(rng), u(rng)};
        const Hsv out = to_hsv(to_rgb(in));
        EXPECT_NEAR(out.v, in.v, 1e-6);
        if (in.v > 1e-9) {
            EXPECT_NEAR(out.s, in.s, 1e-6);
        }
        if (in.v > 1e-3 && in.s > 1e-3) {
            EXPECT_NEAR(hue_distance(out.h, in.h), 0.0, 1e-6);
        }
    }
}

TEST(Hsv, RangesOnRandomInput) {
    std::mt19937 rng(5);
    const HsvImage hsv = rgb_to_hsv(test::random_image(20, 20, rng));
    for (std::size_t i = 0; i < hsv.pixel_count(); ++i) {
        EXPECT_GE(hsv.h[i], 0.0);
        EXPECT_LT(hsv.h[i], 1.0);
        EXPECT_GE(hsv.s[i], 0.0);
        EXPECT_LE(hsv.s[i], 1.0);
    }
}

TEST(Hsv, HueDistanceIsCircular) {
    EXPECT_NEAR(hue_distance(0.95, 0.05), 0.1, 1e-12);
    EXPECT_DOUBLE_EQ(hue_distance(0.0, 0.5), 0.5);
}
