#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "rsvt/eval/harness.hpp"

using namespace rsvt;
using namespace rsvt::eval;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path d = fs::temp_directory_path() / "rsvt_test_harness" / name;
    fs::remove_all(d);
    fs::create_directories(d / "hazy");
    fs::create_directories(d / "clean");
    return d;
}

}  // namespace

TEST(ParallelFor, VisitsEveryIndexOnce) {
    std::vector<std::atomic<int>> hits(100);
    parallel_for(100, 4, [&](std::size_t i) { ++hits[i]; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
    parallel_for(0, 4, [&](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsFromWorker) {
    EXPECT_THROW(parallel_for(10, 3, [](std::size_t i) { if (i == 7) throw std::runtime_error("x"); }),
                 std::runtime_error);
}

TEST(ListPairs, FlatNaming) {
    const fs::path d = fresh_dir("flat");
    const RgbImage img(4, 4, 0.5);
    save_image(img, d / "hazy" / "a.png");
    save_image(img, d / "clean" / "a.png");
    save_image(img, d / "hazy" / "b.png");
    save_image(img, d / "hazy" / "c_0.8.png");
    const DatasetListing l = list_pairs(d);
    ASSERT_EQ(l.pairs.size(), 1u);
    EXPECT_EQ(l.pairs[0].id, "a");
    EXPECT_EQ(l.unpaired.size(), 2u);
}

TEST(ListPairs, ResideNaming) {
    const fs::path d = fresh_dir("reside");
    const RgbImage img(4, 4, 0.5);
    save_image(img, d / "clean" / "0001.png");
    save_image(img, d / "hazy" / "0001_0.8_0.2.png");
    save_image(img, d / "hazy" / "0001_1_0.16.png");
    const DatasetListing l = list_pairs(d, Naming::Reside);
    ASSERT_EQ(l.pairs.size(), 2u);
    EXPECT_EQ(l.pairs[0].clean, d / "clean" / "0001.png");
    EXPECT_TRUE(l.unpaired.empty());
}

TEST(ListPairs, MissingDirectories) {
    const DatasetListing l = list_pairs(fs::temp_directory_path() / "rsvt_no_such_dataset");
    EXPECT_TRUE(l.pairs.empty());
}

TEST(Benchmark, RowsPerSweepAndCsv) {
    const auto corpus = test::make_corpus(2, 300, 48, 36);
    const auto reports = run_benchmark(corpus, DehazeParams{}, {1, 3});
    ASSERT_EQ(reports.size(), 2u);
    EXPECT_EQ(reports[0].rows.size(), 2u);
    EXPECT_EQ(reports[1].r_correlation, 3.0);
    std::ostringstream os;
    write_report_csv(os, reports);
    const std::string csv = os.str();
    EXPECT_EQ(csv.rfind("id,R,psnr,ssim\n", 0), 0u);
    EXPECT_NE(csv.find("\nmean,3,"), std::string::npos);
}

TEST(Benchmark, SinglePairAndEmpty) {
    const auto one = run_benchmark(test::make_corpus(1, 301, 40, 30), DehazeParams{}, {3});
    EXPECT_EQ(one[0].rows.size(), 1u);
    const auto none = run_benchmark({}, DehazeParams{}, {3});
    EXPECT_TRUE(none[0].rows.empty());
    std::ostringstream os;
    write_report_csv(os, none);
    EXPECT_EQ(os.str(), "id,R,psnr,ssim\n");
}

TEST(Benchmark, IndependentOfJobs) {
    const auto corpus = test::make_corpus(4, 302, 40, 30);
    const auto a = run_benchmark(corpus, DehazeParams{}, {3}, 1);
    const auto b = run_benchmark(corpus, DehazeParams{}, {3}, 3);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(a[0].rows[i].id, b[0].rows[i].id);
        EXPECT_EQ(a[0].rows[i].psnr, b[0].rows[i].psnr);
        EXPECT_EQ(a[0].rows[i].ssim, b[0].rows[i].ssim);
    }
}

TEST(Baseline, DarkChannelAirlightPicksHaziestRegion) {
    RgbImage img(30, 30, 0.2);
    for (int y = 0; y < 10; ++y)
        for (int x = 0; x < 30; ++x) img.r(x, y) = img.g(x, y) = img.b(x, y) = 0.85;
    img.r(15, 25) = img.g(15, 25) = img.b(15, 25) = 1.0;  // isolated glint, dark neighbourhood
    const Airlight a = dark_channel_airlight(img);
    EXPECT_DOUBLE_EQ(a.rgb.r, 0.85);
}

TEST(Baseline, ImprovesOnHaze) {
    const test::Scene s = test::make_scene(303);
    const RgbImage hazy = synthesize_haze(s.clean, 0.5, Airlight::gray(0.9));
    EXPECT_GT(psnr(dcp_baseline(hazy), s.clean), psnr(hazy, s.clean));
}

TEST(PriorStats, AchromaticCorpus) {
    const auto corpus = test::make_corpus(3, 304);
    const PriorStats st = prior_stats(corpus, DehazeParams{});
    EXPECT_EQ(st.airlights.size(), 3u);
    EXPECT_GE(st.hue.fraction_below, 0.99);
    ASSERT_TRUE(st.ratio.has_value());
    EXPECT_NEAR(st.ratio->histogram.total(), 1.0, 1e-9);
    EXPECT_FALSE(st.intersection_distance.empty());
}

TEST(PriorStats, NoBrightPixelsWarns) {
    const RgbImage dark(20, 20, 0.1);
    const PriorStats st = prior_stats({{"d", dark, dark}}, DehazeParams{});
    EXPECT_FALSE(st.ratio.has_value());
    EXPECT_FALSE(st.warnings.empty());
}
