#include <gtest/gtest.h>

#include "rsvt/image.hpp"

using namespace rsvt;

TEST(GrayMap, RejectsZeroSize) {
    EXPECT_THROW(GrayMap(0, 4), std::invalid_argument);
    EXPECT_THROW(GrayMap(4, 0), std::invalid_argument);
}

TEST(GrayMap, RowMajorIndexing) {
    GrayMap m(3, 2);
    m(2, 1) = 0.5;
    EXPECT_EQ(m[5], 0.5);
    EXPECT_EQ(m.row(1)[2], 0.5);
    EXPECT_EQ(m.size(), 6u);
}

TEST(GrayMap, UnitRangeCheck) {
    GrayMap m(2, 2, 0.5);
    EXPECT_TRUE(m.is_unit_range());
    m[3] = 1.01;
    EXPECT_FALSE(m.is_unit_range());
}

TEST(RgbImage, ChannelsMustAgree) {
    EXPECT_THROW(RgbImage(GrayMap(2, 2), GrayMap(2, 2), GrayMap(3, 2)), DimensionError);
}

TEST(RgbImage, ClampMapsIntoUnitRange) {
    RgbImage img(2, 1, 1.2, -0.1, 0.5);
    const RgbImage c = clamp01(img);
    EXPECT_EQ(c.r[0], 1.0);
    EXPECT_EQ(c.g[0], 0.0);
    EXPECT_EQ(c.b[0], 0.5);
}

TEST(RequireSameSize, ReportsBothShapes) {
    try {
        require_same_size(GrayMap(2, 3), GrayMap(3, 2), "op");
        FAIL();
    } catch (const DimensionError& e) {
        EXPECT_NE(std::string(e.what()).find("2x3 vs 3x2"), std::string::npos);
    }
}
