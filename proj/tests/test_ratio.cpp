#include <gtest/gtest.h>

#include "uwvrp/ratio.hpp"

using uwvrp::Ratio;

TEST(Ratio, ParsesFractionsIntegersAndDecimalsExactly) {
  EXPECT_EQ(uwvrp::parse_ratio("3/4"), Ratio(3, 4));
  EXPECT_EQ(uwvrp::parse_ratio("6/8"), Ratio(3, 4));
  EXPECT_EQ(uwvrp::parse_ratio("-1/3"), Ratio(-1, 3));
  EXPECT_EQ(uwvrp::parse_ratio("7"), Ratio(7));
  EXPECT_EQ(uwvrp::parse_ratio("0.1"), Ratio(1, 10));
  EXPECT_EQ(uwvrp::parse_ratio("1.25"), Ratio(5, 4));
  EXPECT_EQ(uwvrp::parse_ratio(".5"), Ratio(1, 2));
  EXPECT_EQ(uwvrp::parse_ratio("2."), Ratio(2));
  EXPECT_EQ(uwvrp::parse_ratio("-0.75"), Ratio(-3, 4));
}

TEST(Ratio, RejectsMalformedLiterals) {
  for (const char* bad : {"", "1/0", "a", "1/-2", "1.2.3", ".", "1e3", "--1", "1/"})
    EXPECT_THROW(uwvrp::parse_ratio(bad), std::invalid_argument) << bad;
}

TEST(Ratio, CanonicalText) {
  EXPECT_EQ(uwvrp::to_string(uwvrp::make_ratio(10, 4)), "5/2");
  EXPECT_EQ(uwvrp::to_string(uwvrp::make_ratio(4, 2)), "2");
  EXPECT_EQ(uwvrp::to_string(Ratio(0)), "0");
  EXPECT_EQ(uwvrp::to_string(uwvrp::make_ratio(-3, 9)), "-1/3");
}

TEST(Ratio, PreviewRoundsHalfToEven) {
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(11, 36)), "0.3056");
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(1, 3)), "0.3333");
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(5, 100000)), "0.0000");
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(15, 100000)), "0.0002");
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(7)), "7.0000");
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(-1, 8), 2), "-0.12");
  EXPECT_EQ(uwvrp::decimal_preview(Ratio(5, 2), 0), "2");
}

TEST(Ratio, FloorAndCeilHandleNegatives) {
  EXPECT_EQ(uwvrp::floor_to_int(Ratio(-1, 2)), -1);
  EXPECT_EQ(uwvrp::ceil_to_int(Ratio(-1, 2)), 0);
  EXPECT_EQ(uwvrp::ceil_to_int(Ratio(3)), 3);
  EXPECT_EQ(uwvrp::floor_to_int(Ratio(7, 2)), 3);
}
