#include <gtest/gtest.h>

#include <stdexcept>

#include "learnaug/grid.hpp"

using learnaug::linspace;
using learnaug::logspace;
using learnaug::parse_grid;

TEST(Grid, LinspaceEndpointsExact) {
  const auto g = linspace(0.0, 5.0, 21);
  ASSERT_EQ(g.size(), 21u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g.back(), 5.0);
  EXPECT_DOUBLE_EQ(g[4], 1.0);
  EXPECT_TRUE(linspace(1.0, 2.0, 0).empty());
  EXPECT_EQ(linspace(3.0, 4.0, 1), std::vector<double>{3.0});
}

TEST(Grid, LogspaceEndpointsExact) {
  const double b = 2.5;
  const auto g = logspace(1.0 / (b * b), b * b, 101);
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 1.0 / (b * b));
  EXPECT_EQ(g.back(), b * b);
  EXPECT_NEAR(g[50], 1.0, 1e-12);
  for (std::size_t i = 1; i < g.size(); ++i) EXPECT_LT(g[i - 1], g[i]);
  EXPECT_THROW(logspace(0.0, 1.0, 3), std::invalid_argument);
}

TEST(Grid, RangeExpansion) {
  const auto q = parse_grid("0.5:1.0:0.05");
  ASSERT_EQ(q.size(), 11u);
  EXPECT_EQ(q.front(), 0.5);
  EXPECT_EQ(q[1], 0.55);
  EXPECT_EQ(q[5], 0.75);
  EXPECT_EQ(q.back(), 1.0);

  const auto r = parse_grid("0:1:0.1");
  ASSERT_EQ(r.size(), 11u);
  EXPECT_EQ(r[3], 0.3);

  // stop not on the step lattice: last point stays below stop
  const auto s = parse_grid("0:1:0.3");
  ASSERT_EQ(s.size(), 4u);
  EXPECT_EQ(s.back(), 0.9);

  EXPECT_EQ(parse_grid("2:2:1"), std::vector<double>{2.0});
}

TEST(Grid, CommaList) {
  EXPECT_EQ(parse_grid("0.05,0.5,5"), (std::vector<double>{0.05, 0.5, 5.0}));
  EXPECT_EQ(parse_grid("7"), std::vector<double>{7.0});
  EXPECT_EQ(parse_grid("1e-2, 3"), (std::vector<double>{0.01, 3.0}));
}

TEST(Grid, MalformedInputRejected) {
  for (const char* bad : {"", "a", "1,,2", "1,", "1:2", "1:2:3:4", "1:0:0.1", "0:1:0", "0:1:-1",
                          "1..2", "nan", "inf", "1:x:2"}) {
    EXPECT_THROW(parse_grid(bad), std::invalid_argument) << "'" << bad << "'";
  }
}
