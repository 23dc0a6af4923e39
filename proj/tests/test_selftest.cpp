#include "hpdk/selftest.hpp"

#include <gtest/gtest.h>

using namespace hpdk;

TEST(Selftest, QuickSuitesPass) {
  for (const auto& s : selftest::run_all(selftest::Level::quick, 0)) {
    EXPECT_GT(s.cases, 0) << s.name;
    EXPECT_EQ(s.failures, 0) << s.name << ": " << (s.messages.empty() ? "" : s.messages.front());
  }
}

TEST(Selftest, DeterministicForSeed) {
  const auto a = selftest::run_all(selftest::Level::quick, 5);
  const auto b = selftest::run_all(selftest::Level::quick, 5);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].cases, b[i].cases);
    EXPECT_EQ(a[i].failures, b[i].failures);
  }
}

TEST(Selftest, FullLevelPassesOnAnotherSeed) {
  for (const auto& s : selftest::run_all(selftest::Level::full, 9)) {
    EXPECT_EQ(s.failures, 0) << s.name << ": " << (s.messages.empty() ? "" : s.messages.front());
  }
}
