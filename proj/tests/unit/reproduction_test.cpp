#include <gtest/gtest.h>

#include "ppn/reproduction.hpp"

using namespace ppn;

TEST(Reproduction, SelectByGroup) {
  ReproductionOptions opt;
  opt.only = {"mod288"};
  const auto r = run_reproduction(opt);
  ASSERT_EQ(r.checks.size(), 2u);
  EXPECT_EQ(r.checks[0].id, "mod288.N9");
  EXPECT_EQ(r.checks[0].computed, "258");
  EXPECT_EQ(r.checks[1].computed, "6");
  EXPECT_TRUE(r.ok());
}

TEST(Reproduction, SelectById) {
  ReproductionOptions opt;
  opt.only = {"congruence.H"};
  const auto r = run_reproduction(opt);
  ASSERT_EQ(r.checks.size(), 1u);
  EXPECT_EQ(r.checks[0].computed, "9953 70");
}

TEST(Reproduction, CorruptedConstantFails) {
  ReproductionOptions opt;
  opt.only = {"mod288", "ppn"};
  opt.corrupt = "mod288.N10";
  const auto r = run_reproduction(opt);
  EXPECT_FALSE(r.ok());
  EXPECT_EQ(r.failed(), 1u);
  for (const auto& c : r.checks) EXPECT_EQ(c.pass, c.id != "mod288.N10");
  EXPECT_NE(r.to_text().find("FAIL mod288.N10"), std::string::npos);
}

TEST(Reproduction, FullRunPassesAndIsDeterministic) {
  const auto a = run_reproduction();
  for (const auto& c : a.checks) EXPECT_TRUE(c.pass) << c.id << ": " << c.computed;
  EXPECT_GT(a.checks.size(), 60u);
  const auto b = run_reproduction();
  EXPECT_EQ(a, b);
}
