#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "stlmask/io.hpp"

namespace stlmask {
namespace {

TEST(Csv, ReadsHeaderAndTimeColumn) {
  std::istringstream in("t,x,y\n0,1,2\n0.5,3,-4e-1\n\n");
  const auto sig = read_csv(in);
  EXPECT_EQ(sig.length(), 2u);
  EXPECT_EQ(sig.dt(), 0.5);
  EXPECT_FALSE(sig.contains("t"));
  EXPECT_EQ(sig.at("y")[1], -0.4);
}

TEST(Csv, Errors) {
  std::istringstream ragged("x,y\n1,2\n3\n");
  EXPECT_THROW(read_csv(ragged), ParseError);
  std::istringstream bad("x\nfoo\n");
  EXPECT_THROW(read_csv(bad), ParseError);
  std::istringstream name("1x\n2\n");
  EXPECT_THROW(read_csv(name), ParseError);
  std::istringstream empty("x\n");
  EXPECT_THROW(read_csv(empty), EmptySignal);
  EXPECT_THROW(read_csv_file("/nonexistent/file.csv"), ParseError);
}

TEST(Csv, RoundTripIsBitExact) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n(0.0, 1e3);
  NamedSignals::Map m;
  for (const char* name : {"a", "b"}) {
    std::vector<double> v(200);
    for (auto& x : v) x = n(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
    m.emplace(name, Signal(std::move(v), 0.25));
  }
  const NamedSignals sig(std::move(m));
  for (bool with_time : {false, true}) {
    std::stringstream io;
    write_csv(io, sig, with_time);
    const auto back = read_csv(io);
    EXPECT_EQ(back.at("a").values().size(), 200u);
    for (const char* name : {"a", "b"}) {
      const auto x = sig.at(name).values();
      const auto y = back.at(name).values();
      EXPECT_TRUE(std::equal(x.begin(), x.end(), y.begin()));
    }
    if (with_time) EXPECT_EQ(back.dt(), 0.25);
  }
}

TEST(KeyValues, ParsesAndApplies) {
  std::istringstream in("# planner\ngamma1 = 2\n tau = linear 1 50 10  # inline\ntarget = 0 1 0 1\n");
  const auto kv = parse_key_values(in);
  EXPECT_EQ(kv.at("gamma1"), "2");
  const auto cfg = planner_config_from(kv);
  EXPECT_EQ(cfg.gamma1, 2.0);
  EXPECT_EQ(cfg.tau.kind, AnnealSchedule::Kind::Linear);
  EXPECT_EQ(cfg.tau.total_steps, 10u);
  EXPECT_EQ(cfg.target.x_hi, 1.0);

  std::istringstream dup("a = 1\na = 2\n");
  EXPECT_THROW(parse_key_values(dup), ParseError);
  EXPECT_THROW(planner_config_from(KeyValues{{"bogus", "1"}}), ParseError);
  EXPECT_THROW(planner_config_from(KeyValues{{"u_max", "-1"}}), InvalidArgument);
  EXPECT_THROW(mining_config_from(KeyValues{{"mode", "fuzzy"}}), ParseError);
  EXPECT_EQ(mining_config_from(KeyValues{{"gamma", "0.2"}}).gamma, 0.2);
}

}  // namespace
}  // namespace stlmask
