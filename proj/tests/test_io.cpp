#include <gtest/gtest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "maxstable/io.hpp"
#include "maxstable/report.hpp"

using namespace maxstable;

namespace {

TEST(FormatDouble, RoundTrips) {
  RngState rng(1);
  for (int i = 0; i < 1000; ++i) {
    const double v = -std::log(rng.uniform()) * 1e3;
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}

TEST(DiscreteCsv, WriteReadRoundTrip) {
  RngState rng(2);
  const auto p = simulate_forward(0.5, -3, 50, rng);
  std::stringstream ss;
  write_discrete_csv(ss, p);
  const std::string text = ss.str();
  EXPECT_EQ(text.rfind("t,value\n-3,", 0), 0u);
  const auto back = read_discrete_csv(ss);
  EXPECT_EQ(back.start, -3);
  EXPECT_EQ(back.values, p.values);
}

TEST(DiscreteCsv, AcceptsCrlfAndBlankLines) {
  std::istringstream in("t,value\r\n0,1.5\r\n\r\n1,2\r\n");
  const auto p = read_discrete_csv(in);
  EXPECT_EQ(p.values, (std::vector<double>{1.5, 2.0}));
}

TEST(DiscreteCsv, ErrorsCarryLineNumbers) {
  auto message = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_discrete_csv(in);
    } catch (const std::invalid_argument& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("").find("line 1"), std::string::npos);
  EXPECT_NE(message("time,value\n").find("line 1"), std::string::npos);
  EXPECT_NE(message("t,value\n0,1\n2,1\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("t,value\n0,1\n1,abc\n").find("line 3"), std::string::npos);
  EXPECT_NE(message("t,value\n0 1\n").find("line 2"), std::string::npos);
}

TEST(CadlagCsv, AnchorThenEvents) {
  CadlagPath p;
  p.t_end = 4.0;
  p.a = 0.5;
  p.anchor_value = 2.0;
  p.events = {{1.0, 3.0}};
  std::ostringstream out;
  write_cadlag_csv(out, p);
  EXPECT_EQ(out.str(), "time,value,is_event\n0,2,0\n1,3,1\n");
}

TEST(CadlagJson, RoundTrip) {
  RngState rng(3, 9);
  const auto p = simulate_za_reversed(0.4, 5.0, rng);
  const auto j = cadlag_to_json(p);
  EXPECT_EQ(j.at("direction"), "reversed");
  EXPECT_EQ(j.at("stream"), 9u);
  const auto q = cadlag_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(q.events, p.events);
  EXPECT_EQ(q.anchor_value, p.anchor_value);
  EXPECT_EQ(q.t_end, p.t_end);
  EXPECT_EQ(q.direction, p.direction);
}

TEST(CadlagJson, RejectsInvalidDocuments) {
  auto j = nlohmann::json::parse(
      R"({"window":[0,4],"a":0.5,"direction":"forward","anchor_value":2,"events":[{"time":1,"value":0.1}]})");
  EXPECT_THROW(cadlag_from_json(j), std::invalid_argument);
  j.erase("events");
  EXPECT_THROW(cadlag_from_json(j), nlohmann::json::exception);
}

TEST(EmpiricalReport, SortedUniqueChecks) {
  EmpiricalReport r;
  r.add("b", 1.0, 2.0, Comparison::Below, "p");
  r.add("a", 3.0, 2.0, Comparison::AtLeast, "p");
  EXPECT_EQ(r.checks().front().name, "a");
  EXPECT_THROW(r.add("a", 0, 0, Comparison::Below, "p"), std::invalid_argument);
  EXPECT_TRUE(r.all_pass());
  r.add("c", std::nan(""), 1.0, Comparison::AtMost, "p");
  EXPECT_FALSE(r.all_pass());
  EXPECT_EQ(r.find("zzz"), nullptr);
}

TEST(EmpiricalReport, ComparisonSemantics) {
  EmpiricalReport r;
  EXPECT_FALSE(r.add("below", 1.0, 1.0, Comparison::Below, "").pass);
  EXPECT_TRUE(r.add("atmost", 1.0, 1.0, Comparison::AtMost, "").pass);
  EXPECT_TRUE(r.add("atleast", 1.0, 1.0, Comparison::AtLeast, "").pass);
  EXPECT_TRUE(r.add("info", 5.0, 1.0, Comparison::Informational, "").pass);
}

TEST(EmpiricalReport, JsonRoundTripWithNonFinite) {
  EmpiricalReport r;
  r.add("x", INFINITY, 1.0, Comparison::AtLeast, "ref");
  r.add_decided("y", 0.25, NAN, false, "ref2");
  r.add_seed(7);
  r.add_seed(7);
  r.params() = {{"a", 0.5}};
  const auto j = r.to_json();
  EXPECT_EQ(j.at("checks").at(0).at("value"), "inf");
  EXPECT_EQ(j.at("checks").at(1).at("paper_ref"), "ref2");
  EXPECT_EQ(j.at("seeds").size(), 1u);
  const auto back = EmpiricalReport::from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(back.to_json().dump(), j.dump());
}

TEST(EmpiricalReport, MergeWithPrefix) {
  EmpiricalReport a, b;
  a.add("k", 1, 2, Comparison::Below, "");
  b.add("k", 3, 2, Comparison::Below, "");
  b.add_seed(4);
  a.merge(b, "sub.");
  EXPECT_NE(a.find("sub.k"), nullptr);
  EXPECT_FALSE(a.all_pass());
  EXPECT_EQ(a.seeds(), std::vector<std::uint64_t>{4});
}

}  // namespace
