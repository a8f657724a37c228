#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "hyperorlicz/hyperorlicz.hpp"
#include "hyperorlicz/io.hpp"

using namespace hyperorlicz;
namespace io = hyperorlicz::io;
using io::json;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return static_cast<ErrorCode>(-1);
}

}  // namespace

TEST(Dump, SeventeenDigits) {
  EXPECT_EQ(io::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(io::format_double(1.0), "1");
  EXPECT_EQ(io::format_double(INFINITY), "inf");
  json j = io::envelope("demo");
  j["x"] = 2.0 / 3.0;
  j["v"] = json::array({1, 0.5});
  j["nested"] = {{"flag", true}};
  EXPECT_EQ(io::dump(j),
            "{\n"
            "  \"schema_version\": \"1.0\",\n"
            "  \"kind\": \"demo\",\n"
            "  \"x\": 0.66666666666666663,\n"
            "  \"v\": [1, 0.5],\n"
            "  \"nested\": {\n"
            "    \"flag\": true\n"
            "  }\n"
            "}\n");
  // round trip is exact at 17 digits
  const double v = std::sqrt(2.0);
  EXPECT_EQ(io::parse(io::format_double(v)).get<double>(), v);
}

TEST(Dump, NonFiniteBecomesString) {
  json j = json::array({NAN, -INFINITY});
  EXPECT_EQ(io::dump(j), "[\"nan\", \"-inf\"]\n");
}

TEST(Parse, Errors) {
  EXPECT_EQ(code_of([] { io::parse("{\"a\": "); }), ErrorCode::parse_error);
  EXPECT_EQ(code_of([] { io::load_file("/nonexistent/x.json"); }), ErrorCode::invalid_argument);
  const auto e = io::error_json(Error(ErrorCode::not_found, "gone"));
  EXPECT_EQ(e["kind"], "error");
  EXPECT_EQ(e["error"]["code"], "not_found");
  EXPECT_EQ(e["error"]["message"], "gone");
}

TEST(Young, RoundTrip) {
  for (const auto& phi : {YoungFunction::power(3), YoungFunction::power_log(2, 1.5),
                          YoungFunction::custom("x^2 + abs(x)^3")}) {
    const auto back = io::young_from_json(io::young_to_json(phi));
    for (double x : {0.0, 0.3, 1.0, 7.5}) EXPECT_EQ(back(x), phi(x));
  }
  const auto pl = io::young_from_json(io::parse(R"({"family": "power_log", "params": {"p": 2}})"));
  EXPECT_EQ(pl.power_log_exponents(), (std::pair{2.0, 0.0}));
}

TEST(Young, SchemaErrors) {
  for (const char* bad : {R"([1])", R"({"family": "weird", "params": {"p": 2}})",
                          R"({"family": "power"})", R"({"family": "power", "params": {"p": "2"}})",
                          R"({"custom": 5})"}) {
    EXPECT_EQ(code_of([&] { io::young_from_json(io::parse(bad)); }),
              ErrorCode::schema_violation)
        << bad;
  }
  EXPECT_EQ(code_of([] { io::young_from_json(io::parse(R"({"family": "power", "params": {"p": 0.5}})")); }),
            ErrorCode::invalid_argument);
}

TEST(Witness, RoundTrip) {
  const auto w = io::witness_from_json("invsqrt");
  const auto j = io::witness_to_json(w);
  EXPECT_EQ(j["alpha"]["s"], 0.5);
  EXPECT_EQ(j["method"], "integral_test");
  const auto back = io::witness_from_json(j);
  EXPECT_EQ(io::witness_to_json(back), j);
  const auto p = io::witness_from_json(io::parse(
      R"({"alpha": {"c": 2, "s": 0.75}, "beta": {"c": 1, "s": 0.6}, "method": "partial_sum_only"})"));
  EXPECT_EQ(p.method, TailMethod::partial_sum_only);
  EXPECT_EQ(code_of([] { io::witness_from_json("sqrt"); }), ErrorCode::schema_violation);
  EXPECT_EQ(code_of([] { io::witness_from_json(io::parse(R"({"alpha": {"c": 1}})")); }),
            ErrorCode::schema_violation);
}

TEST(Hypergroup, Names) {
  EXPECT_EQ(io::hypergroup_from_name("integers").kind(), DiscreteHypergroup::Kind::integers);
  EXPECT_EQ(io::hypergroup_from_name("chebyshev").kind(), DiscreteHypergroup::Kind::chebyshev);
  const auto c = io::hypergroup_from_json("cyclic:7");
  EXPECT_EQ(c.carrier_points().size(), 7u);
  EXPECT_EQ(code_of([] { io::hypergroup_from_name("cyclic:x"); }), ErrorCode::schema_violation);
  EXPECT_EQ(code_of([] { io::hypergroup_from_name("cyclic:"); }), ErrorCode::schema_violation);
  EXPECT_EQ(code_of([] { io::hypergroup_from_name("torus"); }), ErrorCode::schema_violation);
}

TEST(Hypergroup, TableFromJson) {
  const auto j = io::parse(R"({
    "carrier": "table",
    "points": [0, 1],
    "involution": [0, 1],
    "identity": 0,
    "haar": [1, 4],
    "table": [
      {"x": 0, "y": 0, "support": [0], "weights": [1]},
      {"x": 0, "y": 1, "support": [1], "weights": [1]},
      {"x": 1, "y": 0, "support": [1], "weights": [1]},
      {"x": 1, "y": 1, "support": [0, 1], "weights": [0.25, 0.75]}
    ]
  })");
  const auto H = io::hypergroup_from_json(j);
  EXPECT_EQ(H.conv(1, 1), FiniteMeasure({{0, 0.25}, {1, 0.75}}));
  EXPECT_EQ(H.haar(1), 4.0);
  EXPECT_TRUE(validate_axioms(H, {0, 1}).passed());

  auto bad = j;
  bad["table"][3]["weights"] = json::array({0.5, 0.6});
  EXPECT_EQ(code_of([&] { io::hypergroup_from_json(bad); }), ErrorCode::invalid_table);
  bad = j;
  bad.erase("haar");
  EXPECT_EQ(code_of([&] { io::hypergroup_from_json(bad); }), ErrorCode::schema_violation);
  bad = j;
  bad["table"][0]["x"] = 0.5;
  EXPECT_EQ(code_of([&] { io::hypergroup_from_json(bad); }), ErrorCode::schema_violation);
}

TEST(Function, RoundTrip) {
  const OrliczFunction<std::complex<double>> f({{-3, {1.0, 0.5}}, {4, {0.0, -2.0}}});
  const auto j = io::function_to_json(f);
  EXPECT_EQ(io::complex_function_from_json(j), f);
  const OrliczFunction<double> r({{0, 1.5}, {2, -0.25}});
  EXPECT_EQ(io::function_from_json(io::function_to_json(r)), r);
  EXPECT_EQ(io::function_from_json(io::parse(R"({"support": [1, 2], "values": [3, [4, 0]]})")),
            OrliczFunction<double>({{1, 3.0}, {2, 4.0}}));
}

TEST(Function, SchemaErrors) {
  for (const char* bad : {R"({"support": [1, 2], "values": [3]})",
                          R"({"support": [1.5], "values": [3]})",
                          R"({"values": [3]})",
                          R"({"support": [1], "values": [[1, 2, 3]]})"}) {
    EXPECT_EQ(code_of([&] { io::complex_function_from_json(io::parse(bad)); }),
              ErrorCode::schema_violation)
        << bad;
  }
  EXPECT_EQ(code_of([] { io::function_from_json(io::parse(R"({"support": [1], "values": [[1, 2]]})")); }),
            ErrorCode::schema_violation);
}

TEST(Weight, FromJson) {
  EXPECT_TRUE(io::weight_from_json(json()).is_unit());
  EXPECT_TRUE(io::weight_from_json(io::parse(R"({"kind": "unit"})")).is_unit());
  const auto w = io::weight_from_json(io::parse(R"({"kind": "exponential", "rate": 0.5})"));
  EXPECT_NEAR(w(-2), std::exp(1.0), 1e-15);
  EXPECT_EQ(code_of([] { io::weight_from_json(io::parse(R"({"kind": "poly"})")); }),
            ErrorCode::schema_violation);
  EXPECT_EQ(io::window_text({-3, 4}), "[-3,4]");
}
