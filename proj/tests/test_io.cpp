#include "lcp/io.hpp"

#include <doctest.h>

#include <sstream>

using namespace lcp;

TEST_CASE("problem JSON round trip and validation") {
  const Json j = Json::parse(R"({"n": 2, "m": [[1,2],[2,1]], "q": [-2,-2]})");
  auto [m, q] = problem_from_json(j);
  REQUIRE(q.has_value());
  CHECK(m(0, 1) == 2.0);
  CHECK((*q)[0] == -2.0);
  const Json back = problem_to_json(m, &*q);
  auto [m2, q2] = problem_from_json(back);
  CHECK(m2 == m);
  CHECK(*q2 == *q);

  CHECK_THROWS_WITH_AS(problem_from_json(Json::parse(R"({"q": [1]})")),
                       doctest::Contains("m"), std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"m": [[1,2],[2]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"n": 3, "m": [[1,2],[2,1]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(problem_from_json(Json::parse(R"({"m": [[1,2],[2,1]], "q": [1]})")),
                  std::invalid_argument);
}

TEST_CASE("literal parsing") {
  const Vector v = parse_vector_literal("-2, -2");
  CHECK(v.size() == 2);
  CHECK(v[0] == -2.0);
  CHECK_THROWS_AS(parse_vector_literal("1,abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_vector_literal(""), std::invalid_argument);

  const PwlPath p = parse_path_literal("(-4,0);(0,-4)");
  CHECK(p.segments() == 1);
  CHECK(p.waypoints[0][0] == -4.0);
  CHECK(p.lo() == 0.0);
  CHECK(p.hi() == 1.0);
  CHECK_THROWS_AS(parse_path_literal("(-4,0)"), std::invalid_argument);
  CHECK_THROWS_AS(parse_path_literal("-4,0;0,-4"), std::invalid_argument);

  const PwlPath pj = path_from_json(
      Json::parse(R"({"waypoints": [[-4,0],[0,-4]], "domain": [0.25, 0.75]})"));
  CHECK(pj.lo() == 0.25);
  CHECK(pj.hi() == 0.75);
}

TEST_CASE("interconnection spec JSON") {
  const Json j = Json::parse(R"({
    "m_a": [[1]], "m_b": [[1,2],[2,1]],
    "h_a": [[0,0]], "h_b": [[0.5],[0.5]],
    "theta_a": {"const": [1], "slope": [-2]},
    "theta_b": [0.1, 0.2]
  })");
  const InterconnectionSpec spec = interconnection_from_json(j);
  CHECK(spec.m_a(0, 0) == 1.0);
  CHECK(spec.theta_a.slope[0] == -2.0);
  CHECK(spec.theta_b.slope.cwiseAbs().maxCoeff() == 0.0);
  const ParamLcp p = interconnect(spec);
  CHECK(p.n() == 3);

  Json bad = j;
  bad.erase("h_b");
  CHECK_THROWS_WITH_AS(interconnection_from_json(bad), doctest::Contains("h_b"),
                       std::invalid_argument);
}

TEST_CASE("number formatting is stable") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(2.0 / 3.0) == "0.666666666667");
  CHECK(format_number(-4.0) == "-4");
}

TEST_CASE("diagram CSV layout") {
  Matrix m(2, 2);
  m << 1, 2, 2, 1;
  Vector a(2), b(2);
  a << -4, 0;
  b << 0, -4;
  const auto d = trace_path(m, PwlPath::from_waypoints({a, b}));
  const auto rows = sample_diagram(d, 3);

  std::ostringstream os;
  write_diagram_csv(os, rows, 2);
  const std::string text = os.str();
  CHECK(text.substr(0, text.find('\n')) == "branch,l,x1,x2,z1,z2");

  std::ostringstream os2;
  write_diagram_csv(os2, rows, 2);
  CHECK(text == os2.str());  // byte-stable across calls
}

TEST_CASE("surface CSV header") {
  std::ostringstream os;
  write_surface_csv(os, {{0.0, 0.0, 0.0}});
  CHECK(os.str() == "y1,y2,x1\n0,0,0\n");
}
