#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "eelkit/constructions.hpp"
#include "eelkit/rectifiability.hpp"

using namespace eelkit;

namespace {

SampledCurve segment3() {
  SampledCurve c;
  c.dim = 2;
  c.push(0.0, Vec{0.0, 0.0});
  c.push(0.5, Vec{0.5, 0.0});
  c.push(1.0, Vec{1.0, 0.0});
  return c;
}

// A 0-curve in the plane: time-reversed gradient descent on a quadratic.
SampledCurve reversed_descent() {
  return reverse(gradient_descent_trajectory({2.0, 0.3, 0.3, 1.0}, Vec{1.0, -2.0}, 0.2, 40));
}

}  // namespace

TEST_CASE("repulsion constants", "[rectifiability]") {
  RepulsionConstants rc = repulsion_constants(0.0, 2);
  CHECK(rc.delta == std::sqrt(2.0));
  CHECK(rc.rho == rc.delta / 2.0);
  CHECK(rc.eta == rc.rho / 3.0);
  CHECK(rc.lambda == 0.0);
  CHECK(rc.d == 2);

  // lambda = -1 is the extreme admissible value.
  CHECK(repulsion_constants(-1.0, 2).delta == 2.0);
  // In one dimension anything below 1 works.
  CHECK(repulsion_constants(0.9, 1).delta == Catch::Approx(std::sqrt(0.2)).epsilon(1e-15));

  CHECK_THROWS_AS(repulsion_constants(0.5, 2), DomainError);   // 1/d boundary
  CHECK_THROWS_AS(repulsion_constants(0.6, 2), DomainError);
  CHECK_THROWS_AS(repulsion_constants(-1.1, 2), DomainError);
  CHECK_THROWS_AS(repulsion_constants(0.0, 0), DomainError);
}

TEST_CASE("universal length bound", "[rectifiability]") {
  // lambda = 0 in the plane: eta = sqrt(2)/6, the circle net has 3 directions,
  // so the bound for unit diameter is 3/eta = 9 sqrt 2.
  CHECK(length_bound(0.0, 2, 1.0) == 12.727922061357853);
  CHECK(length_bound(0.0, 2, 2.5) ==
        Catch::Approx(2.5 * 12.727922061357853).epsilon(1e-15));
  CHECK_THROWS_AS(length_bound(0.0, 2, 0.0), DomainError);
  CHECK_THROWS_AS(length_bound(0.0, 2, -1.0), DomainError);
  CHECK_THROWS_AS(length_bound(0.5, 2, 1.0), DomainError);
}

TEST_CASE("width profile of a straight segment", "[rectifiability]") {
  SampledCurve c = segment3();
  RepulsionConstants rc = repulsion_constants(0.0, 2);
  SphereNet net = build_sphere_net(2, rc.eta);
  REQUIRE(net.size() == 3);
  WidthProfile wp = width_profile(c, net);
  REQUIRE(wp.per_direction.size() == 3);
  REQUIRE(wp.total.size() == 3);

  // First direction is (1, 0): widths are the x-extents, exactly.
  CHECK(wp.per_direction[0] == std::vector<double>{0.0, 0.5, 1.0});
  // The other two directions see |cos(2 pi / 3)| = 1/2 of the extent.
  for (std::size_t i = 1; i < 3; ++i) {
    CHECK(wp.per_direction[i][2] == Catch::Approx(0.5).epsilon(1e-14));
  }
  CHECK(wp.total[0] == 0.0);
  CHECK(wp.total[2] == Catch::Approx(2.0).epsilon(1e-14));

  // Every row is a running interval hull, so it never decreases.
  for (const auto& row : wp.per_direction)
    for (std::size_t j = 1; j < row.size(); ++j) CHECK(row[j] >= row[j - 1]);

  // Thread count does not change anything.
  WidthProfile wp5 = width_profile(c, net, 5);
  CHECK(wp5.per_direction == wp.per_direction);
  CHECK(wp5.total == wp.total);

  CHECK_THROWS_AS(width_profile(c, SphereNet{}), DomainError);
  CHECK_THROWS_AS(width_profile(c, build_sphere_net(3, rc.eta)), DomainError);
}

TEST_CASE("total width grows at least eta times the displacement", "[rectifiability]") {
  SampledCurve c = reversed_descent();
  RepulsionConstants rc = repulsion_constants(0.0, 2);
  REQUIRE(check_lambda_curve(c, rc.lambda).passed);
  WidthProfile wp = width_profile(c, build_sphere_net(2, rc.eta));
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < c.count(); ++a)
    for (std::size_t b = a + 1; b < c.count(); ++b) {
      const double gain = wp.total[b] - wp.total[a];
      worst = std::min(worst, gain - rc.eta * dist(c.point(a), c.point(b)));
    }
  CHECK(worst >= -1e-9);
}

TEST_CASE("verify_length_bound accepts a 0-curve and reports slack", "[rectifiability]") {
  SampledCurve c = reversed_descent();
  LengthBoundReport rep = verify_length_bound(c, 0.0, 2);
  CHECK(rep.passed);
  CHECK(rep.slack > 0.0);
  CHECK(rep.length == polyline_length(c));
  CHECK(rep.bound == length_bound(0.0, 2, rep.diameter));
  CHECK(rep.slack == rep.bound - rep.length);

  CHECK_THROWS_AS(verify_length_bound(c, 0.0, 3), DomainError);   // dimension mismatch
  CHECK_THROWS_AS(verify_length_bound(c, 0.5, 2), DomainError);   // lambda >= 1/d

  // A curve that doubles back is not a 0-curve; the hypothesis check throws.
  SampledCurve bad;
  bad.dim = 2;
  bad.push(0.0, Vec{0.0, 0.0});
  bad.push(1.0, Vec{1.0, 0.0});
  bad.push(2.0, Vec{0.4, 0.0});
  CHECK_THROWS_WITH(verify_length_bound(bad, 0.0, 2),
                    Catch::Matchers::ContainsSubstring("not a lambda-curve"));
}

TEST_CASE("width profile CSV export", "[rectifiability]") {
  SampledCurve c = segment3();
  SphereNet net = build_sphere_net(2, repulsion_constants(0.0, 2).eta);
  WidthProfile wp = width_profile(c, net);

  std::ostringstream os;
  write_width_profile_csv(os, c, wp);
  const std::string text = os.str();
  CHECK(text.rfind("t,W_1,W_2,W_3,W_F\n", 0) == 0);
  CHECK(text.find("\r") == std::string::npos);
  // The t = 0 row is all zeros and prints in the shortest form.
  CHECK(text.find("\n0,0,0,0,0\n") != std::string::npos);
  // Line count: header plus one row per sample.
  std::size_t lines = 0;
  for (char ch : text)
    if (ch == '\n') ++lines;
  CHECK(lines == 1 + c.count());

  // File variant writes the identical bytes.
  const std::string path = "width_profile_test_tmp.csv";
  write_width_profile_csv(path, c, wp);
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream buf;
  buf << in.rdbuf();
  CHECK(buf.str() == text);
  in.close();
  std::remove(path.c_str());

  // Mismatched profile/curve pairs are rejected.
  SampledCurve other = reversed_descent();
  CHECK_THROWS_AS(write_width_profile_csv(os, other, wp), DomainError);
  CHECK_THROWS_AS(write_width_profile_csv("no_such_dir/out.csv", c, wp), DomainError);
}
