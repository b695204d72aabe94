// Builds a gradient descent run, round-trips it through the CSV format, and
// checks the reversed trajectory against several properties, printing one
// JSON report per check plus the net length bound.

#include <cstdio>
#include <sstream>
#include <vector>

#include "eelkit/eelkit.hpp"

int main() {
  using namespace eelkit;
  const std::vector<double> q{2.0, 0.3, 0.3, 1.0};
  const SampledCurve c = gradient_descent_trajectory(q, Vec{1.0, -2.0}, 0.2, 40);

  std::ostringstream buf;
  write_polyline_csv(buf, c);
  std::istringstream in(buf.str());
  const SampledCurve back = read_polyline_csv(in);
  const SampledCurve rev = reverse(back);

  for (Property p : {Property::self_contracted, Property::self_expanded})
    std::printf("%s\n", to_json(run_check(c, p, 0.0)).dump().c_str());
  for (Property p : {Property::lambda_curve, Property::lambda_cone, Property::conical_split})
    std::printf("%s\n", to_json(run_check(rev, p, 0.3)).dump().c_str());

  const LengthBoundReport lb = verify_length_bound(rev, 0.3, 2);
  std::printf("length=%.6f diameter=%.6f bound=%.6f slack=%.6f\n", lb.length, lb.diameter,
              lb.bound, lb.slack);
  return 0;
}
