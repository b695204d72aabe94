// Prints the per-stage geometry of a bounded eel: floor heights, radii, loop
// counts, and the clearance to the next stage, then a whole-curve summary.

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "eelkit/eelkit.hpp"

int main(int argc, char** argv) {
  const std::size_t stages = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 3;
  const eelkit::EelParams p = eelkit::eel_params();
  eelkit::EelDiagnostics diag;
  const eelkit::SampledCurve c = eelkit::infinite_eel(stages, p, 1e-2, 256, &diag);
  std::printf("mu=%g N=%d M=%g lambda=%.17g\n", p.mu, p.N, p.M, p.lambda);
  std::printf("%5s %12s %12s %6s %12s %12s %10s\n", "stage", "floor", "radius", "loops", "gap",
              "gap_slack", "cos_z");
  for (std::size_t i = 0; i < diag.stages.size(); ++i) {
    const eelkit::EelStageDiag& s = diag.stages[i];
    if (std::isnan(s.gap))
      std::printf("%5zu %12.6g %12.6g %6zu %12s %12s %10s\n", i + 1, s.a, s.r, s.loops, "-", "-",
                  "-");
    else
      std::printf("%5zu %12.6g %12.6g %6zu %12.6g %12.6g %10.6f\n", i + 1, s.a, s.r, s.loops,
                  s.gap, s.gap_slack, s.segment_cos_z);
  }
  std::printf("samples=%zu length=%.6f max_norm=%.6f\n", c.count(), eelkit::polyline_length(c),
              diag.max_norm);
  return 0;
}
