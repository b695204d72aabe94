#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "eelkit/checkers.hpp"
#include "eelkit/core.hpp"
#include "eelkit/curve.hpp"
#include "eelkit/detail/parallel.hpp"
#include "eelkit/polyline_io.hpp"
#include "eelkit/sphere_net.hpp"

namespace eelkit {

// Constant bundle of the repulsion argument: delta = sqrt(2(1 - lambda)),
// rho = delta / 2, eta = rho / 3. Only meaningful for lambda < 1/d.
struct RepulsionConstants {
  double delta = 0.0;
  double rho = 0.0;
  double eta = 0.0;
  double lambda = 0.0;
  std::size_t d = 0;
};

inline RepulsionConstants repulsion_constants(double lambda, std::size_t d) {
  if (d < 1) throw DomainError("repulsion_constants: dimension must be >= 1");
  if (!(lambda >= -1.0 && lambda < 1.0 / static_cast<double>(d)))
    throw DomainError("repulsion_constants: requires -1 <= lambda < 1/d");
  RepulsionConstants rc;
  rc.lambda = lambda;
  rc.d = d;
  rc.delta = std::sqrt(2.0 * (1.0 - lambda));
  rc.rho = rc.delta / 2.0;
  rc.eta = rc.rho / 3.0;
  return rc;
}

// Universal length bound (#net) * diam / eta for the net at eta(lambda, d).
inline double length_bound(double lambda, std::size_t d, double diam) {
  if (!(diam > 0.0)) throw DomainError("length_bound: diameter must be positive");
  const RepulsionConstants rc = repulsion_constants(lambda, d);
  const std::size_t n = build_sphere_net(d, rc.eta).size();
  return static_cast<double>(n) * diam / rc.eta;
}

// Widths of the projections of the initial parts: W_i(j) is the interval hull
// (max - min) of <xi_i, points[k]> over k <= j; total is the sum over i.
struct WidthProfile {
  SphereNet net;
  std::vector<std::vector<double>> per_direction;  // net.size() rows, count() cols
  std::vector<double> total;                       // count() entries
};

inline WidthProfile width_profile(const SampledCurve& c, const SphereNet& net, int threads = 0) {
  validate_curve(c);
  if (net.empty()) throw DomainError("width_profile: empty net");
  for (const auto& xi : net)
    if (xi.size() != c.dim) throw DomainError("width_profile: net dimension mismatch");
  const std::size_t m = c.count();
  WidthProfile wp;
  wp.net = net;
  wp.per_direction.assign(net.size(), std::vector<double>(m, 0.0));
  wp.total.assign(m, 0.0);
  detail::parallel_chunks(net.size(), detail::resolve_threads(threads),
                          [&](std::size_t, std::size_t b, std::size_t e) {
                            for (std::size_t i = b; i < e; ++i) {
                              double lo = dot(net[i], c.point(0));
                              double hi = lo;
                              auto& row = wp.per_direction[i];
                              for (std::size_t j = 0; j < m; ++j) {
                                const double p = dot(net[i], c.point(j));
                                lo = std::min(lo, p);
                                hi = std::max(hi, p);
                                row[j] = hi - lo;
                              }
                            }
                          });
  for (std::size_t j = 0; j < m; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < net.size(); ++i) s += wp.per_direction[i][j];
    wp.total[j] = s;
  }
  return wp;
}

struct LengthBoundReport {
  double length = 0.0;
  double diameter = 0.0;
  double bound = 0.0;
  double slack = 0.0;  // bound - length
  bool passed = false;
};

// Checks the hypothesis (the curve really is a lambda-curve with lambda < 1/d)
// and then compares measured length against the universal bound.
inline LengthBoundReport verify_length_bound(const SampledCurve& c, double lambda, std::size_t d,
                                             double tol = kDefaultTol, int threads = 0) {
  validate_curve(c);
  if (d != c.dim) throw DomainError("verify_length_bound: d must equal the curve dimension");
  if (!(lambda >= -1.0 && lambda < 1.0 / static_cast<double>(d)))
    throw DomainError("verify_length_bound: requires -1 <= lambda < 1/d");
  const CheckReport chk = check_lambda_curve(c, lambda, tol, threads);
  if (!chk.passed)
    throw DomainError("verify_length_bound: input is not a lambda-curve at lambda = " +
                      std::to_string(lambda) + " (worst margin " + std::to_string(chk.worst_margin) +
                      ")");
  const std::size_t m = c.count();
  double diam = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) diam = std::max(diam, dist(c.point(i), c.point(j)));
  if (diam == 0.0) throw DomainError("verify_length_bound: degenerate curve, zero diameter");
  LengthBoundReport rep;
  rep.length = polyline_length(c);
  rep.diameter = diam;
  rep.bound = length_bound(lambda, d, diam);
  rep.slack = rep.bound - rep.length;
  rep.passed = rep.length <= rep.bound;
  return rep;
}

// CSV export: t, W_1, ..., W_N, W_F; same number format as polylines.
inline void write_width_profile_csv(std::ostream& os, const SampledCurve& c,
                                    const WidthProfile& wp) {
  if (wp.total.size() != c.count()) throw DomainError("write_width_profile_csv: profile/curve mismatch");
  os << "t";
  for (std::size_t i = 1; i <= wp.net.size(); ++i) os << ",W_" << i;
  os << ",W_F\n";
  for (std::size_t j = 0; j < c.count(); ++j) {
    os << detail::format_double(c.params[j]);
    for (std::size_t i = 0; i < wp.net.size(); ++i)
      os << "," << detail::format_double(wp.per_direction[i][j]);
    os << "," << detail::format_double(wp.total[j]) << "\n";
  }
}

inline void write_width_profile_csv(const std::string& path, const SampledCurve& c,
                                    const WidthProfile& wp) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw DomainError("cannot open for writing: " + path);
  write_width_profile_csv(os, c, wp);
  if (!os) throw DomainError("write failed: " + path);
}

}  // namespace eelkit
