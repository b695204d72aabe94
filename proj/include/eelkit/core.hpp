#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace eelkit {

// Default absolute tolerance on unit-normalized quantities. Inequalities are
// always relaxed by the tolerance, never tightened, so a curve that satisfies
// a property exactly can not fail from rounding.
inline constexpr double kDefaultTol = 1e-9;
inline constexpr double kUnitTol = 1e-12;

struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DegenerateSampleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line)
      : std::runtime_error(msg + " (line " + std::to_string(line) + ")"),
        line_number(line) {}
  std::size_t line_number;
};

using Vec = std::vector<double>;
using ConstVecView = std::span<const double>;

inline double dot(ConstVecView a, ConstVecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm(ConstVecView a) { return std::sqrt(dot(a, a)); }

inline double dist(ConstVecView a, ConstVecView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return std::sqrt(s);
}

inline Vec sub(ConstVecView a, ConstVecView b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

// Unit vector from a to b; throws if the points coincide. Scaling by the
// largest component first keeps the direction finite even when the gap is so
// small that its squared norm would underflow to zero.
inline Vec unit_from_to(ConstVecView a, ConstVecView b, const char* what) {
  Vec r = sub(b, a);
  double m = 0.0;
  for (double x : r) m = std::max(m, std::fabs(x));
  if (m == 0.0) throw DegenerateSampleError(what);
  for (double& x : r) x /= m;
  const double n = norm(r);
  for (double& x : r) x /= n;
  return r;
}

inline bool is_unit(ConstVecView a, double tol = kUnitTol) {
  return std::fabs(norm(a) - 1.0) <= tol;
}

inline void require_finite(ConstVecView a, const char* what) {
  for (double x : a)
    if (!std::isfinite(x)) throw DomainError(std::string(what) + ": non-finite coordinate");
}

}  // namespace eelkit
