#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "eelkit/core.hpp"
#include "eelkit/geometry.hpp"

namespace eelkit {

// Polyline sample of a curve: strictly increasing parameters plus row-major
// points, all in one dimension d.
struct SampledCurve {
  std::size_t dim = 0;
  std::vector<double> params;
  std::vector<double> pts;  // count * dim, row-major

  std::size_t count() const { return params.size(); }
  double param(std::size_t i) const { return params[i]; }
  ConstVecView point(std::size_t i) const { return ConstVecView(pts.data() + i * dim, dim); }
  void push(double t, ConstVecView p) {
    if (dim == 0) dim = p.size();
    params.push_back(t);
    pts.insert(pts.end(), p.begin(), p.end());
  }
};

inline void validate_curve(const SampledCurve& c) {
  if (c.dim < 1) throw DomainError("curve: dimension must be >= 1");
  if (c.count() < 2) throw DomainError("curve: need at least 2 samples");
  if (c.pts.size() != c.count() * c.dim) throw DomainError("curve: point/parameter size mismatch");
  for (std::size_t i = 0; i < c.count(); ++i) {
    if (!std::isfinite(c.params[i])) throw DomainError("curve: non-finite parameter");
    require_finite(c.point(i), "curve point");
    if (i > 0 && !(c.params[i] > c.params[i - 1]))
      throw DomainError("curve: parameters must be strictly increasing (index " +
                        std::to_string(i) + ")");
  }
}

inline double polyline_length(const SampledCurve& c, std::size_t lo, std::size_t hi) {
  if (lo > hi || hi >= c.count()) throw DomainError("polyline_length: bad index range");
  double len = 0.0;
  for (std::size_t i = lo; i < hi; ++i) len += dist(c.point(i), c.point(i + 1));
  return len;
}

inline double polyline_length(const SampledCurve& c) {
  if (c.count() < 2) return 0.0;
  return polyline_length(c, 0, c.count() - 1);
}

// Unit chord direction from sample i to sample i+1, the discrete stand-in for
// the right derivative.
inline Vec forward_secant(const SampledCurve& c, std::size_t i) {
  if (i + 1 >= c.count()) throw DomainError("forward_secant: no successor sample");
  return unit_from_to(c.point(i), c.point(i + 1), "forward_secant: coincident samples");
}

// Unit direction from the sample at t back to the earlier sample at u.
inline Vec past_direction(const SampledCurve& c, std::size_t t, std::size_t u) {
  if (u >= t || t >= c.count()) throw DomainError("past_direction: need u < t < count");
  return unit_from_to(c.point(t), c.point(u), "past_direction: coincident samples");
}

// Cone generated by the directions from sample i back to every earlier sample.
inline GeneratedCone initial_cone(const SampledCurve& c, std::size_t i) {
  if (i == 0 || i >= c.count()) throw DomainError("initial_cone: need 0 < i < count");
  GeneratedCone k;
  k.dim = c.dim;
  for (std::size_t u = 0; u < i; ++u) k.add(past_direction(c, i, u));
  return k;
}

// Orientation reversal; parameters are negated so they stay strictly increasing.
inline SampledCurve reverse(const SampledCurve& c) {
  SampledCurve r;
  r.dim = c.dim;
  const std::size_t m = c.count();
  r.params.reserve(m);
  r.pts.reserve(c.pts.size());
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t i = m - 1 - k;
    r.params.push_back(-c.params[i]);
    auto p = c.point(i);
    r.pts.insert(r.pts.end(), p.begin(), p.end());
  }
  return r;
}

}  // namespace eelkit
