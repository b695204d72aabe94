#pragma once

// Deterministic curve corpus for property and oracle-equivalence tests.
// Every generator takes its seed explicitly; nothing here depends on global
// state, so the same binary always sees the same curves.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "eelkit/eelkit.hpp"

namespace corpus {

struct Entry {
  std::string name;
  eelkit::SampledCurve curve;
};

using Rng = std::mt19937_64;

inline eelkit::Vec random_point(Rng& rng, std::size_t d, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  eelkit::Vec p(d);
  for (double& x : p) x = u(rng);
  return p;
}

inline eelkit::SampledCurve segment(Rng& rng, std::size_t d, std::size_t m) {
  eelkit::Vec a = random_point(rng, d, -1.0, 1.0);
  eelkit::Vec b = random_point(rng, d, -1.0, 1.0);
  while (eelkit::dist(a, b) < 0.5) b = random_point(rng, d, -1.0, 1.0);
  eelkit::SampledCurve c;
  c.dim = d;
  for (std::size_t i = 0; i < m; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(m - 1);
    eelkit::Vec p(d);
    for (std::size_t x = 0; x < d; ++x) p[x] = (1.0 - t) * a[x] + t * b[x];
    c.push(t, p);
  }
  return c;
}

// Segment with per-point jitter small enough (relative to the sample gap)
// to keep the monotone distance structure.
inline eelkit::SampledCurve jittered_segment(Rng& rng, std::size_t d, std::size_t m) {
  eelkit::SampledCurve c = segment(rng, d, m);
  double min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < c.count(); ++i)
    min_gap = std::min(min_gap, eelkit::dist(c.point(i - 1), c.point(i)));
  std::uniform_real_distribution<double> u(-0.01 * min_gap, 0.01 * min_gap);
  for (std::size_t i = 0; i < c.count(); ++i)
    for (std::size_t x = 0; x < d; ++x) c.pts[i * d + x] += u(rng);
  return c;
}

struct GdInstance {
  std::vector<double> q;  // d x d row-major SPD
  eelkit::Vec x0;
  double step_size;
};

inline GdInstance random_gd(Rng& rng, std::size_t d) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(d * d);
  for (double& x : a) x = u(rng);
  GdInstance g;
  g.q.assign(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) g.q[i * d + j] += a[k * d + i] * a[k * d + j];
      if (i == j) g.q[i * d + j] += 0.3;
    }
  g.x0 = random_point(rng, d, -2.0, 2.0);
  // crude upper bound on lambda_max keeps the step safely admissible
  double trace = 0.0;
  for (std::size_t i = 0; i < d; ++i) trace += g.q[i * d + i];
  g.step_size = 0.45 / trace;
  return g;
}

// Greedy walk that is self-expanded with respect to the norm
// |x| = max(0.8 ||x||_2, ||x||_inf): each new point keeps every |.|-distance
// to earlier points at least as large as the previous one did.
inline double mixed_norm(eelkit::ConstVecView x) {
  double inf = 0.0;
  for (double v : x) inf = std::max(inf, std::fabs(v));
  return std::max(0.8 * eelkit::norm(x), inf);
}

inline eelkit::SampledCurve mixed_norm_expanded_walk(Rng& rng, std::size_t d, std::size_t m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  eelkit::SampledCurve c;
  c.dim = d;
  c.push(0.0, random_point(rng, d, -0.5, 0.5));
  while (c.count() < m) {
    const std::size_t k = c.count();
    auto last = c.point(k - 1);
    bool placed = false;
    for (int attempt = 0; attempt < 400 && !placed; ++attempt) {
      eelkit::Vec y(d);
      const double scale = 0.05 + 0.25 * (attempt / 400.0);
      for (std::size_t x = 0; x < d; ++x) y[x] = last[x] + scale * u(rng);
      bool ok = true;
      for (std::size_t i = 0; i + 1 < k && ok; ++i) {
        const double before = mixed_norm(eelkit::sub(c.point(i), last));
        const double after = mixed_norm(eelkit::sub(c.point(i), y));
        if (after < before) ok = false;
      }
      if (ok && eelkit::dist(last, y) > 1e-3) {
        c.push(static_cast<double>(k), y);
        placed = true;
      }
    }
    if (!placed) {
      // fall back to marching straight away from the centroid; this always
      // grows every |.|-distance once far enough out
      eelkit::Vec ctr(d, 0.0);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t x = 0; x < d; ++x) ctr[x] += c.point(i)[x] / static_cast<double>(k);
      eelkit::Vec dir = eelkit::sub(last, ctr);
      double n = eelkit::norm(dir);
      if (n < 1e-9) {
        dir.assign(d, 0.0);
        dir[0] = 1.0;
        n = 1.0;
      }
      eelkit::Vec y(d);
      for (double s = 0.1;; s *= 2.0) {
        for (std::size_t x = 0; x < d; ++x) y[x] = last[x] + s * dir[x] / n;
        bool ok = true;
        for (std::size_t i = 0; i + 1 < k && ok; ++i)
          if (mixed_norm(eelkit::sub(c.point(i), y)) < mixed_norm(eelkit::sub(c.point(i), last)))
            ok = false;
        if (ok) break;
      }
      c.push(static_cast<double>(k), y);
    }
  }
  return c;
}

inline eelkit::SampledCurve log_spiral(double growth, double theta_hi, double step) {
  eelkit::SampledCurve c;
  c.dim = 2;
  const std::size_t n = static_cast<std::size_t>(std::ceil(theta_hi / step));
  for (std::size_t i = 0; i <= n; ++i) {
    const double th = theta_hi * static_cast<double>(i) / static_cast<double>(n);
    c.push(th, eelkit::Vec{std::exp(growth * th) * std::cos(th),
                           std::exp(growth * th) * std::sin(th)});
  }
  return c;
}

// The main corpus driving the implication and bound tests: segments, helices,
// gradient-descent runs forward and reversed, jittered segments.
inline std::vector<Entry> implication_corpus() {
  std::vector<Entry> out;
  Rng rng(20240817u);
  for (int i = 0; i < 30; ++i) {
    const std::size_t d = 1 + (i % 3);
    const std::size_t m = 20 + (i * 7) % 21;
    out.push_back({"segment_" + std::to_string(i), segment(rng, d, m)});
  }
  int hi = 0;
  for (double mu : {0.47, 0.48, 0.49, 0.499})
    for (double r : {0.5, 1.0, 2.0})
      out.push_back({"helix_" + std::to_string(hi++), eelkit::helix(r, mu, 0.0, 2.0 * M_PI, 0.02)});
  for (double mu : {0.47, 0.48, 0.49, 0.499})
    out.push_back(
        {"helix_coarse_" + std::to_string(hi++), eelkit::helix(1.0, mu, 0.0, 2.0 * M_PI, 0.15)});
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 2 + (i % 3);
    GdInstance g = random_gd(rng, d);
    const std::size_t iters = 25 + (i * 3) % 16;
    out.push_back({"gd_" + std::to_string(i),
                   eelkit::gradient_descent_trajectory(g.q, g.x0, g.step_size, iters)});
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 2 + (i % 3);
    GdInstance g = random_gd(rng, d);
    const std::size_t iters = 25 + (i * 5) % 16;
    out.push_back({"gd_rev_" + std::to_string(i),
                   eelkit::reverse(eelkit::gradient_descent_trajectory(g.q, g.x0, g.step_size, iters))});
  }
  for (int i = 0; i < 20; ++i) {
    const std::size_t d = 1 + (i % 3);
    const std::size_t m = 20 + (i * 11) % 21;
    out.push_back({"jitter_" + std::to_string(i), jittered_segment(rng, d, m)});
  }
  return out;
}

inline std::vector<Entry> norm_walk_corpus() {
  std::vector<Entry> out;
  Rng rng(99173u);
  for (int i = 0; i < 50; ++i) {
    const std::size_t d = 2 + (i % 2);
    out.push_back({"walk_" + std::to_string(i), mixed_norm_expanded_walk(rng, d, 25)});
  }
  return out;
}

inline std::vector<Entry> planar_spiral_corpus() {
  std::vector<Entry> out;
  int i = 0;
  for (double g : {0.4, 0.5, 0.6})
    out.push_back({"spiral_" + std::to_string(i++), log_spiral(g, 6.0 * M_PI, 0.02)});
  return out;
}

// Everything, for oracle equivalence (small members) and spot checks.
inline std::vector<Entry> full_corpus() {
  std::vector<Entry> out = implication_corpus();
  for (auto& e : norm_walk_corpus()) out.push_back(std::move(e));
  for (auto& e : planar_spiral_corpus()) out.push_back(std::move(e));
  return out;
}

inline std::vector<Entry> small_corpus() {
  std::vector<Entry> out;
  for (auto& e : full_corpus())
    if (e.curve.count() <= 50) out.push_back(std::move(e));
  return out;
}

}  // namespace corpus
