#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

#include "eelkit/core.hpp"

namespace eelkit {

// Minimal pairwise inner product over a set of unit directions (self-pairs
// included, so a singleton has aperture set value 1).
inline double aperture_set(const std::vector<Vec>& s) {
  if (s.empty()) throw DomainError("aperture_set: empty direction set");
  double m = 1.0;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i; j < s.size(); ++j) m = std::min(m, dot(s[i], s[j]));
  return m;
}

struct AxisCone {
  Vec apex;
  Vec axis;        // unit
  double half_angle;  // radians in (0, pi)
};

// Open cone membership with an explicit tolerance resolving strictness:
// p counts as a member only when it clears the boundary by tol, except the
// apex which is always a member.
inline bool axis_cone_contains(const AxisCone& c, ConstVecView p, double tol) {
  Vec u = sub(p, c.apex);
  const double n = norm(u);
  if (n <= tol) return true;
  return dot(u, c.axis) > n * std::cos(c.half_angle) + tol * n;
}

// Finitely generated closed convex cone, stored as a flat row-major list of
// unit generators. An empty generator list represents the trivial cone {0}.
struct GeneratedCone {
  std::size_t dim = 0;
  std::vector<double> gens;  // row-major, size = count * dim

  std::size_t count() const { return dim == 0 ? 0 : gens.size() / dim; }
  ConstVecView generator(std::size_t i) const {
    return ConstVecView(gens.data() + i * dim, dim);
  }
  void add(ConstVecView g) {
    if (dim == 0) dim = g.size();
    gens.insert(gens.end(), g.begin(), g.end());
  }
};

inline GeneratedCone make_cone(std::size_t dim, const std::vector<Vec>& generators) {
  GeneratedCone k;
  k.dim = dim;
  for (const auto& g : generators) k.add(g);
  return k;
}

inline std::vector<Vec> generator_list(const GeneratedCone& k) {
  std::vector<Vec> out;
  out.reserve(k.count());
  for (std::size_t i = 0; i < k.count(); ++i) {
    auto g = k.generator(i);
    out.emplace_back(g.begin(), g.end());
  }
  return out;
}

// arccos of the generator-set aperture. For cones with >= 3 generators in
// d >= 3 the full-cone aperture can exceed this; all discrete checks in this
// library only need the generator-set quantity.
inline double cone_aperture(const GeneratedCone& k) {
  if (k.count() == 0) throw DomainError("cone_aperture: cone has no generators");
  return std::acos(std::clamp(aperture_set(generator_list(k)), -1.0, 1.0));
}

// Polar-cone membership: the polar of a generated cone is cut out by the
// generators themselves.
inline bool polar_contains(const GeneratedCone& k, ConstVecView v, double tol) {
  for (std::size_t i = 0; i < k.count(); ++i)
    if (dot(v, k.generator(i)) > tol) return false;
  return true;
}

namespace detail {

// Dense symmetric positive (semi)definite solve via Cholesky with a tiny
// ridge retry. Returns false if the matrix is numerically singular even
// after regularization.
inline bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::vector<double> l = a;
    if (attempt == 1) {
      double trace = 0.0;
      for (std::size_t i = 0; i < n; ++i) trace += a[i * n + i];
      const double ridge = (trace > 0 ? trace : 1.0) * 1e-14;
      for (std::size_t i = 0; i < n; ++i) l[i * n + i] += ridge;
    }
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = 0; j <= i; ++j) {
        double s = l[i * n + j];
        for (std::size_t t = 0; t < j; ++t) s -= l[i * n + t] * l[j * n + t];
        if (i == j) {
          if (s <= 0.0) {
            ok = false;
            break;
          }
          l[i * n + i] = std::sqrt(s);
        } else {
          l[i * n + j] = s / l[j * n + j];
        }
      }
    }
    if (!ok) continue;
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      double s = b[i];
      for (std::size_t t = 0; t < i; ++t) s -= l[i * n + t] * y[t];
      y[i] = s / l[i * n + i];
    }
    for (std::size_t ii = n; ii-- > 0;) {
      double s = y[ii];
      for (std::size_t t = ii + 1; t < n; ++t) s -= l[t * n + ii] * b[t];
      b[ii] = s / l[ii * n + ii];
    }
    return true;
  }
  return false;
}

struct NnlsResult {
  std::vector<double> coeffs;
  bool converged = true;
};

// Lawson-Hanson active-set nonnegative least squares:
// min over c >= 0 of || sum_j c_j g_j - q ||.
inline NnlsResult nnls(const GeneratedCone& k, ConstVecView q, double conv_tol = 1e-12) {
  const std::size_t g = k.count(), d = k.dim;
  NnlsResult res;
  res.coeffs.assign(g, 0.0);
  std::vector<char> passive(g, 0);
  std::vector<std::size_t> pset;
  Vec proj(d, 0.0);
  const std::size_t max_iter = 100 * g;
  std::size_t iter = 0;

  auto recompute_proj = [&] {
    std::fill(proj.begin(), proj.end(), 0.0);
    for (std::size_t j : pset) {
      auto gen = k.generator(j);
      for (std::size_t t = 0; t < d; ++t) proj[t] += res.coeffs[j] * gen[t];
    }
  };

  while (true) {
    if (iter++ >= max_iter) {
      res.converged = false;
      return res;
    }
    recompute_proj();
    double wbest = -std::numeric_limits<double>::infinity();
    std::size_t jbest = g;
    for (std::size_t j = 0; j < g; ++j) {
      if (passive[j]) continue;
      auto gen = k.generator(j);
      double w = 0.0;
      for (std::size_t t = 0; t < d; ++t) w += gen[t] * (q[t] - proj[t]);
      if (w > wbest) {
        wbest = w;
        jbest = j;
      }
    }
    if (jbest == g || wbest <= conv_tol) return res;
    passive[jbest] = 1;
    pset.push_back(jbest);

    while (true) {
      if (iter++ >= max_iter) {
        res.converged = false;
        return res;
      }
      const std::size_t p = pset.size();
      std::vector<double> gram(p * p), rhs(p);
      for (std::size_t a = 0; a < p; ++a) {
        auto ga = k.generator(pset[a]);
        rhs[a] = dot(ga, q);
        for (std::size_t b = 0; b <= a; ++b) {
          const double v = dot(ga, k.generator(pset[b]));
          gram[a * p + b] = gram[b * p + a] = v;
        }
      }
      if (!cholesky_solve(gram, rhs, p)) {
        // Dependent column: drop the newest passive index and stop growing.
        passive[pset.back()] = 0;
        pset.pop_back();
        return res;
      }
      double zmin = std::numeric_limits<double>::infinity();
      for (double z : rhs) zmin = std::min(zmin, z);
      if (zmin > 0.0) {
        for (std::size_t a = 0; a < p; ++a) res.coeffs[pset[a]] = rhs[a];
        break;
      }
      double alpha = std::numeric_limits<double>::infinity();
      for (std::size_t a = 0; a < p; ++a) {
        if (rhs[a] <= 0.0) {
          const double c = res.coeffs[pset[a]];
          alpha = std::min(alpha, c / (c - rhs[a]));
        }
      }
      for (std::size_t a = 0; a < p; ++a) {
        const std::size_t j = pset[a];
        res.coeffs[j] += alpha * (rhs[a] - res.coeffs[j]);
      }
      std::vector<std::size_t> keep;
      for (std::size_t j : pset) {
        if (res.coeffs[j] <= 1e-14) {
          res.coeffs[j] = 0.0;
          passive[j] = 0;
        } else {
          keep.push_back(j);
        }
      }
      pset = std::move(keep);
    }
  }
}

}  // namespace detail

struct ConeProjection {
  double value = -1.0;   // max over unit cone elements of <q, u>
  bool converged = true;  // false when the active-set solve hit its iteration cap
};

// max_{u in K, |u|=1} <q, u> for unit q. Computed from the conic projection
// P of q: when P != 0 the maximizer is P/|P|; when P = 0 the maximum over the
// cone is attained at a generator (along any spherical geodesic between unit
// cone elements the functional is a nonnegative sine combination of its
// endpoint values, so a nonpositive maximum over generators cannot be
// exceeded inside).
inline ConeProjection cone_projection_cos_full(const GeneratedCone& k, ConstVecView q) {
  if (k.count() == 0) throw DomainError("cone_projection_cos: cone has no generators");
  if (!is_unit(q, 1e-9)) throw DomainError("cone_projection_cos: q must be a unit vector");
  auto sol = detail::nnls(k, q);
  ConeProjection out;
  out.converged = sol.converged;
  double gen_max = -std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < k.count(); ++j)
    gen_max = std::max(gen_max, dot(q, k.generator(j)));
  if (!sol.converged) {
    out.value = std::clamp(gen_max, -1.0, 1.0);
    return out;
  }
  Vec proj(k.dim, 0.0);
  for (std::size_t j = 0; j < k.count(); ++j) {
    if (sol.coeffs[j] == 0.0) continue;
    auto gen = k.generator(j);
    for (std::size_t t = 0; t < k.dim; ++t) proj[t] += sol.coeffs[j] * gen[t];
  }
  const double pn = norm(proj);
  out.value = std::clamp(pn > 1e-12 ? dot(q, proj) / pn : gen_max, -1.0, 1.0);
  return out;
}

inline double cone_projection_cos(const GeneratedCone& k, ConstVecView q) {
  return cone_projection_cos_full(k, q).value;
}

namespace detail {

// Exact (small-scale) decision of 0 in conv(points): enumerate candidate
// supports of size <= d+1 and solve the barycentric system directly.
inline bool zero_in_hull_caratheodory(const std::vector<Vec>& pts, std::size_t d) {
  const std::size_t n = pts.size();
  const std::size_t rows = d + 1;
  std::vector<std::size_t> idx;
  const double feas_tol = 1e-9;

  // Gaussian elimination least squares on the (d+1) x s system [X; 1] a = e_{d+1}.
  auto subset_feasible = [&](const std::vector<std::size_t>& s) {
    const std::size_t m = s.size();
    std::vector<double> gram(m * m), rhs(m);
    for (std::size_t a = 0; a < m; ++a) {
      for (std::size_t b = 0; b < m; ++b) {
        gram[a * m + b] = dot(pts[s[a]], pts[s[b]]) + 1.0;
      }
      rhs[a] = 1.0;
    }
    if (!cholesky_solve(gram, rhs, m)) return false;
    double sum = 0.0;
    for (double v : rhs) {
      if (v < -feas_tol) return false;
      sum += v;
    }
    Vec combo(d, 0.0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t t = 0; t < d; ++t) combo[t] += rhs[a] * pts[s[a]][t];
    return std::fabs(sum - 1.0) <= feas_tol && norm(combo) <= feas_tol;
  };

  // Enumerate subsets of size 1..min(d+1, n); a minimal support is affinely
  // independent, so its normal equations are nonsingular.
  const std::size_t smax = std::min(rows, n);
  for (std::size_t size = 1; size <= smax; ++size) {
    idx.resize(size);
    for (std::size_t i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      if (subset_feasible(idx)) return true;
      std::size_t i = size;
      while (i > 0) {
        --i;
        if (idx[i] + 1 <= n - size + i) {
          ++idx[i];
          for (std::size_t j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
          break;
        }
        if (i == 0) {
          i = size;  // exhausted
          break;
        }
      }
      if (i == size) break;
    }
  }
  return false;
}

// Phase-1 simplex (Bland's rule) for feasibility of {Xa = 0, sum a = 1, a >= 0}.
inline bool zero_in_hull_lp(const std::vector<Vec>& pts, std::size_t d) {
  const std::size_t n = pts.size();
  const std::size_t m = d + 1;          // constraint rows
  const std::size_t cols = n + m;       // original + artificial
  std::vector<double> tab(m * cols, 0.0);
  std::vector<double> b(m, 0.0);
  b[d] = 1.0;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < d; ++i) tab[i * cols + j] = pts[j][i];
    tab[d * cols + j] = 1.0;
  }
  for (std::size_t i = 0; i < m; ++i) tab[i * cols + n + i] = 1.0;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;
  // Objective: minimize sum of artificials. Reduced costs maintained directly.
  std::vector<double> cost(cols, 0.0);
  for (std::size_t j = n; j < cols; ++j) cost[j] = 1.0;
  const double tol = 1e-10;

  auto reduced_cost = [&](std::size_t j) {
    double s = cost[j];
    for (std::size_t i = 0; i < m; ++i) s -= cost[basis[i]] * tab[i * cols + j];
    return s;
  };

  for (std::size_t guard = 0; guard < 20000; ++guard) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (reduced_cost(j) < -tol) {
        enter = j;
        break;  // Bland: smallest index
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = tab[i * cols + enter];
      if (a > tol) {
        const double ratio = b[i] / a;
        if (ratio < best - tol || (std::fabs(ratio - best) <= tol && (leave == m || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    }
    if (leave == m) break;  // unbounded; cannot happen for phase-1
    const double piv = tab[leave * cols + enter];
    for (std::size_t j = 0; j < cols; ++j) tab[leave * cols + j] /= piv;
    b[leave] /= piv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave) continue;
      const double f = tab[i * cols + enter];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) tab[i * cols + j] -= f * tab[leave * cols + j];
      b[i] -= f * b[leave];
    }
    basis[leave] = enter;
  }
  double objective = 0.0;
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] >= n) objective += b[i];
  return objective <= 1e-8;
}

inline bool zero_in_convex_hull(const std::vector<Vec>& pts, std::size_t d) {
  if (pts.empty()) return false;
  return pts.size() <= 12 ? zero_in_hull_caratheodory(pts, d) : zero_in_hull_lp(pts, d);
}

}  // namespace detail

// True iff the generated cone contains no line, decided via 0 in conv(generators).
inline bool is_pointed(const GeneratedCone& k) {
  if (k.count() == 0) return true;
  return !detail::zero_in_convex_hull(generator_list(k), k.dim);
}

struct PointednessReport {
  bool pointed = false;       // 0 not in conv(Sigma)
  bool pairwise_ok = true;    // all pairs satisfy <x, x'> >= -lambda - tol
  double min_pairwise = 1.0;  // worst pairwise inner product observed
  explicit operator bool() const { return pointed; }
};

// Half-sphere containment test for a set of unit directions whose pairwise
// inner products are bounded below by -lambda with lambda < 1/d. A pairwise
// violation is reported as a diagnostic, not an error; lambda >= 1/d is a
// refusal because the conclusion has no backing there.
inline PointednessReport pointedness_test(const std::vector<Vec>& sigma, double lambda,
                                          std::size_t d, double tol = kDefaultTol) {
  if (sigma.empty()) throw DomainError("pointedness_test: empty direction set");
  if (d < 1) throw DomainError("pointedness_test: dimension must be >= 1");
  if (!(lambda < 1.0 / static_cast<double>(d)))
    throw DomainError("pointedness_test: requires lambda < 1/d");
  PointednessReport rep;
  rep.min_pairwise = aperture_set(sigma);
  rep.pairwise_ok = rep.min_pairwise >= -lambda - tol;
  rep.pointed = !detail::zero_in_convex_hull(sigma, d);
  return rep;
}

namespace detail {

// Orthonormal basis of the hyperplane orthogonal to unit g.
inline std::vector<Vec> orthonormal_complement(ConstVecView g) {
  const std::size_t d = g.size();
  std::vector<Vec> basis;
  basis.emplace_back(g.begin(), g.end());
  for (std::size_t e = 0; e < d && basis.size() < d; ++e) {
    Vec v(d, 0.0);
    v[e] = 1.0;
    for (const auto& bvec : basis) {
      const double c = dot(v, bvec);
      for (std::size_t t = 0; t < d; ++t) v[t] -= c * bvec[t];
    }
    const double n = norm(v);
    if (n > 1e-8) {
      for (double& x : v) x /= n;
      basis.push_back(std::move(v));
    }
  }
  basis.erase(basis.begin());
  return basis;
}

}  // namespace detail

// Enlargement: returns a finitely generated cone whose conic hull contains
// (K intersect S^{d-1}) + B_delta. Any point of that sum deviates from a unit
// cone element by angle at most arcsin(delta), so it suffices to cover the
// spherical cap of radius phi = arcsin(delta) around every unit cone element.
// Around each generator the cap is covered exactly:
//   d = 2: rotations by +-phi;
//   d = 3: a ring of k points at polar angle phi+ = arccos(cos phi cos(pi/k)),
//          whose spherical polygon has inradius >= phi;
//   d >= 4: the 2(d-1) cross-polytope directions at phi+ = arctan(sqrt(d-1) tan phi),
//          whose hull contains the cap (tan phi+ = sqrt(d-1) tan phi makes the
//          facet inradius exactly phi).
// Caps around mixtures are covered automatically: a mixture of generators plus
// a delta-perturbation is a conic combination of per-generator perturbations.
inline GeneratedCone enlarge_cone(const GeneratedCone& k, double delta) {
  if (k.count() == 0) throw DomainError("enlarge_cone: cone has no generators");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("enlarge_cone: delta must lie in (0, 1)");
  const std::size_t d = k.dim;
  const double phi = std::asin(delta);
  GeneratedCone out;
  out.dim = d;

  for (std::size_t i = 0; i < k.count(); ++i) {
    auto g = k.generator(i);
    out.add(g);
    if (d == 1) continue;
    if (d == 2) {
      const double c = std::cos(phi), s = std::sin(phi);
      out.add(Vec{c * g[0] - s * g[1], s * g[0] + c * g[1]});
      out.add(Vec{c * g[0] + s * g[1], -s * g[0] + c * g[1]});
      continue;
    }
    auto perp = detail::orthonormal_complement(g);
    if (d == 3) {
      std::size_t ring = 8;
      double phip = 0.0;
      for (;;) {
        phip = std::acos(std::cos(phi) * std::cos(M_PI / static_cast<double>(ring)));
        const double spacing = 2.0 * std::sin(phip) * std::sin(M_PI / static_cast<double>(ring));
        if (spacing <= delta / 2.0 || ring > (1u << 20)) break;
        ring *= 2;
      }
      const double cp = std::cos(phip), sp = std::sin(phip);
      for (std::size_t j = 0; j < ring; ++j) {
        const double th = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(ring);
        Vec v(d);
        for (std::size_t t = 0; t < d; ++t)
          v[t] = cp * g[t] + sp * (std::cos(th) * perp[0][t] + std::sin(th) * perp[1][t]);
        out.add(v);
      }
    } else {
      const double phip = std::atan(std::sqrt(static_cast<double>(d - 1)) * std::tan(phi));
      const double cp = std::cos(phip), sp = std::sin(phip);
      for (const auto& bvec : perp) {
        for (int sign = -1; sign <= 1; sign += 2) {
          Vec v(d);
          for (std::size_t t = 0; t < d; ++t) v[t] = cp * g[t] + sp * sign * bvec[t];
          out.add(v);
        }
      }
    }
  }
  return out;
}

}  // namespace eelkit
