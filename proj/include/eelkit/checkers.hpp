#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eelkit/core.hpp"
#include "eelkit/curve.hpp"
#include "eelkit/detail/parallel.hpp"
#include "eelkit/geometry.hpp"

namespace eelkit {

enum class Property {
  lambda_curve,
  lambda_cone,
  self_contracted,
  self_expanded,
  noncollinear,
  conical_split,
  lyapunov,
};

inline const char* property_name(Property p) {
  switch (p) {
    case Property::lambda_curve: return "lambda_curve";
    case Property::lambda_cone: return "lambda_cone";
    case Property::self_contracted: return "self_contracted";
    case Property::self_expanded: return "self_expanded";
    case Property::noncollinear: return "noncollinear";
    case Property::conical_split: return "conical_split";
    case Property::lyapunov: return "lyapunov";
  }
  return "unknown";
}

// Result envelope shared by all checkers. passed <=> worst_margin >= -tol;
// a vacuous check (no constraints at this sample count) reports +infinity.
struct CheckReport {
  Property property = Property::lambda_curve;
  double lambda = 0.0;
  bool passed = false;
  double worst_margin = std::numeric_limits<double>::infinity();
  std::vector<std::size_t> witness;
  std::size_t samples_checked = 0;
  double tol = kDefaultTol;
};

namespace detail {

// Min-margin accumulator. Ties resolve to the lexicographically smallest
// witness so chunked runs reduce to the same report as a serial scan.
struct MarginAcc {
  double margin = std::numeric_limits<double>::infinity();
  std::array<std::size_t, 3> wit{};
  std::size_t wlen = 0;

  static bool lex_less(const std::array<std::size_t, 3>& a, std::size_t alen,
                       const std::array<std::size_t, 3>& b, std::size_t blen) {
    for (std::size_t i = 0; i < alen && i < blen; ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return alen < blen;
  }

  void consider(double m, std::initializer_list<std::size_t> w) {
    if (m > margin) return;
    std::array<std::size_t, 3> cand{};
    std::size_t n = 0;
    for (std::size_t v : w) cand[n++] = v;
    if (m < margin || lex_less(cand, n, wit, wlen)) {
      margin = m;
      wit = cand;
      wlen = n;
    }
  }

  void merge(const MarginAcc& o) {
    if (o.wlen == 0 && !(o.margin < margin)) return;
    if (o.margin < margin || (o.margin == margin && lex_less(o.wit, o.wlen, wit, wlen))) {
      margin = o.margin;
      wit = o.wit;
      wlen = o.wlen;
    }
  }

  std::vector<std::size_t> witness() const { return {wit.begin(), wit.begin() + wlen}; }
};

inline constexpr std::size_t kDistMatrixLimit = 2048;

// Optional all-pairs distance table; pays off for triple enumerations.
struct DistTable {
  const SampledCurve* c;
  std::vector<double> d;  // m*m when in use, else empty
  std::size_t m;

  explicit DistTable(const SampledCurve& curve, int threads) : c(&curve), m(curve.count()) {
    if (m <= kDistMatrixLimit) {
      d.assign(m * m, 0.0);
      parallel_chunks(m, threads, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
          for (std::size_t j = 0; j < m; ++j) d[i * m + j] = eelkit::dist(curve.point(i), curve.point(j));
      });
    }
  }
  double operator()(std::size_t i, std::size_t j) const {
    return d.empty() ? eelkit::dist(c->point(i), c->point(j)) : d[i * m + j];
  }
};

inline void require_lambda_range(double lambda, const char* what) {
  if (!(lambda >= -1.0 && lambda < 1.0))
    throw DomainError(std::string(what) + ": lambda must lie in [-1, 1)");
}

inline CheckReport finish(Property p, double lambda, double tol, std::size_t samples,
                          const MarginAcc& acc) {
  CheckReport r;
  r.property = p;
  r.lambda = lambda;
  r.tol = tol;
  r.samples_checked = samples;
  r.worst_margin = acc.margin;
  r.witness = acc.witness();
  r.passed = acc.margin >= -tol;
  return r;
}

}  // namespace detail

// Triple test d(i,j) <= d(i,k) + lambda d(j,k) over all i < j < k.
inline CheckReport check_lambda_curve(const SampledCurve& c, double lambda,
                                      double tol = kDefaultTol, int threads = 0) {
  validate_curve(c);
  detail::require_lambda_range(lambda, "check_lambda_curve");
  const std::size_t m = c.count();
  const int nthreads = detail::resolve_threads(threads);
  detail::DistTable d(c, nthreads);

  // Injectivity is a precondition: repeated points break the triple test's
  // meaning (and d(j,k) = 0 hides the lambda term). A zero distance is only a
  // duplicate if the coordinates match exactly; the squared norm of a tiny
  // but nonzero gap can underflow to zero.
  auto same_point = [&](std::size_t i, std::size_t j) {
    auto a = c.point(i), b = c.point(j);
    for (std::size_t x = 0; x < c.dim; ++x)
      if (a[x] != b[x]) return false;
    return true;
  };
  std::optional<std::pair<std::size_t, std::size_t>> dup;
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> dup_chunk(nthreads);
  detail::parallel_chunks(m, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e && !dup_chunk[ci]; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        if (d(i, j) == 0.0 && same_point(i, j)) {
          dup_chunk[ci] = {i, j};
          break;
        }
  });
  for (const auto& dc : dup_chunk)
    if (dc && !dup) dup = dc;
  if (dup)
    throw DegenerateSampleError("check_lambda_curve: samples " + std::to_string(dup->first) +
                                " and " + std::to_string(dup->second) + " coincide");

  std::vector<detail::MarginAcc> acc(nthreads);
  detail::parallel_chunks(m, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i)
      for (std::size_t j = i + 1; j < m; ++j) {
        const double dij = d(i, j);
        for (std::size_t k = j + 1; k < m; ++k)
          acc[ci].consider(d(i, k) + lambda * d(j, k) - dij, {i, j, k});
      }
  });
  detail::MarginAcc total;
  for (const auto& a : acc) total.merge(a);
  const std::size_t samples = m * (m - 1) * (m - 2) / 6;
  return detail::finish(Property::lambda_curve, lambda, tol, samples, total);
}

// lambda = 0 triple condition: d(i,j) <= d(i,k), scanned with a running max.
inline CheckReport check_self_expanded(const SampledCurve& c, double tol = kDefaultTol,
                                       int threads = 0) {
  validate_curve(c);
  const std::size_t m = c.count();
  const int nthreads = detail::resolve_threads(threads);
  detail::DistTable d(c, nthreads);
  std::vector<detail::MarginAcc> acc(nthreads);
  detail::parallel_chunks(m >= 2 ? m - 2 : 0, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) {
      double runmax = d(i, i + 1);
      std::size_t argj = i + 1;
      for (std::size_t k = i + 2; k < m; ++k) {
        const double dik = d(i, k);
        acc[ci].consider(dik - runmax, {i, argj, k});
        if (dik > runmax) {
          runmax = dik;
          argj = k;
        }
      }
    }
  });
  detail::MarginAcc total;
  for (const auto& a : acc) total.merge(a);
  const std::size_t samples = m * (m - 1) * (m - 2) / 6;
  return detail::finish(Property::self_expanded, 0.0, tol, samples, total);
}

// d(j,k) <= d(i,k) for i < j < k, scanned with a prefix min per endpoint k.
inline CheckReport check_self_contracted(const SampledCurve& c, double tol = kDefaultTol,
                                         int threads = 0) {
  validate_curve(c);
  const std::size_t m = c.count();
  const int nthreads = detail::resolve_threads(threads);
  detail::DistTable d(c, nthreads);
  std::vector<detail::MarginAcc> acc(nthreads);
  detail::parallel_chunks(m >= 2 ? m - 2 : 0, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    for (std::size_t kk = b; kk < e; ++kk) {
      const std::size_t k = kk + 2;
      double prefmin = d(0, k);
      std::size_t argi = 0;
      for (std::size_t j = 1; j < k; ++j) {
        const double djk = d(j, k);
        acc[ci].consider(prefmin - djk, {argi, j, k});
        if (djk < prefmin) {
          prefmin = djk;
          argi = j;
        }
      }
    }
  });
  detail::MarginAcc total;
  for (const auto& a : acc) total.merge(a);
  const std::size_t samples = m * (m - 1) * (m - 2) / 6;
  return detail::finish(Property::self_contracted, 0.0, tol, samples, total);
}

namespace detail {

// Forward secant, optionally averaged over the next `window` unit steps to
// smooth non-differentiable sample corners. window = 1 is the plain secant.
inline Vec smoothed_secant(const SampledCurve& c, std::size_t i, std::size_t window) {
  if (window <= 1) return forward_secant(c, i);
  Vec acc(c.dim, 0.0);
  const std::size_t last = std::min(i + window, c.count() - 1);
  for (std::size_t s = i; s < last; ++s) {
    Vec q = forward_secant(c, s);
    for (std::size_t t = 0; t < c.dim; ++t) acc[t] += q[t];
  }
  const double n = norm(acc);
  if (n < kUnitTol) throw DegenerateSampleError("smoothed_secant: averaged direction vanished");
  for (double& x : acc) x /= n;
  return acc;
}

}  // namespace detail

// Backward-cone test: <forward secant at i, unit(points[j] - points[i])> <= lambda
// for every j < i. Pair scan tracks squared ratios so only the winning pair
// needs a square root.
inline CheckReport check_lambda_cone(const SampledCurve& c, double lambda,
                                     double tol = kDefaultTol, int threads = 0,
                                     std::size_t secant_window = 1) {
  validate_curve(c);
  detail::require_lambda_range(lambda, "check_lambda_cone");
  const std::size_t m = c.count();
  const int nthreads = detail::resolve_threads(threads);

  std::vector<Vec> secants(m > 1 ? m - 1 : 0);
  for (std::size_t i = 0; i + 1 < m; ++i) secants[i] = detail::smoothed_secant(c, i, secant_window);

  struct Cand {
    double val2 = -1.0;  // squared cosine, sign tracked by which slot it sits in
    std::size_t u = 0, t = 0;
    bool set = false;
  };
  struct ChunkState {
    Cand pos;  // inner > 0, maximize dot^2/n2
    Cand neg;  // inner <= 0, minimize dot^2/n2
    std::optional<std::pair<std::size_t, std::size_t>> degenerate;
  };
  auto lex_pair_less = [](std::size_t au, std::size_t at, std::size_t bu, std::size_t bt) {
    return au != bu ? au < bu : at < bt;
  };
  std::vector<ChunkState> state(nthreads);
  const std::size_t tcount = m >= 3 ? m - 2 : 0;  // t ranges over [1, m-2]
  detail::parallel_chunks(tcount, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    ChunkState& st = state[ci];
    for (std::size_t tt = b; tt < e; ++tt) {
      const std::size_t t = tt + 1;
      const Vec& q = secants[t];
      auto pt = c.point(t);
      for (std::size_t u = 0; u < t; ++u) {
        auto pu = c.point(u);
        double dotqw = 0.0, n2 = 0.0, wmax = 0.0;
        for (std::size_t x = 0; x < c.dim; ++x) {
          const double w = pu[x] - pt[x];
          dotqw += q[x] * w;
          n2 += w * w;
          wmax = std::max(wmax, std::fabs(w));
        }
        if (wmax == 0.0) {
          if (!st.degenerate) st.degenerate = {u, t};
          continue;
        }
        if (n2 < 1e-270) {
          // The squared gap is (near) denormal; redo the pair at unit scale.
          dotqw = 0.0;
          n2 = 0.0;
          for (std::size_t x = 0; x < c.dim; ++x) {
            const double w = (pu[x] - pt[x]) / wmax;
            dotqw += q[x] * w;
            n2 += w * w;
          }
        }
        const double val2 = dotqw * dotqw / n2;
        if (dotqw > 0.0) {
          if (!st.pos.set || val2 > st.pos.val2 ||
              (val2 == st.pos.val2 && lex_pair_less(u, t, st.pos.u, st.pos.t)))
            st.pos = {val2, u, t, true};
        } else {
          if (!st.neg.set || val2 < st.neg.val2 ||
              (val2 == st.neg.val2 && lex_pair_less(u, t, st.neg.u, st.neg.t)))
            st.neg = {val2, u, t, true};
        }
      }
    }
  });

  Cand pos, neg;
  std::optional<std::pair<std::size_t, std::size_t>> degenerate;
  for (const auto& st : state) {
    if (st.degenerate && !degenerate) degenerate = st.degenerate;
    if (st.pos.set && (!pos.set || st.pos.val2 > pos.val2 ||
                       (st.pos.val2 == pos.val2 && lex_pair_less(st.pos.u, st.pos.t, pos.u, pos.t))))
      pos = st.pos;
    if (st.neg.set && (!neg.set || st.neg.val2 < neg.val2 ||
                       (st.neg.val2 == neg.val2 && lex_pair_less(st.neg.u, st.neg.t, neg.u, neg.t))))
      neg = st.neg;
  }
  if (degenerate)
    throw DegenerateSampleError("check_lambda_cone: samples " + std::to_string(degenerate->first) +
                                " and " + std::to_string(degenerate->second) + " coincide");

  detail::MarginAcc total;
  if (pos.set)
    total.consider(lambda - std::sqrt(pos.val2), {pos.u, pos.t});
  else if (neg.set)
    total.consider(lambda + std::sqrt(neg.val2), {neg.u, neg.t});
  const std::size_t samples = tcount == 0 ? 0 : tcount * (tcount + 1) / 2;
  return detail::finish(Property::lambda_cone, lambda, tol, samples, total);
}

// Pairwise past-direction test: <unit(p_s - p_t), unit(p_u - p_t)> > -lambda
// for s < u < t. Margin 0 counts as a pass; the continuous statement is
// strict but discrete samples meet equality at collinear configurations.
inline CheckReport check_noncollinear(const SampledCurve& c, double lambda,
                                      double tol = kDefaultTol, int threads = 0) {
  validate_curve(c);
  detail::require_lambda_range(lambda, "check_noncollinear");
  const std::size_t m = c.count();
  const int nthreads = detail::resolve_threads(threads);
  std::vector<detail::MarginAcc> acc(nthreads);
  std::vector<std::optional<std::pair<std::size_t, std::size_t>>> degen(nthreads);
  const std::size_t tcount = m >= 3 ? m - 2 : 0;  // t ranges over [2, m-1]
  detail::parallel_chunks(tcount, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    std::vector<Vec> dirs;
    for (std::size_t tt = b; tt < e && !degen[ci]; ++tt) {
      const std::size_t t = tt + 2;
      auto pt = c.point(t);
      dirs.assign(t, Vec());
      for (std::size_t u = 0; u < t; ++u) {
        // Scale-invariant normalization, robust to gaps whose squared norm
        // would underflow.
        Vec w = sub(c.point(u), pt);
        double wmax = 0.0;
        for (double x : w) wmax = std::max(wmax, std::fabs(x));
        if (wmax == 0.0) {
          degen[ci] = {u, t};
          break;
        }
        for (double& x : w) x /= wmax;
        const double n = norm(w);
        for (double& x : w) x /= n;
        dirs[u] = std::move(w);
      }
      if (degen[ci]) break;
      for (std::size_t s = 0; s + 1 < t; ++s)
        for (std::size_t u = s + 1; u < t; ++u)
          acc[ci].consider(dot(dirs[s], dirs[u]) + lambda, {s, u, t});
    }
  });
  for (const auto& dg : degen)
    if (dg)
      throw DegenerateSampleError("check_noncollinear: samples " + std::to_string(dg->first) +
                                  " and " + std::to_string(dg->second) + " coincide");
  detail::MarginAcc total;
  for (const auto& a : acc) total.merge(a);
  const std::size_t samples = m * (m - 1) * (m - 2) / 6;
  return detail::finish(Property::noncollinear, lambda, tol, samples, total);
}

// Conic split: the forward secant must make cosine at most lambda with the
// whole cone generated by the past directions, not just the generators.
inline CheckReport check_conical_split(const SampledCurve& c, double lambda,
                                       double tol = kDefaultTol, int threads = 0) {
  validate_curve(c);
  detail::require_lambda_range(lambda, "check_conical_split");
  const std::size_t m = c.count();
  const int nthreads = detail::resolve_threads(threads);
  std::vector<detail::MarginAcc> acc(nthreads);
  std::vector<std::string> errors(nthreads);
  const std::size_t icount = m >= 3 ? m - 2 : 0;  // i ranges over [1, m-2]
  detail::parallel_chunks(icount, nthreads, [&](std::size_t ci, std::size_t b, std::size_t e) {
    for (std::size_t ii = b; ii < e; ++ii) {
      const std::size_t i = ii + 1;
      try {
        const GeneratedCone k = initial_cone(c, i);
        const Vec q = forward_secant(c, i);
        acc[ci].consider(lambda - cone_projection_cos(k, q), {i});
      } catch (const std::exception& ex) {
        if (errors[ci].empty()) errors[ci] = ex.what();
        return;
      }
    }
  });
  for (const auto& err : errors)
    if (!err.empty()) throw DegenerateSampleError(err);
  detail::MarginAcc total;
  for (const auto& a : acc) total.merge(a);
  return detail::finish(Property::conical_split, lambda, tol, icount, total);
}

// V(i) = dist(p_i, p_start) + lambda * length(start..i) must be non-decreasing.
// Compared against the running max so tol cannot accumulate stepwise.
inline CheckReport check_lyapunov(const SampledCurve& c, double lambda, std::size_t start_index,
                                  double tol = kDefaultTol) {
  validate_curve(c);
  if (!std::isfinite(lambda)) throw DomainError("check_lyapunov: lambda must be finite");
  if (start_index >= c.count()) throw DomainError("check_lyapunov: start_index out of range");
  const std::size_t m = c.count();
  detail::MarginAcc total;
  double len = 0.0;
  double best = 0.0;  // V(start) = 0
  std::size_t argbest = start_index;
  for (std::size_t i = start_index + 1; i < m; ++i) {
    len += dist(c.point(i - 1), c.point(i));
    const double v = dist(c.point(i), c.point(start_index)) + lambda * len;
    total.consider(v - best, {argbest, i});
    if (v > best) {
      best = v;
      argbest = i;
    }
  }
  const std::size_t samples = m - 1 - start_index;
  return detail::finish(Property::lyapunov, lambda, tol, samples, total);
}

// Shared dispatch; lyapunov takes its anchor here so callers (CLI, bisection)
// can treat every property uniformly.
inline CheckReport run_check(const SampledCurve& c, Property p, double lambda,
                             double tol = kDefaultTol, int threads = 0,
                             std::size_t start_index = 0) {
  switch (p) {
    case Property::lambda_curve: return check_lambda_curve(c, lambda, tol, threads);
    case Property::lambda_cone: return check_lambda_cone(c, lambda, tol, threads);
    case Property::self_contracted: return check_self_contracted(c, tol, threads);
    case Property::self_expanded: return check_self_expanded(c, tol, threads);
    case Property::noncollinear: return check_noncollinear(c, lambda, tol, threads);
    case Property::conical_split: return check_conical_split(c, lambda, tol, threads);
    case Property::lyapunov: return check_lyapunov(c, lambda, start_index, tol);
  }
  throw DomainError("run_check: unknown property");
}

// Smallest lambda in [-1, 1] at which the (lambda-monotone) checker passes,
// found by bisection to within bisect_tol; +infinity when even
// lambda = 1 - bisect_tol fails.
inline double find_min_lambda(const SampledCurve& c, Property p, double tol = kDefaultTol,
                              double bisect_tol = 1e-6, int threads = 0) {
  if (p != Property::lambda_curve && p != Property::lambda_cone &&
      p != Property::noncollinear && p != Property::conical_split)
    throw DomainError("find_min_lambda: checker is not monotone in lambda");
  if (!(bisect_tol > 0.0)) throw DomainError("find_min_lambda: bisect_tol must be positive");
  auto passes = [&](double lam) { return run_check(c, p, lam, tol, threads).passed; };
  double hi = 1.0 - bisect_tol;
  if (!passes(hi)) return std::numeric_limits<double>::infinity();
  if (passes(-1.0)) return -1.0;
  double lo = -1.0;
  while (hi - lo > bisect_tol) {
    const double mid = 0.5 * (lo + hi);
    if (passes(mid))
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace eelkit
