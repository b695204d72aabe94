#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "eelkit/core.hpp"

namespace eelkit {

using SphereNet = std::vector<Vec>;

namespace detail {

// Icosahedron vertex/face lists, the seed for the d = 3 net.
inline void icosahedron(std::vector<Vec>& verts, std::vector<std::array<std::size_t, 3>>& faces) {
  const double p = (1.0 + std::sqrt(5.0)) / 2.0;
  const double n = std::sqrt(1.0 + p * p);
  const double a = 1.0 / n, b = p / n;
  verts = {
      {-a, b, 0}, {a, b, 0}, {-a, -b, 0}, {a, -b, 0}, {0, -a, b}, {0, a, b},
      {0, -a, -b}, {0, a, -b}, {b, 0, -a}, {b, 0, a}, {-b, 0, -a}, {-b, 0, a},
  };
  faces = {
      {0, 11, 5}, {0, 5, 1}, {0, 1, 7}, {0, 7, 10}, {0, 10, 11},
      {1, 5, 9}, {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
      {3, 9, 4}, {3, 4, 2}, {3, 2, 6}, {3, 6, 8}, {3, 8, 9},
      {4, 9, 5}, {2, 4, 11}, {6, 2, 10}, {8, 6, 7}, {9, 8, 1},
  };
}

// Largest angle from a face's spherical circumcenter to its vertices; for the
// near-equilateral faces of a subdivided icosahedron this is the covering
// radius contribution of that face.
inline double face_circumangle(const Vec& a, const Vec& b, const Vec& c) {
  Vec s{a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]};
  const double n = norm(s);
  if (n < 1e-12) return M_PI;  // degenerate face spans a great circle
  double worst = 1.0;
  for (const Vec* v : {&a, &b, &c})
    worst = std::min(worst, dot(s, *v) / n);
  return std::acos(std::clamp(worst, -1.0, 1.0));
}

}  // namespace detail

// Finite set of unit directions such that every unit vector has inner product
// strictly greater than eta with at least one of them.
//   d = 1: both signs.
//   d = 2: equally spaced directions, count floor(pi/arccos eta) + 1.
//   d = 3: icosahedron refined until every face circumangle clears arccos eta.
//   d >= 4: grid on the cube surface, radially normalized; grid spacing s with
//           s sqrt(d-1) / 2 < 2 sin(arccos(eta)/2) bounds the chord to the
//           nearest grid direction, since radial projection onto the sphere is
//           1-Lipschitz outside the unit ball.
inline SphereNet build_sphere_net(std::size_t d, double eta) {
  if (d < 1) throw DomainError("build_sphere_net: dimension must be >= 1");
  if (!(eta >= 0.0 && eta < 1.0)) throw DomainError("build_sphere_net: eta must lie in [0, 1)");
  SphereNet net;
  if (d == 1) {
    net.push_back(Vec{1.0});
    net.push_back(Vec{-1.0});
    return net;
  }
  const double theta = std::acos(eta);  // required angular covering radius
  if (d == 2) {
    const std::size_t kcount = static_cast<std::size_t>(std::floor(M_PI / theta)) + 1;
    net.reserve(kcount);
    for (std::size_t i = 0; i < kcount; ++i) {
      const double a = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(kcount);
      net.push_back(Vec{std::cos(a), std::sin(a)});
    }
    return net;
  }
  if (d == 3) {
    std::vector<Vec> verts;
    std::vector<std::array<std::size_t, 3>> faces;
    detail::icosahedron(verts, faces);
    for (int level = 0; level < 16; ++level) {
      double worst = 0.0;
      for (const auto& f : faces)
        worst = std::max(worst, detail::face_circumangle(verts[f[0]], verts[f[1]], verts[f[2]]));
      if (worst < theta * 0.9999) break;
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> midpoint;
      auto mid = [&](std::size_t i, std::size_t j) {
        auto key = std::minmax(i, j);
        auto it = midpoint.find(key);
        if (it != midpoint.end()) return it->second;
        Vec m{verts[i][0] + verts[j][0], verts[i][1] + verts[j][1], verts[i][2] + verts[j][2]};
        const double n = norm(m);
        for (double& x : m) x /= n;
        verts.push_back(std::move(m));
        midpoint.emplace(key, verts.size() - 1);
        return verts.size() - 1;
      };
      std::vector<std::array<std::size_t, 3>> next;
      next.reserve(faces.size() * 4);
      for (const auto& f : faces) {
        const std::size_t ab = mid(f[0], f[1]), bc = mid(f[1], f[2]), ca = mid(f[2], f[0]);
        next.push_back({f[0], ab, ca});
        next.push_back({f[1], bc, ab});
        next.push_back({f[2], ca, bc});
        next.push_back({ab, bc, ca});
      }
      faces = std::move(next);
    }
    return verts;
  }

  // d >= 4: cube-surface grid.
  const double chord = 2.0 * std::sin(theta / 2.0);
  const double s = 0.99 * 2.0 * chord / std::sqrt(static_cast<double>(d - 1));
  const std::size_t cells = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(2.0 / s)));
  std::map<std::vector<long long>, bool> seen;
  std::vector<std::size_t> counter(d - 1, 0);
  for (std::size_t facet_axis = 0; facet_axis < d; ++facet_axis) {
    for (int facet_sign = -1; facet_sign <= 1; facet_sign += 2) {
      std::fill(counter.begin(), counter.end(), 0);
      for (;;) {
        Vec v(d);
        v[facet_axis] = static_cast<double>(facet_sign);
        std::size_t t = 0;
        for (std::size_t ax = 0; ax < d; ++ax) {
          if (ax == facet_axis) continue;
          v[ax] = -1.0 + 2.0 * static_cast<double>(counter[t]) / static_cast<double>(cells);
          ++t;
        }
        const double n = norm(v);
        for (double& x : v) x /= n;
        std::vector<long long> key(d);
        for (std::size_t ax = 0; ax < d; ++ax)
          key[ax] = static_cast<long long>(std::llround(v[ax] * 1e9));
        if (seen.emplace(std::move(key), true).second) net.push_back(std::move(v));
        std::size_t carry = 0;
        while (carry < d - 1 && ++counter[carry] > cells) {
          counter[carry] = 0;
          ++carry;
        }
        if (carry == d - 1) break;
      }
    }
  }
  return net;
}

}  // namespace eelkit
