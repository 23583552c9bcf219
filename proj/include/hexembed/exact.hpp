// Copyright 2026 The hexembed Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Exact orientation predicates on double inputs.
//
// A floating-point filter with a forward error bound decides most queries;
// the remainder are evaluated exactly with floating-point expansion
// arithmetic (nonoverlapping sums of doubles, after Priest and Shewchuk).
// The expansion code requires round-to-nearest and no fused multiply-add,
// which the library target enforces with -ffp-contract=off.

#pragma once

#include <cmath>
#include <vector>

#include "hexembed/types.hpp"

namespace hexembed::exact {

namespace detail {

inline constexpr double kEpsilon = 1.1102230246251565e-16;  // 2^-53
inline constexpr double kSplitter = 134217729.0;            // 2^27 + 1
inline constexpr double kOrient2dBound = (3.0 + 16.0 * kEpsilon) * kEpsilon;
inline constexpr double kOrient3dBound = (7.0 + 56.0 * kEpsilon) * kEpsilon;

using Expansion = std::vector<double>;

inline void two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  const double bv = x - a;
  const double av = x - bv;
  y = (a - av) + (b - bv);
}

inline void fast_two_sum(double a, double b, double& x, double& y) {
  x = a + b;
  y = b - (x - a);
}

inline void two_diff(double a, double b, double& x, double& y) {
  x = a - b;
  const double bv = a - x;
  const double av = x + bv;
  y = (a - av) + (bv - b);
}

inline void split(double a, double& hi, double& lo) {
  const double c = kSplitter * a;
  const double abig = c - a;
  hi = c - abig;
  lo = a - hi;
}

inline void two_product(double a, double b, double& x, double& y) {
  x = a * b;
  double ahi, alo, bhi, blo;
  split(a, ahi, alo);
  split(b, bhi, blo);
  const double err1 = x - ahi * bhi;
  const double err2 = err1 - alo * bhi;
  const double err3 = err2 - ahi * blo;
  y = alo * blo - err3;
}

inline Expansion difference(double a, double b) {
  double x, y;
  two_diff(a, b, x, y);
  Expansion e;
  if (y != 0.0) e.push_back(y);
  if (x != 0.0) e.push_back(x);
  return e;
}

/// e + b, zero components eliminated.
inline Expansion grow(const Expansion& e, double b) {
  Expansion h;
  h.reserve(e.size() + 1);
  double q = b;
  for (double ei : e) {
    double qn, hh;
    two_sum(q, ei, qn, hh);
    q = qn;
    if (hh != 0.0) h.push_back(hh);
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

inline Expansion sum(const Expansion& e, const Expansion& f) {
  Expansion h = e;
  for (double fi : f) h = grow(h, fi);
  return h;
}

inline Expansion negate(Expansion e) {
  for (double& v : e) v = -v;
  return e;
}

/// e * b, zero components eliminated.
inline Expansion scale(const Expansion& e, double b) {
  Expansion h;
  if (e.empty() || b == 0.0) return h;
  h.reserve(2 * e.size());
  double q, hh;
  two_product(e[0], b, q, hh);
  if (hh != 0.0) h.push_back(hh);
  for (std::size_t i = 1; i < e.size(); ++i) {
    double p1, p0, s;
    two_product(e[i], b, p1, p0);
    two_sum(q, p0, s, hh);
    if (hh != 0.0) h.push_back(hh);
    fast_two_sum(p1, s, q, hh);
    if (hh != 0.0) h.push_back(hh);
  }
  if (q != 0.0) h.push_back(q);
  return h;
}

inline Expansion product(const Expansion& e, const Expansion& f) {
  Expansion h;
  for (double fi : f) h = sum(h, scale(e, fi));
  return h;
}

/// Sign of a nonoverlapping expansion: its largest component decides.
inline int sign(const Expansion& e) {
  if (e.empty()) return 0;
  return e.back() > 0.0 ? 1 : (e.back() < 0.0 ? -1 : 0);
}

inline int orient2d_exact(const Point<2>& a, const Point<2>& b,
                          const Point<2>& c) {
  const Expansion ux = difference(b[0], a[0]);
  const Expansion uy = difference(b[1], a[1]);
  const Expansion vx = difference(c[0], a[0]);
  const Expansion vy = difference(c[1], a[1]);
  return sign(sum(product(ux, vy), negate(product(uy, vx))));
}

inline int orient3d_exact(const Point<3>& a, const Point<3>& b,
                          const Point<3>& c, const Point<3>& d) {
  Expansion u[3], v[3], w[3];
  for (int i = 0; i < 3; ++i) {
    u[i] = difference(b[i], a[i]);
    v[i] = difference(c[i], a[i]);
    w[i] = difference(d[i], a[i]);
  }
  // u . (v x w)
  const Expansion cx = sum(product(v[1], w[2]), negate(product(v[2], w[1])));
  const Expansion cy = sum(product(v[2], w[0]), negate(product(v[0], w[2])));
  const Expansion cz = sum(product(v[0], w[1]), negate(product(v[1], w[0])));
  return sign(
      sum(sum(product(u[0], cx), product(u[1], cy)), product(u[2], cz)));
}

}  // namespace detail

/// Sign of (b - a) x (c - a): +1 when a, b, c turn counterclockwise.
inline int orient2d(const Point<2>& a, const Point<2>& b, const Point<2>& c) {
  const double l = (b[0] - a[0]) * (c[1] - a[1]);
  const double r = (b[1] - a[1]) * (c[0] - a[0]);
  const double det = l - r;
  const double bound = detail::kOrient2dBound * (std::fabs(l) + std::fabs(r));
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::orient2d_exact(a, b, c);
}

/// Sign of ((b - a) x (c - a)) . (d - a): +1 when d lies on the side the
/// right-handed normal of triangle abc points to.
inline int orient3d(const Point<3>& a, const Point<3>& b, const Point<3>& c,
                    const Point<3>& d) {
  const double ux = b[0] - a[0], uy = b[1] - a[1], uz = b[2] - a[2];
  const double vx = c[0] - a[0], vy = c[1] - a[1], vz = c[2] - a[2];
  const double wx = d[0] - a[0], wy = d[1] - a[1], wz = d[2] - a[2];
  const double vywz = vy * wz, vzwy = vz * wy;
  const double vzwx = vz * wx, vxwz = vx * wz;
  const double vxwy = vx * wy, vywx = vy * wx;
  const double det =
      ux * (vywz - vzwy) + uy * (vzwx - vxwz) + uz * (vxwy - vywx);
  const double permanent = (std::fabs(vywz) + std::fabs(vzwy)) * std::fabs(ux) +
                           (std::fabs(vzwx) + std::fabs(vxwz)) * std::fabs(uy) +
                           (std::fabs(vxwy) + std::fabs(vywx)) * std::fabs(uz);
  const double bound = detail::kOrient3dBound * permanent;
  if (det > bound) return 1;
  if (-det > bound) return -1;
  return detail::orient3d_exact(a, b, c, d);
}

}  // namespace hexembed::exact
