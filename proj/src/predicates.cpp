#include "cavdetect/predicates.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace cavdetect {

namespace {

// Compensated (double-double) arithmetic: each value is an unevaluated sum
// hi + lo with |lo| <= ulp(hi)/2. Gives ~106 significand bits, enough to
// settle near-degenerate determinants of coordinates with PDB-scale spread.
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  double err = (a - (s - bb)) + (b - bb);
  return {s, err};
}

inline DD two_prod(double a, double b) {
  double p = a * b;
  double err = std::fma(a, b, -p);
  return {p, err};
}

inline DD dd_add(const DD& a, const DD& b) {
  DD s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  DD r = two_sum(s.hi, lo);
  return r;
}

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, {-b.hi, -b.lo}); }

inline DD dd_mul(const DD& a, const DD& b) {
  DD p = two_prod(a.hi, b.hi);
  p.lo += a.hi * b.lo + a.lo * b.hi;
  return two_sum(p.hi, p.lo);
}

inline DD dd_from(double a) { return {a, 0.0}; }

inline DD dd_diff(double a, double b) {
  // exact difference of two doubles
  return two_sum(a, -b);
}

struct DDVec {
  DD x, y, z;
};

inline DDVec dd_sub_points(const Vec3& p, const Vec3& q) {
  return {dd_diff(p.x, q.x), dd_diff(p.y, q.y), dd_diff(p.z, q.z)};
}

inline DD dd_det2(const DD& a, const DD& b, const DD& c, const DD& d) {
  return dd_sub(dd_mul(a, d), dd_mul(b, c));
}

inline DD dd_det3(const DDVec& r0, const DDVec& r1, const DDVec& r2) {
  DD m0 = dd_det2(r1.y, r1.z, r2.y, r2.z);
  DD m1 = dd_det2(r1.x, r1.z, r2.x, r2.z);
  DD m2 = dd_det2(r1.x, r1.y, r2.x, r2.y);
  return dd_add(dd_sub(dd_mul(r0.x, m0), dd_mul(r0.y, m1)), dd_mul(r0.z, m2));
}

// Relative cutoff below which the double fast path is not trusted.
constexpr double kFastRel = 1e-10;
// Relative cutoff below which even the double-double result counts as zero.
constexpr double kExactRel = 1e-28;

int orient3d_sign_impl(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  double bx = b.x - a.x, by = b.y - a.y, bz = b.z - a.z;
  double cx = c.x - a.x, cy = c.y - a.y, cz = c.z - a.z;
  double dx = d.x - a.x, dy = d.y - a.y, dz = d.z - a.z;

  double m0 = cy * dz - cz * dy;
  double m1 = cx * dz - cz * dx;
  double m2 = cx * dy - cy * dx;
  double det = bx * m0 - by * m1 + bz * m2;

  double scale = std::abs(bx * m0) + std::abs(by * m1) + std::abs(bz * m2);
  if (std::abs(det) > kFastRel * scale)
    return det > 0 ? 1 : -1;

  DDVec rb = dd_sub_points(b, a);
  DDVec rc = dd_sub_points(c, a);
  DDVec rd = dd_sub_points(d, a);
  DD dd = dd_det3(rb, rc, rd);
  if (std::abs(dd.hi) <= kExactRel * scale)
    return 0;
  return dd.hi > 0 ? 1 : -1;
}

int insphere_sign_impl(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e) {
  double ax = a.x - e.x, ay = a.y - e.y, az = a.z - e.z;
  double bx = b.x - e.x, by = b.y - e.y, bz = b.z - e.z;
  double cx = c.x - e.x, cy = c.y - e.y, cz = c.z - e.z;
  double dx = d.x - e.x, dy = d.y - e.y, dz = d.z - e.z;

  double al = ax * ax + ay * ay + az * az;
  double bl = bx * bx + by * by + bz * bz;
  double cl = cx * cx + cy * cy + cz * cz;
  double dl = dx * dx + dy * dy + dz * dz;

  // expand along the lifted column
  double ab = ax * by - bx * ay, ac = ax * cy - cx * ay, ad = ax * dy - dx * ay;
  double bc = bx * cy - cx * by, bd = bx * dy - dx * by, cd = cx * dy - dx * cy;

  double abc = az * bc - bz * ac + cz * ab;
  double abd = az * bd - bz * ad + dz * ab;
  double acd = az * cd - cz * ad + dz * ac;
  double bcd = bz * cd - cz * bd + dz * bc;

  double det = dl * abc - cl * abd + bl * acd - al * bcd;
  double scale = std::abs(dl * abc) + std::abs(cl * abd) + std::abs(bl * acd) + std::abs(al * bcd);
  if (std::abs(det) > kFastRel * scale)
    return det > 0 ? 1 : -1;

  // double-double re-evaluation of the same cofactor expansion
  DDVec ra = dd_sub_points(a, e);
  DDVec rb = dd_sub_points(b, e);
  DDVec rc = dd_sub_points(c, e);
  DDVec rd = dd_sub_points(d, e);
  auto lift = [](const DDVec& v) {
    return dd_add(dd_add(dd_mul(v.x, v.x), dd_mul(v.y, v.y)), dd_mul(v.z, v.z));
  };
  DD la = lift(ra), lb = lift(rb), lc = lift(rc), ld = lift(rd);

  DD dabc = dd_det3(ra, rb, rc);
  DD dabd = dd_det3(ra, rb, rd);
  DD dacd = dd_det3(ra, rc, rd);
  DD dbcd = dd_det3(rb, rc, rd);

  DD total = dd_sub(dd_mul(ld, dabc), dd_mul(lc, dabd));
  total = dd_add(total, dd_mul(lb, dacd));
  total = dd_sub(total, dd_mul(la, dbcd));

  if (std::abs(total.hi) <= kExactRel * scale)
    return 0;
  return total.hi > 0 ? 1 : -1;
}

}  // namespace

int orient3d_sign(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) {
  return orient3d_sign_impl(a, b, c, d);
}

int insphere_sign(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e) {
  return insphere_sign_impl(a, b, c, d, e);
}

bool insphere_conflict(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e,
                       int ia, int ib, int ic, int id, int ie) {
  int s = insphere_sign_impl(a, b, c, d, e);
  if (s != 0)
    return s < 0;

  // Zero determinant: the five points are cospherical. Expanding the lifted
  // determinant in the perturbation weights w_i = -eps^(i+1) gives
  //   D(eps) = D0 + sum_i eps^(i+1) * C_i
  // with C_i an orient3d of the other four points (row-position signs below).
  // The lowest input index with a nonzero coefficient dominates.
  struct Term {
    int index;
    int coeff;
  };
  std::array<Term, 5> terms = {{
      {ia, orient3d_sign(b, c, d, e)},
      {ib, -orient3d_sign(a, c, d, e)},
      {ic, orient3d_sign(a, b, d, e)},
      {id, -orient3d_sign(a, b, c, e)},
      {ie, orient3d_sign(a, b, c, d)},
  }};
  std::sort(terms.begin(), terms.end(),
            [](const Term& l, const Term& r) { return l.index < r.index; });
  for (const Term& t : terms)
    if (t.coeff != 0)
      return t.coeff < 0;
  return false;  // unreachable for a valid tetrahedron
}

}  // namespace cavdetect
