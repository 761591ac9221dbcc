#pragma once

#include "cavdetect/geom3.hpp"

namespace cavdetect {

// Geometric predicates with an extended-precision fallback. The fast path
// evaluates in double; results too close to zero are re-evaluated in
// compensated double-double arithmetic before a sign is reported.

// Sign of det [b-a; c-a; d-a]. Positive means d lies on the side of the
// plane (a,b,c) given by the right-hand rule normal (b-a) x (c-a).
int orient3d_sign(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d);

// Sign of the 4x4 insphere determinant with rows (q - e, |q - e|^2) for
// q in a,b,c,d. For a positively oriented tetrahedron (a,b,c,d), a negative
// sign means e lies strictly inside the circumsphere.
int insphere_sign(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e);

// Tie-broken insphere test: true iff e lies inside the circumsphere of the
// positively oriented tetrahedron (a,b,c,d) after symbolic perturbation.
// Each point i is assigned the lifted-paraboloid weight -eps^(i+1); a zero
// determinant is resolved by the lowest-index nonzero perturbation term, so
// cospherical subsets get a deterministic, index-based tie-break.
bool insphere_conflict(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d, const Vec3& e,
                       int ia, int ib, int ic, int id, int ie);

}  // namespace cavdetect
