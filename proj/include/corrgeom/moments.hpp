#pragma once

#include "corrgeom/bloch.hpp"

namespace corrgeom {

/// Raw orthogonal moments (s2, s4) and their normalized forms (r2t, r4t),
/// scaled so that a pure product state sits at (1, 1).
struct MomentPoint {
    int d1 = 0;
    int d2 = 0;
    double s2 = 0.0;
    double s4 = 0.0;
    double r2t = 0.0;
    double r4t = 0.0;
};

/// Tr(TTᵀ) / ((d1²-1)(d2²-1)); dimensions are read off the shape of T.
double s2_from_T(const RMat &T);

/// 3 [2 Tr(TTᵀTTᵀ) + Tr(TTᵀ)²] / ((d1⁴-1)(d2⁴-1)).
double s4_from_T(const RMat &T);

MomentPoint normalized_point(const BlochDecomposition &b);

/// Normalization prefactors mapping raw second/fourth moments to r2t/r4t.
double r2_normalization(int d1, int d2);
double r4_normalization(int d1, int d2);

/// Orthogonal moment of a single qudit of the given purity:
/// |α|^t Γ((d²-1)/2) Γ((t+1)/2) / (√π Γ((d²-1+t)/2)) for even t, 0 for odd t,
/// with |α|² = d·purity - 1.
double orthogonal_moment_single(double purity, int d, int t);

}  // namespace corrgeom
