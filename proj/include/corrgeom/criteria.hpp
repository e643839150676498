#pragma once

#include "corrgeom/bloch.hpp"

namespace corrgeom {

/// Outcome of a trace-norm Schmidt-number test. detected means the state has
/// Schmidt number > k_tested.
struct SchmidtVerdict {
    double trace_norm_value = 0.0;
    double bound = 0.0;
    int k_tested = 1;
    bool detected = false;
    double margin = 0.0;  // trace_norm_value - bound
};

/// Margins within this distance of zero count as ties and are not detections.
inline constexpr double kDetectionTieTol = 1e-9;

/// √((d1-1)(d2-1)) + √(d1 d2)(k-1). Requires 1 <= k <= d1 <= d2.
double schmidt_bound(int d1, int d2, int k);

/// ‖T‖_Tr against schmidt_bound.
SchmidtVerdict detect_schmidt(const BlochDecomposition &b, int k);

/// ‖D_x C D_y‖_Tr against √((d1-1+x²)(d2-1+y²)) + √(d1 d2)(k-1), where
/// C = [[1, βᵀ], [α, T]] and D_x = diag(x, 1, ..., 1).
SchmidtVerdict detect_generalized(const BipartiteState &s, int k, double x, double y);
SchmidtVerdict detect_generalized(const BlochDecomposition &b, int k, double x, double y);

}  // namespace corrgeom
