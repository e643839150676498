#include "corrgeom/criteria.hpp"

#include <cmath>
#include <string>

#include "corrgeom/errors.hpp"

namespace corrgeom {

namespace {

void check_k(int d1, int d2, int k) {
    if (d1 < 1 || d1 > d2) {
        throw InputError("Schmidt bound requires 1 <= d1 <= d2");
    }
    if (k < 1 || k > d1) {
        throw InputError("Schmidt number k=" + std::to_string(k) + " outside [1, " + std::to_string(d1) + "]");
    }
}

SchmidtVerdict make_verdict(double value, double bound, int k) {
    SchmidtVerdict v;
    v.trace_norm_value = value;
    v.bound = bound;
    v.k_tested = k;
    v.margin = value - bound;
    v.detected = v.margin > kDetectionTieTol;
    return v;
}

}  // namespace

double schmidt_bound(int d1, int d2, int k) {
    check_k(d1, d2, k);
    return std::sqrt(static_cast<double>(d1 - 1) * (d2 - 1)) + std::sqrt(static_cast<double>(d1) * d2) * (k - 1);
}

SchmidtVerdict detect_schmidt(const BlochDecomposition &b, int k) {
    const double bound = schmidt_bound(b.d1, b.d2, k);
    return make_verdict(qla::trace_norm(b.T), bound, k);
}

SchmidtVerdict detect_generalized(const BlochDecomposition &b, int k, double x, double y) {
    check_k(b.d1, b.d2, k);
    if (!(x >= 0.0) || !(y >= 0.0)) {
        throw InputError("detect_generalized: x and y must be non-negative");
    }
    RMat c = b.coefficient_matrix();
    c.row(0) *= x;
    c.col(0) *= y;
    const double bound = std::sqrt((b.d1 - 1 + x * x) * (b.d2 - 1 + y * y)) +
                         std::sqrt(static_cast<double>(b.d1) * b.d2) * (k - 1);
    return make_verdict(qla::trace_norm(c), bound, k);
}

SchmidtVerdict detect_generalized(const BipartiteState &s, int k, double x, double y) {
    return detect_generalized(decompose(s), k, x, y);
}

}  // namespace corrgeom
