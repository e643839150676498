#include "corrgeom/moments.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corrgeom/errors.hpp"

namespace corrgeom {

namespace {

int local_dim_from_rows(Eigen::Index n) {
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n) + 1.0)));
    if (d < 2 || d * d - 1 != n) {
        throw InputError("correlation matrix side " + std::to_string(n) + " is not of the form d²-1");
    }
    return d;
}

struct Traces {
    double tr2;  // Tr(TTᵀ)
    double tr4;  // Tr(TTᵀTTᵀ)
};

Traces correlation_traces(const RMat &T) {
    // Use the smaller Gram matrix.
    const RMat g = T.rows() <= T.cols() ? RMat(T * T.transpose()) : RMat(T.transpose() * T);
    return {g.trace(), g.squaredNorm()};
}

}  // namespace

double s2_from_T(const RMat &T) {
    const double d1 = local_dim_from_rows(T.rows());
    const double d2 = local_dim_from_rows(T.cols());
    return correlation_traces(T).tr2 / ((d1 * d1 - 1.0) * (d2 * d2 - 1.0));
}

double s4_from_T(const RMat &T) {
    const double d1 = local_dim_from_rows(T.rows());
    const double d2 = local_dim_from_rows(T.cols());
    const Traces tr = correlation_traces(T);
    return 3.0 * (2.0 * tr.tr4 + tr.tr2 * tr.tr2) / ((std::pow(d1, 4) - 1.0) * (std::pow(d2, 4) - 1.0));
}

double r2_normalization(int d1, int d2) { return (d1 + 1.0) * (d2 + 1.0); }

double r4_normalization(int d1, int d2) {
    return (d1 + 1.0) * (d2 + 1.0) * (d1 * d1 + 1.0) * (d2 * d2 + 1.0) / (9.0 * (d1 - 1.0) * (d2 - 1.0));
}

MomentPoint normalized_point(const BlochDecomposition &b) {
    MomentPoint p;
    p.d1 = b.d1;
    p.d2 = b.d2;
    p.s2 = s2_from_T(b.T);
    p.s4 = s4_from_T(b.T);
    const Traces tr = correlation_traces(b.T);
    const double scale = (b.d1 - 1.0) * (b.d2 - 1.0);
    p.r2t = tr.tr2 / scale;
    p.r4t = (2.0 * tr.tr4 + tr.tr2 * tr.tr2) / (3.0 * scale * scale);
    return p;
}

double orthogonal_moment_single(double purity, int d, int t) {
    if (d < 2) {
        throw InputError("orthogonal_moment_single: d must be >= 2");
    }
    if (t < 0) {
        throw InputError("orthogonal_moment_single: t must be >= 0");
    }
    const double lo = 1.0 / d;
    if (!(purity >= lo - 1e-12 && purity <= 1.0 + 1e-12)) {
        throw InputError("orthogonal_moment_single: purity " + std::to_string(purity) + " outside [1/d, 1]");
    }
    if (t % 2 == 1) {
        return 0.0;
    }
    if (t == 0) {
        return 1.0;
    }
    const double bloch_sq = std::max(0.0, d * purity - 1.0);
    if (bloch_sq == 0.0) {
        return 0.0;
    }
    const double n = d * d - 1.0;
    const double log_ratio = std::lgamma(n / 2.0) + std::lgamma((t + 1.0) / 2.0) -
                             0.5 * std::log(std::numbers::pi) - std::lgamma((n + t) / 2.0);
    return std::exp(0.5 * t * std::log(bloch_sq) + log_ratio);
}

}  // namespace corrgeom
