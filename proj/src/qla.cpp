#include "corrgeom/qla.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "corrgeom/errors.hpp"

namespace corrgeom::qla {

bool all_finite(const CMat &m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) {
                return false;
            }
        }
    }
    return true;
}

bool is_hermitian(const CMat &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_psd(const CMat &m, double tol) {
    if (!is_hermitian(m, tol)) {
        return false;
    }
    return hermitian_eig(m).values.minCoeff() >= -tol;
}

bool is_unitary(const CMat &m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    CMat g = m.adjoint() * m;
    g -= CMat::Identity(m.rows(), m.cols());
    return g.cwiseAbs().maxCoeff() <= tol;
}

CMat kron(const CMat &a, const CMat &b) {
    CMat out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

double frobenius_sq(const CMat &m) { return m.squaredNorm(); }

HermitianEig hermitian_eig(const CMat &h) {
    if (h.rows() != h.cols()) {
        throw InputError("hermitian_eig: matrix is not square");
    }
    if (!all_finite(h)) {
        throw InputError("hermitian_eig: non-finite entries");
    }
    Eigen::SelfAdjointEigenSolver<CMat> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericError("hermitian_eig: eigensolver did not converge", 0.0);
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

std::vector<double> svd_values(const CMat &m) {
    if (!all_finite(m)) {
        throw InputError("svd_values: non-finite entries");
    }
    if (m.size() == 0) {
        return {};
    }
    Eigen::JacobiSVD<CMat> svd(m);
    const RVec &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

std::vector<double> svd_values(const RMat &m) {
    if (!m.allFinite()) {
        throw InputError("svd_values: non-finite entries");
    }
    if (m.size() == 0) {
        return {};
    }
    Eigen::JacobiSVD<RMat> svd(m);
    const RVec &s = svd.singularValues();
    return {s.data(), s.data() + s.size()};
}

double trace_norm(const CMat &m) {
    double sum = 0.0;
    for (double s : svd_values(m)) {
        sum += s;
    }
    return sum;
}

double trace_norm(const RMat &m) {
    double sum = 0.0;
    for (double s : svd_values(m)) {
        sum += s;
    }
    return sum;
}

cplx poly_eval(std::span<const double> coeffs, cplx z) {
    cplx acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

namespace {

cplx poly_eval_derivative(std::span<const double> coeffs, cplx z) {
    cplx acc = 0.0;
    for (std::size_t i = coeffs.size() - 1; i >= 1; --i) {
        acc = acc * z + static_cast<double>(i) * coeffs[i];
    }
    return acc;
}

// Fujiwara's bound on the root moduli of a monic polynomial.
double root_radius(std::span<const double> c) {
    const std::size_t n = c.size() - 1;
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double a = std::abs(c[i]);
        if (i == 0) {
            a /= 2.0;
        }
        r = std::max(r, std::pow(a, 1.0 / static_cast<double>(n - i)));
    }
    return std::max(2.0 * r, 1e-3);
}

bool root_order(const cplx &a, const cplx &b) {
    if (a.real() != b.real()) {
        return a.real() > b.real();
    }
    return a.imag() > b.imag();
}

}  // namespace

PolyRoots poly_roots(std::span<const double> coeffs) {
    constexpr std::size_t kMaxDegree = 16;
    constexpr int kMaxIter = 1000;

    if (coeffs.size() < 2) {
        throw InputError("poly_roots: polynomial degree must be at least 1");
    }
    const std::size_t n = coeffs.size() - 1;
    if (n > kMaxDegree) {
        throw InputError("poly_roots: degree " + std::to_string(n) + " exceeds 16");
    }
    for (double c : coeffs) {
        if (!std::isfinite(c)) {
            throw InputError("poly_roots: non-finite coefficient");
        }
    }
    if (std::abs(coeffs[n] - 1.0) > 1e-12) {
        throw InputError("poly_roots: polynomial must be monic");
    }

    double scale = 0.0;
    for (double c : coeffs) {
        scale = std::max(scale, std::abs(c));
    }
    const double tol = 1e-9 * scale;

    PolyRoots out;
    out.coefficients.assign(coeffs.begin(), coeffs.end());

    // Aberth-Ehrlich simultaneous iteration from points on a circle.
    std::vector<cplx> z(n);
    const double radius = root_radius(coeffs);
    for (std::size_t k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n) + 0.4;
        z[k] = std::polar(radius, angle);
    }

    for (int iter = 0; iter < kMaxIter; ++iter) {
        double max_step = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const cplx p = poly_eval(coeffs, z[k]);
            if (p == cplx(0.0)) {
                continue;
            }
            const cplx dp = poly_eval_derivative(coeffs, z[k]);
            cplx repulsion = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j != k) {
                    repulsion += 1.0 / (z[k] - z[j]);
                }
            }
            cplx step;
            if (dp == cplx(0.0)) {
                step = cplx(1e-8, 1e-8) * std::max(1.0, std::abs(z[k]));
            } else {
                const cplx ratio = p / dp;
                step = ratio / (1.0 - ratio * repulsion);
            }
            z[k] -= step;
            max_step = std::max(max_step, std::abs(step) / std::max(1.0, std::abs(z[k])));
        }
        if (max_step < 1e-15) {
            break;
        }
    }

    // Newton polish; keep a step only if it lowers the residual.
    double worst = 0.0;
    for (auto &root : z) {
        double res = std::abs(poly_eval(coeffs, root));
        for (int i = 0; i < 5 && res > 0.0; ++i) {
            const cplx dp = poly_eval_derivative(coeffs, root);
            if (dp == cplx(0.0)) {
                break;
            }
            const cplx cand = root - poly_eval(coeffs, root) / dp;
            const double cand_res = std::abs(poly_eval(coeffs, cand));
            if (!(cand_res < res)) {
                break;
            }
            root = cand;
            res = cand_res;
        }
        worst = std::max(worst, res);
    }
    if (!(worst < tol)) {
        throw NumericError("poly_roots: no convergence, best residual " + std::to_string(worst), worst);
    }

    // Real coefficients: make conjugate pairs exact so ordering is stable.
    const double pair_tol = 1e-7;
    std::vector<bool> paired(z.size(), false);
    for (std::size_t a = 0; a < z.size(); ++a) {
        if (paired[a] || std::abs(z[a].imag()) <= pair_tol * std::max(1.0, std::abs(z[a]))) {
            continue;
        }
        std::size_t best = a;
        double best_dist = INFINITY;
        for (std::size_t b = a + 1; b < z.size(); ++b) {
            const double dist = std::abs(z[b] - std::conj(z[a]));
            if (!paired[b] && dist < best_dist) {
                best = b;
                best_dist = dist;
            }
        }
        if (best != a && best_dist <= pair_tol * std::max(1.0, std::abs(z[a]))) {
            const double re = 0.5 * (z[a].real() + z[best].real());
            const double im = 0.5 * (std::abs(z[a].imag()) + std::abs(z[best].imag()));
            z[a] = cplx(re, im);
            z[best] = cplx(re, -im);
            paired[a] = paired[best] = true;
        }
    }

    std::sort(z.begin(), z.end(), root_order);
    out.roots = std::move(z);
    return out;
}

}  // namespace corrgeom::qla
