#pragma once

// Small dense complex linear algebra. Every matrix in this project is at most
// (d^2) x (d^2) with d <= 10, so everything is dense and allocated on demand.

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace corrgeom {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace qla {

inline constexpr double kDefaultTol = 1e-10;

struct HermitianEig {
    RVec values;   // ascending
    CMat vectors;  // columns are eigenvectors
};

/// Monic real polynomial and its complex roots.
struct PolyRoots {
    std::vector<double> coefficients;  // ascending degree, last entry 1
    std::vector<cplx> roots;
};

bool all_finite(const CMat &m);
bool is_hermitian(const CMat &m, double tol = kDefaultTol);
bool is_psd(const CMat &m, double tol = kDefaultTol);
bool is_unitary(const CMat &m, double tol = kDefaultTol);

CMat kron(const CMat &a, const CMat &b);
double frobenius_sq(const CMat &m);

/// Eigendecomposition of a Hermitian matrix. Only the lower triangle is read.
HermitianEig hermitian_eig(const CMat &h);

/// Singular values, sorted descending, length min(rows, cols).
/// Throws InputError on non-finite entries.
std::vector<double> svd_values(const CMat &m);
std::vector<double> svd_values(const RMat &m);

double trace_norm(const CMat &m);
double trace_norm(const RMat &m);

/// All complex roots of a monic polynomial given in ascending order.
/// Throws NumericError (carrying the best residual) if the iteration does not
/// settle to |p(z)| < 1e-9 * max|coefficient|.
PolyRoots poly_roots(std::span<const double> coeffs);

/// Horner evaluation, ascending coefficients.
cplx poly_eval(std::span<const double> coeffs, cplx z);

}  // namespace qla
}  // namespace corrgeom
