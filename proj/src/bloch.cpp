#include "corrgeom/bloch.hpp"

#include <cmath>
#include <string>

#include "corrgeom/errors.hpp"

namespace corrgeom {

OperatorBasis gell_mann_basis(int d) {
    if (d < 2) {
        throw InputError("gell_mann_basis: dimension must be >= 2, got " + std::to_string(d));
    }
    // Standard Gell-Mann normalization is Tr(λ²) = 2.
    const double scale = std::sqrt(d / 2.0);
    const cplx i_unit(0.0, 1.0);

    OperatorBasis basis;
    basis.d = d;
    basis.elems.reserve(static_cast<std::size_t>(d) * d);
    basis.elems.push_back(CMat::Identity(d, d));

    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMat m = CMat::Zero(d, d);
            m(j, k) = scale;
            m(k, j) = scale;
            basis.elems.push_back(std::move(m));
        }
    }
    for (int j = 0; j < d; ++j) {
        for (int k = j + 1; k < d; ++k) {
            CMat m = CMat::Zero(d, d);
            m(j, k) = -i_unit * scale;
            m(k, j) = i_unit * scale;
            basis.elems.push_back(std::move(m));
        }
    }
    for (int l = 1; l < d; ++l) {
        const double norm = scale * std::sqrt(2.0 / (l * (l + 1.0)));
        CMat m = CMat::Zero(d, d);
        for (int j = 0; j < l; ++j) {
            m(j, j) = norm;
        }
        m(l, l) = -norm * l;
        basis.elems.push_back(std::move(m));
    }
    return basis;
}

CMat swap_subsystems(const CMat &rho, int d1, int d2) {
    CMat out(rho.rows(), rho.cols());
    for (int a = 0; a < d1; ++a) {
        for (int b = 0; b < d2; ++b) {
            for (int a2 = 0; a2 < d1; ++a2) {
                for (int b2 = 0; b2 < d2; ++b2) {
                    out(b * d1 + a, b2 * d1 + a2) = rho(a * d2 + b, a2 * d2 + b2);
                }
            }
        }
    }
    return out;
}

BipartiteState::BipartiteState(CMat rho, int d1, int d2) : rho_(std::move(rho)), d1_(d1), d2_(d2) {
    if (d1 < 1 || d2 < 1) {
        throw InputError("state: local dimensions must be positive");
    }
    const Eigen::Index n = static_cast<Eigen::Index>(d1) * d2;
    if (rho_.rows() != n || rho_.cols() != n) {
        throw InputError("state: density matrix must be " + std::to_string(n) + "x" + std::to_string(n));
    }
    if (!qla::all_finite(rho_)) {
        throw InputError("state: non-finite entries");
    }
    if (!qla::is_hermitian(rho_, kHermitianTol)) {
        throw InputError("state: density matrix is not Hermitian");
    }
    if (std::abs(rho_.trace() - cplx(1.0)) > kTraceTol) {
        throw InputError("state: trace differs from 1");
    }
    const double min_eig = qla::hermitian_eig(rho_).values.minCoeff();
    if (min_eig < -kPsdTol) {
        throw InputError("state: density matrix is not positive semidefinite (min eigenvalue " +
                         std::to_string(min_eig) + ")");
    }
    if (d1_ > d2_) {
        rho_ = swap_subsystems(rho_, d1_, d2_);
        std::swap(d1_, d2_);
        swapped_ = true;
    }
}

RMat BlochDecomposition::coefficient_matrix() const {
    RMat c(alpha.size() + 1, beta.size() + 1);
    c(0, 0) = 1.0;
    c.block(0, 1, 1, beta.size()) = beta.transpose();
    c.block(1, 0, alpha.size(), 1) = alpha;
    c.block(1, 1, T.rows(), T.cols()) = T;
    return c;
}

namespace {

// Column i holds the entries of basis element i, flattened as index (row*d + col)
// of the element itself (transposed = false) or of its transpose.
CMat vectorized_basis(const OperatorBasis &basis, bool transposed) {
    const int d = basis.d;
    CMat out(d * d, static_cast<Eigen::Index>(basis.elems.size()));
    for (std::size_t i = 0; i < basis.elems.size(); ++i) {
        const CMat &m = basis.elems[i];
        for (int r = 0; r < d; ++r) {
            for (int c = 0; c < d; ++c) {
                out(r * d + c, static_cast<Eigen::Index>(i)) = transposed ? m(c, r) : m(r, c);
            }
        }
    }
    return out;
}

// R[(a a'), (b b')] = ρ[(a b), (a' b')]
CMat realign(const CMat &rho, int d1, int d2) {
    CMat r(d1 * d1, d2 * d2);
    for (int a = 0; a < d1; ++a) {
        for (int a2 = 0; a2 < d1; ++a2) {
            for (int b = 0; b < d2; ++b) {
                for (int b2 = 0; b2 < d2; ++b2) {
                    r(a * d1 + a2, b * d2 + b2) = rho(a * d2 + b, a2 * d2 + b2);
                }
            }
        }
    }
    return r;
}

CMat unrealign(const CMat &r, int d1, int d2) {
    CMat rho(d1 * d2, d1 * d2);
    for (int a = 0; a < d1; ++a) {
        for (int a2 = 0; a2 < d1; ++a2) {
            for (int b = 0; b < d2; ++b) {
                for (int b2 = 0; b2 < d2; ++b2) {
                    rho(a * d2 + b, a2 * d2 + b2) = r(a * d1 + a2, b * d2 + b2);
                }
            }
        }
    }
    return rho;
}

}  // namespace

BlochDecomposition decompose(const BipartiteState &s, const OperatorBasis &basis_a, const OperatorBasis &basis_b) {
    const int d1 = s.d1();
    const int d2 = s.d2();
    if (basis_a.d != d1 || basis_b.d != d2) {
        throw InputError("decompose: basis dimensions (" + std::to_string(basis_a.d) + ", " +
                         std::to_string(basis_b.d) + ") do not match state (" + std::to_string(d1) + ", " +
                         std::to_string(d2) + ")");
    }
    // Tr(ρ λ_i⊗λ̃_j) = Σ ρ[(a b),(a' b')] λ_i[a',a] λ̃_j[b',b]
    const CMat coeffs = vectorized_basis(basis_a, true).transpose() * realign(s.rho(), d1, d2) *
                        vectorized_basis(basis_b, true);
    const double max_imag = coeffs.imag().cwiseAbs().maxCoeff();
    if (max_imag > 1e-8) {
        throw InputError("decompose: Bloch coefficients have imaginary part " + std::to_string(max_imag) +
                         " (non-Hermitian state or basis)");
    }
    const RMat c = coeffs.real();

    BlochDecomposition out;
    out.d1 = d1;
    out.d2 = d2;
    out.alpha = c.block(1, 0, d1 * d1 - 1, 1);
    out.beta = c.block(0, 1, 1, d2 * d2 - 1).transpose();
    out.T = c.block(1, 1, d1 * d1 - 1, d2 * d2 - 1);
    out.swapped = s.swapped();
    return out;
}

BlochDecomposition decompose(const BipartiteState &s) {
    return decompose(s, gell_mann_basis(s.d1()), gell_mann_basis(s.d2()));
}

BipartiteState reconstruct(const BlochDecomposition &b, const OperatorBasis &basis_a, const OperatorBasis &basis_b) {
    const int d1 = b.d1;
    const int d2 = b.d2;
    if (basis_a.d != d1 || basis_b.d != d2) {
        throw InputError("reconstruct: basis dimensions do not match decomposition");
    }
    if (b.alpha.size() != d1 * d1 - 1 || b.beta.size() != d2 * d2 - 1 || b.T.rows() != d1 * d1 - 1 ||
        b.T.cols() != d2 * d2 - 1) {
        throw InputError("reconstruct: Bloch data sizes inconsistent with dimensions");
    }
    const CMat c = b.coefficient_matrix().cast<cplx>();
    const CMat r = vectorized_basis(basis_a, false) * c * vectorized_basis(basis_b, false).transpose() /
                   static_cast<double>(d1 * d2);
    CMat rho = unrealign(r, d1, d2);
    try {
        return BipartiteState(std::move(rho), d1, d2);
    } catch (const InputError &e) {
        throw InputError(std::string("reconstruct: Bloch data is not a physical state: ") + e.what());
    }
}

BipartiteState reconstruct(const BlochDecomposition &b) {
    return reconstruct(b, gell_mann_basis(b.d1), gell_mann_basis(b.d2));
}

CorrelationSpectrum correlation_spectrum(const BlochDecomposition &b) {
    CorrelationSpectrum out;
    out.sigmas = qla::svd_values(b.T);
    out.sigmas.resize(static_cast<std::size_t>(b.d1 * b.d1 - 1), 0.0);
    return out;
}

BipartiteState apply_local_unitaries(const BipartiteState &s, const CMat &ua, const CMat &ub) {
    const CMat w = qla::kron(ua, ub);
    CMat rho = w * s.rho() * w.adjoint();
    rho = 0.5 * (rho + rho.adjoint());
    return BipartiteState(std::move(rho), s.d1(), s.d2());
}

BipartiteState product_state(int d1, int d2) {
    CMat rho = CMat::Zero(d1 * d2, d1 * d2);
    rho(0, 0) = 1.0;
    return BipartiteState(std::move(rho), d1, d2);
}

BipartiteState phi_plus_state(int d) {
    CVec psi = CVec::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        psi(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    }
    return BipartiteState(psi * psi.adjoint(), d, d);
}

BipartiteState maximally_mixed_state(int d1, int d2) {
    const int n = d1 * d2;
    return BipartiteState(CMat::Identity(n, n) / static_cast<double>(n), d1, d2);
}

CMat partial_trace_b(const CMat &rho, int d1, int d2) {
    CMat out = CMat::Zero(d1, d1);
    for (int a = 0; a < d1; ++a) {
        for (int a2 = 0; a2 < d1; ++a2) {
            for (int b = 0; b < d2; ++b) {
                out(a, a2) += rho(a * d2 + b, a2 * d2 + b);
            }
        }
    }
    return out;
}

}  // namespace corrgeom
