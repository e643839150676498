#pragma once

#include <vector>

#include "corrgeom/qla.hpp"

namespace corrgeom {

/// Orthogonal Hermitian operator basis {λ_0 = 1, λ_1, ..., λ_{d²-1}} with
/// Tr(λ_i λ_j) = d δ_ij.
struct OperatorBasis {
    int d = 0;
    std::vector<CMat> elems;
};

/// Generalized Gell-Mann matrices rescaled to Tr(λ_i λ_j) = d δ_ij.
/// Order: identity, symmetric pairs (j<k, lexicographic), antisymmetric pairs,
/// then the d-1 diagonal elements. For d = 2 this is (1, σx, σy, σz).
OperatorBasis gell_mann_basis(int d);

/// A validated bipartite density matrix on C^{d1} ⊗ C^{d2} with d1 <= d2.
///
/// Inputs with d1 > d2 are accepted and the two subsystems are swapped;
/// swapped() records that this happened.
class BipartiteState {
public:
    static constexpr double kHermitianTol = 1e-10;
    static constexpr double kTraceTol = 1e-10;
    static constexpr double kPsdTol = 1e-9;

    /// Throws InputError if rho is not a d1*d2 square, non-Hermitian, not of
    /// unit trace, or has an eigenvalue below -1e-9.
    BipartiteState(CMat rho, int d1, int d2);

    int d1() const noexcept { return d1_; }
    int d2() const noexcept { return d2_; }
    const CMat &rho() const noexcept { return rho_; }
    bool swapped() const noexcept { return swapped_; }

private:
    CMat rho_;
    int d1_;
    int d2_;
    bool swapped_ = false;
};

/// Local Bloch vectors and correlation matrix:
///   ρ = 1/(d1 d2) [1⊗1 + Σ α_i λ_i⊗1 + Σ β_j 1⊗λ̃_j + Σ T_ij λ_i⊗λ̃_j].
struct BlochDecomposition {
    int d1 = 0;
    int d2 = 0;
    RVec alpha;  // d1²-1
    RVec beta;   // d2²-1
    RMat T;      // (d1²-1) x (d2²-1)
    bool swapped = false;

    /// The full coefficient matrix C = [[1, βᵀ], [α, T]].
    RMat coefficient_matrix() const;
};

struct CorrelationSpectrum {
    std::vector<double> sigmas;  // length d1²-1, descending
};

/// Exchange the two tensor factors: ρ on A⊗B becomes ρ on B⊗A.
CMat swap_subsystems(const CMat &rho, int d1, int d2);

/// Throws InputError on basis/state dimension mismatch, or if any coefficient
/// has an imaginary part above 1e-8.
BlochDecomposition decompose(const BipartiteState &s, const OperatorBasis &basis_a, const OperatorBasis &basis_b);
BlochDecomposition decompose(const BipartiteState &s);

/// Inverse of decompose. Throws InputError if the assembled matrix is not a
/// state (fails the PSD check).
BipartiteState reconstruct(const BlochDecomposition &b, const OperatorBasis &basis_a, const OperatorBasis &basis_b);
BipartiteState reconstruct(const BlochDecomposition &b);

CorrelationSpectrum correlation_spectrum(const BlochDecomposition &b);

/// (U_A ⊗ U_B) ρ (U_A ⊗ U_B)†.
BipartiteState apply_local_unitaries(const BipartiteState &s, const CMat &ua, const CMat &ub);

// Frequently used states.
BipartiteState product_state(int d1, int d2);  // |00⟩⟨00|
BipartiteState phi_plus_state(int d);          // maximally entangled, d1 = d2 = d
BipartiteState maximally_mixed_state(int d1, int d2);

/// Reduced state on the first factor.
CMat partial_trace_b(const CMat &rho, int d1, int d2);

}  // namespace corrgeom
