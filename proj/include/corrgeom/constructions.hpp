#pragma once

#include <string>
#include <vector>

#include "corrgeom/bloch.hpp"

namespace corrgeom {

/// Unit vectors with constant pairwise overlap |⟨ψ_i|ψ_j⟩| = overlap.
struct EquiangularSet {
    int d = 0;
    std::vector<CVec> vectors;
    double overlap = 0.0;
};

/// Mutually unbiased bases; each CMat holds one orthonormal basis as columns.
struct MubFamily {
    int d = 0;
    std::vector<CMat> bases;
};

/// One verified identity, e.g. "T^2 = (d-1)/N T", with its max-abs residual.
struct IdentityCheck {
    std::string identity;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

/// A constructed separable state together with its Bloch data and the
/// identities it was checked against.
struct Construction {
    BipartiteState state;
    BlochDecomposition bloch;
    std::vector<IdentityCheck> checks;

    bool pass() const;
};

EquiangularSet qubit_trio();

/// SIC-POVM vectors (overlap 1/√(d+1)): the Bloch tetrahedron for d = 2, the
/// Weyl-Heisenberg orbit of (0, 1, -1)/√2 for d = 3.
EquiangularSet sic_fiducial_set(int d);

/// SIC of dimension d-1 with a zero last coordinate; overlap 1/√d.
/// Supported for d ∈ {3, 4}.
EquiangularSet pad_sic(int d);

/// First vector of each basis; overlap 1/√d, size = number of bases.
EquiangularSet equiangular_from_mubs(const MubFamily &mubs);

/// d + 1 bases for d ∈ {2, 3, 5, 7} (and any other prime); d = 4 from a fixed table.
MubFamily mub_prime(int d);

/// Largest family this library can build: mub_prime where available, and the
/// three product bases for d = 6.
MubFamily mub_known(int d);

double max_overlap_deviation(const EquiangularSet &set);
double max_mub_deviation(const MubFamily &mubs);

/// (1/N) Σ |ψ_i⟩⟨ψ_i| ⊗ |ψ_i⟩⟨ψ_i| for an equiangular set with overlap 1/√d.
/// Sits at the kink r2t = 1/N. Throws InputError on the wrong overlap.
Construction theorem2_state(const EquiangularSet &set);

/// Mixture of the first N vectors (weight p) and the last vector (weight 1-p)
/// of an (N+1)-element set with overlap 1/√d. Requires N/(N+1) <= p <= 1.
Construction corollary1_family(const EquiangularSet &set, double p);

/// 1/(m d) Σ_l Σ_k |ψ_k^l⟩⟨ψ_k^l|^{⊗2} over the first m_use bases; sits at the
/// kink r2t = 1/(m_use (d-1)).
Construction theorem3_state(const MubFamily &mubs, int m_use);

struct KinkEntry {
    int n = 0;  // kink at r2t = 1/n
    bool covered = false;
    std::string method;  // "product", "equiangular", "mub" or empty
};

struct KinkCoverage {
    int d = 0;
    std::vector<KinkEntry> kinks;  // n = 1 .. d²-1

    std::vector<int> covered() const;
    std::vector<int> missing() const;
};

/// Builds every available kink state for 2 <= d <= 6 and records which kinks
/// were reached (a kink counts as covered only if its state verifies).
KinkCoverage kink_coverage(int d);

struct TraceCheck {
    int k = 0;
    double value = 0.0;
    double expected = 0.0;
    double residual = 0.0;
    bool pass = false;
};

struct TraceConstraintReport {
    std::vector<TraceCheck> checks;
    bool all_pass = false;
};

/// Checks Tr(T^k) = (d-1)/m^(k-1) for k = 1..k_max. Necessary conditions only.
/// Throws InputError if T is not square and symmetric to 1e-9.
TraceConstraintReport mub_trace_constraints(const RMat &T, int d, int m, int k_max);

}  // namespace corrgeom
