#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "corrgeom/qla.hpp"

namespace corrgeom {

/// a(n, g): number of ways to glue the sides of a 2n-gon into a surface of
/// genus g, for g = 0..floor(n/2).
struct GluingTable {
    int n = 0;
    std::vector<std::uint64_t> counts;
};

enum class ObservableKind { full, rank4 };

std::string_view to_string(ObservableKind kind);

/// Eigenvalues of a diagonal observable whose Haar-randomized moments equal
/// the orthogonal (Bloch-sphere) moments up to match_order. An empty
/// match_order means every moment matches (d = 2).
struct ObservableSpectrum {
    int d = 0;
    std::vector<cplx> eigenvalues;  // descending by real part, then by imaginary part
    std::optional<int> match_order;
    ObservableKind kind = ObservableKind::full;

    bool is_real(double tol = 1e-12) const;
};

/// Brute force over all (2n-1)!! pairings of the 2n polygon edges. 1 <= n <= 8.
GluingTable gluing_counts(int n);

/// Coefficient of the k-transposition permutations in the t-fold twirl:
/// (-1)^(t/2-k) d^k (d²-3)!! (t-2k-1)!! / (d²-3+t)!!, with (-1)!! = 1.
double a_coeff(int t, int k, int d);

/// Tr(A^t) required of a moment-matching observable, t even.
double power_trace(int t, int d);

/// Σ λ^t over the spectrum.
cplx power_sum(std::span<const cplx> eigenvalues, int t);

/// The unique spectrum fixed by Tr(A^t) for t = 1..d (odd traces vanish).
/// 2 <= d <= 10. Throws NumericError if root finding fails.
ObservableSpectrum spectrum_full(int d);

/// diag(±κ1, ±κ2, 0, ..., 0), matching moments t <= 4 for every d >= 2.
/// For d >= 8 the inner radicand d(8 - d - 20/(d²+1)) is negative and κ1, κ2
/// become a complex-conjugate pair; with allow_complex = false that case
/// throws InputError instead.
ObservableSpectrum spectrum_rank4(int d, bool allow_complex = true);

}  // namespace corrgeom
