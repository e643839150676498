#include "corrgeom/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corrgeom/errors.hpp"

namespace corrgeom {

std::string_view to_string(ObservableKind kind) {
    switch (kind) {
        case ObservableKind::full:
            return "full";
        case ObservableKind::rank4:
            return "rank4";
    }
    return "unknown";
}

bool ObservableSpectrum::is_real(double tol) const {
    return std::all_of(eigenvalues.begin(), eigenvalues.end(), [tol](cplx z) { return std::abs(z.imag()) <= tol; });
}

namespace {

// Cycle count of (edge -> partner -> next edge) is the vertex count of the glued surface.
void enumerate_pairings(std::vector<int> &partner, int two_n, std::vector<std::uint64_t> &counts,
                        std::vector<char> &seen) {
    int first = -1;
    for (int e = 0; e < two_n; ++e) {
        if (partner[e] < 0) {
            first = e;
            break;
        }
    }
    if (first < 0) {
        std::fill(seen.begin(), seen.end(), 0);
        int vertices = 0;
        for (int e = 0; e < two_n; ++e) {
            if (seen[e]) {
                continue;
            }
            ++vertices;
            for (int x = e; !seen[x]; x = (partner[x] + 1) % two_n) {
                seen[x] = 1;
            }
        }
        const int n = two_n / 2;
        // χ = V - n + 1 = 2 - 2g
        counts[(n + 1 - vertices) / 2] += 1;
        return;
    }
    for (int other = first + 1; other < two_n; ++other) {
        if (partner[other] >= 0) {
            continue;
        }
        partner[first] = other;
        partner[other] = first;
        enumerate_pairings(partner, two_n, counts, seen);
        partner[first] = -1;
        partner[other] = -1;
    }
}

double double_factorial(int n) {
    double out = 1.0;
    for (int k = n; k > 1; k -= 2) {
        out *= k;
    }
    return out;
}

double binomial(int n, int k) {
    double out = 1.0;
    for (int i = 1; i <= k; ++i) {
        out = out * (n - k + i) / i;
    }
    return out;
}

bool spectrum_order(const cplx &a, const cplx &b) {
    if (a.real() != b.real()) {
        return a.real() > b.real();
    }
    return a.imag() > b.imag();
}

void check_even_t(int t) {
    if (t < 2 || t % 2 != 0) {
        throw InputError("moment order t must be even and >= 2, got " + std::to_string(t));
    }
}

}  // namespace

GluingTable gluing_counts(int n) {
    if (n < 1 || n > 8) {
        throw InputError("gluing_counts: n must be in [1, 8], got " + std::to_string(n));
    }
    GluingTable table;
    table.n = n;
    table.counts.assign(static_cast<std::size_t>(n / 2 + 1), 0);
    std::vector<int> partner(2 * n, -1);
    std::vector<char> seen(2 * n, 0);
    enumerate_pairings(partner, 2 * n, table.counts, seen);
    return table;
}

double a_coeff(int t, int k, int d) {
    check_even_t(t);
    if (k < 0 || k > t / 2) {
        throw InputError("a_coeff: k must be in [0, t/2]");
    }
    if (d < 2) {
        throw InputError("a_coeff: d must be >= 2");
    }
    // (d²-3)!!/(d²-3+t)!! telescopes to 1 / Π_{j=1}^{t/2} (d²-3+2j).
    double denom = 1.0;
    for (int j = 1; j <= t / 2; ++j) {
        denom *= d * d - 3 + 2 * j;
    }
    const double sign = ((t / 2 - k) % 2 == 0) ? 1.0 : -1.0;
    return sign * std::pow(static_cast<double>(d), k) * double_factorial(t - 2 * k - 1) / denom;
}

double power_trace(int t, int d) {
    check_even_t(t);
    if (d < 2) {
        throw InputError("power_trace: d must be >= 2");
    }
    double total = a_coeff(t, 0, d) * d;
    for (int k = 1; k <= t / 2; ++k) {
        const GluingTable glue = gluing_counts(k);
        double genus_sum = 0.0;
        for (std::size_t g = 0; g < glue.counts.size(); ++g) {
            genus_sum += static_cast<double>(glue.counts[g]) * std::pow(static_cast<double>(d), k + 1 - 2 * static_cast<int>(g));
        }
        total += a_coeff(t, k, d) * binomial(t, 2 * k) * genus_sum;
    }
    return total;
}

cplx power_sum(std::span<const cplx> eigenvalues, int t) {
    cplx sum = 0.0;
    for (cplx z : eigenvalues) {
        sum += std::pow(z, t);
    }
    return sum;
}

ObservableSpectrum spectrum_full(int d) {
    if (d < 2 || d > 10) {
        throw InputError("spectrum_full: d must be in [2, 10], got " + std::to_string(d));
    }
    // Power sums: odd ones vanish, even ones are fixed by power_trace.
    std::vector<double> p(d + 1, 0.0);
    for (int t = 2; t <= d; t += 2) {
        p[t] = power_trace(t, d);
    }
    // Newton's identities: k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i.
    std::vector<double> e(d + 1, 0.0);
    e[0] = 1.0;
    for (int k = 1; k <= d; ++k) {
        double acc = 0.0;
        for (int i = 1; i <= k; ++i) {
            acc += ((i % 2 == 1) ? 1.0 : -1.0) * e[k - i] * p[i];
        }
        e[k] = acc / k;
    }
    // Odd e_k vanish, so the characteristic polynomial is z^(d mod 2) q(z²)
    // with q(y) = Σ_j e_{2j} y^(h-j).
    const int h = d / 2;
    std::vector<double> q(h + 1);
    for (int m = 0; m <= h; ++m) {
        q[m] = e[2 * (h - m)];
    }
    const qla::PolyRoots squares = qla::poly_roots(q);

    ObservableSpectrum out;
    out.d = d;
    out.kind = ObservableKind::full;
    for (cplx y : squares.roots) {
        if (std::abs(y.imag()) <= 1e-12 * std::max(1.0, std::abs(y))) {
            y = cplx(y.real(), 0.0);
        }
        const cplx r = std::sqrt(y);
        out.eigenvalues.push_back(r);
        out.eigenvalues.push_back(-r);
    }
    if (d % 2 == 1) {
        out.eigenvalues.emplace_back(0.0, 0.0);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), spectrum_order);
    if (d == 2) {
        out.match_order = std::nullopt;
    } else if (d == 3) {
        out.match_order = 4;
    } else {
        out.match_order = d;
    }
    return out;
}

ObservableSpectrum spectrum_rank4(int d, bool allow_complex) {
    if (d < 2) {
        throw InputError("spectrum_rank4: d must be >= 2, got " + std::to_string(d));
    }
    const double dd = d;
    const double radicand = dd * (8.0 - dd - 20.0 / (dd * dd + 1.0));
    if (radicand < 0.0 && !allow_complex) {
        throw InputError("spectrum_rank4: inner radicand d(8-d-20/(d²+1)) = " + std::to_string(radicand) +
                         " is negative for d=" + std::to_string(d));
    }
    const cplx inner = std::sqrt(cplx(radicand, 0.0));
    const cplx kappa1 = 0.5 * std::sqrt(dd + inner);
    // κ2 vanishes identically for d = 2, 3.
    const cplx kappa2 = d < 4 ? cplx(0.0) : 0.5 * std::sqrt(dd - inner);

    ObservableSpectrum out;
    out.d = d;
    out.kind = ObservableKind::rank4;
    out.match_order = 4;
    out.eigenvalues = {kappa1, -kappa1};
    if (d >= 4) {
        out.eigenvalues.push_back(kappa2);
        out.eigenvalues.push_back(-kappa2);
    }
    out.eigenvalues.resize(static_cast<std::size_t>(d), cplx(0.0));
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end(), spectrum_order);
    return out;
}

}  // namespace corrgeom
