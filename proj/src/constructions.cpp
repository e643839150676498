#include "corrgeom/constructions.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include "corrgeom/errors.hpp"
#include "corrgeom/landscape.hpp"
#include "corrgeom/moments.hpp"

namespace corrgeom {

namespace {

constexpr double kCheckTol = 1e-9;

bool is_prime(int n) {
    if (n < 2) {
        return false;
    }
    for (int f = 2; f * f <= n; ++f) {
        if (n % f == 0) {
            return false;
        }
    }
    return true;
}

IdentityCheck make_check(std::string identity, double residual) {
    return {std::move(identity), residual, kCheckTol, residual <= kCheckTol};
}

// Entries of the d = 4 bases as powers of i, in units of 1/2; columns are vectors.
constexpr std::array<std::array<std::array<int, 4>, 4>, 4> kMub4Phases = {{
    {{{0, 2, 2, 0}, {0, 2, 0, 2}, {0, 0, 2, 2}, {0, 0, 0, 0}}},
    {{{0, 3, 3, 2}, {0, 3, 1, 0}, {0, 1, 3, 0}, {0, 1, 1, 2}}},
    {{{0, 2, 3, 3}, {0, 0, 3, 1}, {0, 0, 1, 3}, {0, 2, 1, 1}}},
    {{{0, 3, 2, 3}, {0, 3, 0, 1}, {0, 1, 0, 3}, {0, 1, 2, 1}}},
}};

cplx i_power(int k) {
    static constexpr std::array<cplx, 4> table = {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)};
    return table[static_cast<std::size_t>(k % 4)];
}

MubFamily mub_qubit() {
    const double s = 1.0 / std::sqrt(2.0);
    MubFamily f;
    f.d = 2;
    f.bases.push_back(CMat::Identity(2, 2));
    CMat x(2, 2);
    x << s, s, s, -s;
    CMat y(2, 2);
    y << s, s, cplx(0, s), cplx(0, -s);
    f.bases.push_back(x);
    f.bases.push_back(y);
    return f;
}

MubFamily mub_four() {
    MubFamily f;
    f.d = 4;
    f.bases.push_back(CMat::Identity(4, 4));
    for (const auto &basis : kMub4Phases) {
        CMat m(4, 4);
        for (int col = 0; col < 4; ++col) {
            for (int row = 0; row < 4; ++row) {
                m(row, col) = 0.5 * i_power(basis[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)]);
            }
        }
        f.bases.push_back(m);
    }
    return f;
}

MubFamily mub_odd_prime(int p) {
    MubFamily f;
    f.d = p;
    f.bases.push_back(CMat::Identity(p, p));
    const double norm = 1.0 / std::sqrt(static_cast<double>(p));
    for (int a = 0; a < p; ++a) {
        CMat m(p, p);
        for (int b = 0; b < p; ++b) {
            for (int j = 0; j < p; ++j) {
                const int phase = (a * j * j + b * j) % p;
                m(j, b) = norm * std::polar(1.0, 2.0 * std::numbers::pi * phase / p);
            }
        }
        f.bases.push_back(m);
    }
    return f;
}

CMat projector(const CVec &v) { return v * v.adjoint(); }

// Σ w_i |v_i⟩⟨v_i| ⊗ |v_i⟩⟨v_i|.
CMat doubled_mixture(const std::vector<CVec> &vs, const std::vector<double> &weights) {
    const Eigen::Index d = vs.front().size();
    CMat rho = CMat::Zero(d * d, d * d);
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const CMat p = projector(vs[i]);
        rho += weights[i] * qla::kron(p, p);
    }
    return rho;
}

Construction finish(CMat rho, int d) {
    BipartiteState s(std::move(rho), d, d);
    BlochDecomposition b = decompose(s);
    return {std::move(s), std::move(b), {}};
}

double max_abs(const RMat &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

void require_overlap(const EquiangularSet &set, const char *who) {
    if (set.vectors.empty()) {
        throw InputError(std::string(who) + ": empty vector set");
    }
    const double want = 1.0 / std::sqrt(static_cast<double>(set.d));
    if (std::abs(set.overlap - want) > kCheckTol || max_overlap_deviation(set) > kCheckTol) {
        throw InputError(std::string(who) + ": vectors must be equiangular with overlap 1/sqrt(d)");
    }
    const auto n = static_cast<int>(set.vectors.size());
    if (n > set.d * set.d - 1) {
        throw InputError(std::string(who) + ": more than d²-1 vectors");
    }
}

void add_common_checks(Construction &c, int kink_n) {
    const MomentPoint p = normalized_point(c.bloch);
    c.checks.push_back(make_check("r2t = 1/" + std::to_string(kink_n), std::abs(p.r2t - 1.0 / kink_n)));
    c.checks.push_back(make_check("r4t = f_lb(r2t)", std::abs(p.r4t - f_lb(std::min(p.r2t, 1.0), c.bloch.d1))));
}

}  // namespace

bool Construction::pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const IdentityCheck &c) { return c.pass; });
}

EquiangularSet qubit_trio() {
    const double s = 1.0 / std::sqrt(2.0);
    EquiangularSet set;
    set.d = 2;
    set.overlap = s;
    set.vectors.push_back(CVec::Unit(2, 0));
    CVec plus(2);
    plus << s, s;
    CVec plus_i(2);
    plus_i << s, cplx(0, s);
    set.vectors.push_back(plus);
    set.vectors.push_back(plus_i);
    return set;
}

EquiangularSet sic_fiducial_set(int d) {
    EquiangularSet set;
    set.d = d;
    set.overlap = 1.0 / std::sqrt(d + 1.0);
    if (d == 2) {
        set.vectors.push_back(CVec::Unit(2, 0));
        // Polar angle with cos θ = -1/3.
        const double c = std::sqrt((1.0 - 1.0 / 3.0) / 2.0);
        const double s = std::sqrt((1.0 + 1.0 / 3.0) / 2.0);
        for (int j = 0; j < 3; ++j) {
            CVec v(2);
            v << c, std::polar(s, 2.0 * std::numbers::pi * j / 3.0);
            set.vectors.push_back(v);
        }
        return set;
    }
    if (d == 3) {
        CVec fid(3);
        fid << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
        const cplx w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                CVec v(3);
                for (int j = 0; j < 3; ++j) {
                    // (X^a Z^b ψ)_j = ω^{b (j-a)} ψ_{j-a}
                    const int src = (j - a + 3) % 3;
                    v(j) = std::pow(w, b * src) * fid(src);
                }
                set.vectors.push_back(v);
            }
        }
        return set;
    }
    throw InputError("sic_fiducial_set: only d = 2 and d = 3 are available, got d=" + std::to_string(d));
}

EquiangularSet pad_sic(int d) {
    if (d != 3 && d != 4) {
        throw InputError("pad_sic: requires d in {3, 4}, got d=" + std::to_string(d));
    }
    const EquiangularSet sic = sic_fiducial_set(d - 1);
    EquiangularSet set;
    set.d = d;
    set.overlap = 1.0 / std::sqrt(static_cast<double>(d));
    for (const CVec &v : sic.vectors) {
        CVec w = CVec::Zero(d);
        w.head(d - 1) = v;
        set.vectors.push_back(w);
    }
    return set;
}

EquiangularSet equiangular_from_mubs(const MubFamily &mubs) {
    EquiangularSet set;
    set.d = mubs.d;
    set.overlap = 1.0 / std::sqrt(static_cast<double>(mubs.d));
    for (const CMat &b : mubs.bases) {
        set.vectors.push_back(b.col(0));
    }
    return set;
}

MubFamily mub_prime(int d) {
    if (d == 2) {
        return mub_qubit();
    }
    if (d == 4) {
        return mub_four();
    }
    if (is_prime(d)) {
        return mub_odd_prime(d);
    }
    throw InputError("mub_prime: no complete MUB construction for d=" + std::to_string(d));
}

MubFamily mub_known(int d) {
    if (d == 6) {
        const MubFamily a = mub_qubit();
        const MubFamily b = mub_odd_prime(3);
        MubFamily f;
        f.d = 6;
        for (std::size_t i = 0; i < a.bases.size(); ++i) {
            f.bases.push_back(qla::kron(a.bases[i], b.bases[i]));
        }
        return f;
    }
    return mub_prime(d);
}

double max_overlap_deviation(const EquiangularSet &set) {
    double worst = 0.0;
    for (std::size_t i = 0; i < set.vectors.size(); ++i) {
        worst = std::max(worst, std::abs(set.vectors[i].norm() - 1.0));
        for (std::size_t j = i + 1; j < set.vectors.size(); ++j) {
            worst = std::max(worst, std::abs(std::abs(set.vectors[i].dot(set.vectors[j])) - set.overlap));
        }
    }
    return worst;
}

double max_mub_deviation(const MubFamily &mubs) {
    const double unbiased = 1.0 / std::sqrt(static_cast<double>(mubs.d));
    double worst = 0.0;
    for (std::size_t l = 0; l < mubs.bases.size(); ++l) {
        const CMat &a = mubs.bases[l];
        worst = std::max(worst, (a.adjoint() * a - CMat::Identity(mubs.d, mubs.d)).cwiseAbs().maxCoeff());
        for (std::size_t m = l + 1; m < mubs.bases.size(); ++m) {
            const RMat overlaps = (a.adjoint() * mubs.bases[m]).cwiseAbs();
            worst = std::max(worst, (overlaps.array() - unbiased).abs().maxCoeff());
        }
    }
    return worst;
}

Construction theorem2_state(const EquiangularSet &set) {
    require_overlap(set, "theorem2_state");
    const int d = set.d;
    const auto n = static_cast<int>(set.vectors.size());
    Construction c = finish(doubled_mixture(set.vectors, std::vector<double>(set.vectors.size(), 1.0 / n)), d);
    const RMat &t = c.bloch.T;
    c.checks.push_back(make_check("T^2 = (d-1)/N T", max_abs(t * t - ((d - 1.0) / n) * t)));
    c.checks.push_back(make_check("Tr T = d-1", std::abs(t.trace() - (d - 1.0))));
    c.checks.push_back(make_check("T = T^t", max_abs(t - t.transpose())));
    add_common_checks(c, n);
    return c;
}

Construction corollary1_family(const EquiangularSet &set, double p) {
    require_overlap(set, "corollary1_family");
    const auto total = static_cast<int>(set.vectors.size());
    const int n = total - 1;
    if (n < 1) {
        throw InputError("corollary1_family: need at least 2 vectors");
    }
    const double p_min = static_cast<double>(n) / (n + 1.0);
    if (!(p >= p_min - 1e-12 && p <= 1.0 + 1e-12)) {
        throw InputError("corollary1_family: p=" + std::to_string(p) + " outside [" + std::to_string(p_min) + ", 1]");
    }
    std::vector<double> weights(set.vectors.size(), p / n);
    weights.back() = 1.0 - p;
    const int d = set.d;
    Construction c = finish(doubled_mixture(set.vectors, weights), d);

    const double m = (d - 1.0) * p / n;
    const double l = (d - 1.0) * (1.0 - p);
    std::vector<double> expected(static_cast<std::size_t>(d * d - 1), 0.0);
    for (int i = 0; i < n; ++i) {
        expected[static_cast<std::size_t>(i)] = m;
    }
    expected[static_cast<std::size_t>(n)] = l;
    std::sort(expected.begin(), expected.end(), std::greater<>());
    const std::vector<double> got = correlation_spectrum(c.bloch).sigmas;
    double resid = 0.0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        resid = std::max(resid, std::abs(got[i] - expected[i]));
    }
    c.checks.push_back(make_check("spectrum(T) = (m x N, l)", resid));
    c.checks.push_back(make_check("Tr T = d-1", std::abs(c.bloch.T.trace() - (d - 1.0))));
    const MomentPoint pt = normalized_point(c.bloch);
    c.checks.push_back(make_check("r4t = f_lb(r2t)", std::abs(pt.r4t - f_lb(std::min(pt.r2t, 1.0), d))));
    return c;
}

Construction theorem3_state(const MubFamily &mubs, int m_use) {
    const auto available = static_cast<int>(mubs.bases.size());
    if (m_use < 1 || m_use > available) {
        throw InputError("theorem3_state: m=" + std::to_string(m_use) + " outside [1, " + std::to_string(available) +
                         "]");
    }
    if (max_mub_deviation(mubs) > kCheckTol) {
        throw InputError("theorem3_state: bases are not mutually unbiased");
    }
    const int d = mubs.d;
    std::vector<CVec> vs;
    for (int l = 0; l < m_use; ++l) {
        for (int k = 0; k < d; ++k) {
            vs.push_back(mubs.bases[static_cast<std::size_t>(l)].col(k));
        }
    }
    Construction c = finish(doubled_mixture(vs, std::vector<double>(vs.size(), 1.0 / (m_use * d))), d);
    const RMat &t = c.bloch.T;
    c.checks.push_back(make_check("T^2 = T/m", max_abs(t * t - t / m_use)));
    c.checks.push_back(make_check("Tr T = d-1", std::abs(t.trace() - (d - 1.0))));
    c.checks.push_back(make_check("T = T^t", max_abs(t - t.transpose())));
    add_common_checks(c, m_use * (d - 1));
    return c;
}

std::vector<int> KinkCoverage::covered() const {
    std::vector<int> out;
    for (const KinkEntry &k : kinks) {
        if (k.covered) {
            out.push_back(k.n);
        }
    }
    return out;
}

std::vector<int> KinkCoverage::missing() const {
    std::vector<int> out;
    for (const KinkEntry &k : kinks) {
        if (!k.covered) {
            out.push_back(k.n);
        }
    }
    return out;
}

KinkCoverage kink_coverage(int d) {
    if (d < 2 || d > 6) {
        throw InputError("kink_coverage: d must lie in [2, 6], got d=" + std::to_string(d));
    }
    KinkCoverage cov;
    cov.d = d;
    for (int n = 1; n <= d * d - 1; ++n) {
        cov.kinks.push_back({n, false, ""});
    }
    auto mark = [&cov](int n, const char *method) {
        KinkEntry &e = cov.kinks[static_cast<std::size_t>(n - 1)];
        if (!e.covered) {
            e.covered = true;
            e.method = method;
        }
    };

    const MomentPoint prod = normalized_point(decompose(product_state(d, d)));
    if (std::abs(prod.r2t - 1.0) <= kCheckTol && std::abs(prod.r4t - 1.0) <= kCheckTol) {
        mark(1, "product");
    }

    EquiangularSet set;
    if (d == 2) {
        set = qubit_trio();
    } else if (d == 3 || d == 4) {
        set = pad_sic(d);
    } else {
        set = equiangular_from_mubs(mub_known(d));
    }
    for (std::size_t n = 1; n <= set.vectors.size(); ++n) {
        EquiangularSet prefix{set.d, {set.vectors.begin(), set.vectors.begin() + static_cast<std::ptrdiff_t>(n)},
                              set.overlap};
        if (theorem2_state(prefix).pass()) {
            mark(static_cast<int>(n), "equiangular");
        }
    }

    const MubFamily mubs = mub_known(d);
    for (int m = 1; m <= static_cast<int>(mubs.bases.size()); ++m) {
        if (theorem3_state(mubs, m).pass()) {
            mark(m * (d - 1), "mub");
        }
    }
    return cov;
}

TraceConstraintReport mub_trace_constraints(const RMat &T, int d, int m, int k_max) {
    if (T.rows() != T.cols() || T.rows() == 0) {
        throw InputError("mub_trace_constraints: T must be square");
    }
    if (max_abs(T - T.transpose()) > 1e-9) {
        throw InputError("mub_trace_constraints: T must be symmetric");
    }
    if (d < 2 || m < 1 || k_max < 1) {
        throw InputError("mub_trace_constraints: requires d >= 2, m >= 1, k_max >= 1");
    }
    TraceConstraintReport rep;
    rep.all_pass = true;
    RMat power = T;
    for (int k = 1; k <= k_max; ++k) {
        if (k > 1) {
            power = power * T;
        }
        TraceCheck c;
        c.k = k;
        c.value = power.trace();
        c.expected = (d - 1.0) / std::pow(static_cast<double>(m), k - 1);
        c.residual = std::abs(c.value - c.expected);
        c.pass = c.residual <= kCheckTol;
        rep.all_pass = rep.all_pass && c.pass;
        rep.checks.push_back(c);
    }
    return rep;
}

}  // namespace corrgeom
