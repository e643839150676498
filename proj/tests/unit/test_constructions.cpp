#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "corrgeom/constructions.hpp"
#include "corrgeom/criteria.hpp"
#include "corrgeom/errors.hpp"
#include "corrgeom/landscape.hpp"
#include "corrgeom/moments.hpp"

using namespace corrgeom;

namespace {

double max_abs(const RMat &m) { return m.cwiseAbs().maxCoeff(); }

RVec bloch_vector(const CVec &psi, const OperatorBasis &basis) {
    const int d = basis.d;
    RVec a(d * d - 1);
    const CMat proj = psi * psi.adjoint();
    for (int i = 1; i < d * d; ++i) {
        a(i - 1) = (proj * basis.elems[static_cast<std::size_t>(i)]).trace().real();
    }
    return a;
}

}  // namespace

TEST(Constructions, EquiangularSetsHaveTheirOverlap) {
    EXPECT_LT(max_overlap_deviation(qubit_trio()), 1e-14);
    for (int d : {2, 3}) {
        const EquiangularSet sic = sic_fiducial_set(d);
        EXPECT_EQ(static_cast<int>(sic.vectors.size()), d * d);
        EXPECT_LT(max_overlap_deviation(sic), 1e-14);
    }
    for (int d : {3, 4}) {
        const EquiangularSet padded = pad_sic(d);
        EXPECT_NEAR(padded.overlap, 1.0 / std::sqrt(static_cast<double>(d)), 1e-15);
        EXPECT_LT(max_overlap_deviation(padded), 1e-14);
    }
}

TEST(Constructions, MutuallyUnbiasedBases) {
    for (int d : {2, 3, 4, 5, 7}) {
        const MubFamily f = mub_prime(d);
        EXPECT_EQ(static_cast<int>(f.bases.size()), d + 1);
        EXPECT_LT(max_mub_deviation(f), 1e-12) << "d=" << d;
    }
    const MubFamily six = mub_known(6);
    EXPECT_EQ(six.bases.size(), 3u);
    EXPECT_LT(max_mub_deviation(six), 1e-12);
    EXPECT_THROW(mub_prime(6), InputError);
    EXPECT_THROW(mub_prime(9), InputError);
}

TEST(Constructions, MubBlochProjectorsAreOrthogonal) {
    // Bloch vectors of one basis span a (d-1)-dimensional projector d·Π = Σ a aᵀ,
    // and unbiased bases give mutually orthogonal projectors.
    for (int d : {2, 3, 4, 5}) {
        const MubFamily f = mub_prime(d);
        const OperatorBasis basis = gell_mann_basis(d);
        std::vector<RMat> projectors;
        for (const CMat &b : f.bases) {
            RMat p = RMat::Zero(d * d - 1, d * d - 1);
            RVec sum = RVec::Zero(d * d - 1);
            for (int k = 0; k < d; ++k) {
                const RVec a = bloch_vector(b.col(k), basis);
                p += a * a.transpose() / static_cast<double>(d);
                sum += a;
            }
            EXPECT_LT(sum.norm(), 1e-12);
            EXPECT_LT(max_abs(p * p - p), 1e-12);
            EXPECT_NEAR(p.trace(), d - 1.0, 1e-12);
            projectors.push_back(p);
        }
        for (std::size_t l = 0; l < projectors.size(); ++l) {
            for (std::size_t m = l + 1; m < projectors.size(); ++m) {
                EXPECT_LT(max_abs(projectors[l] * projectors[m]), 1e-12);
            }
        }
    }
}

TEST(Constructions, TrioStateSitsAtThirdKink) {
    const Construction c = theorem2_state(qubit_trio());
    EXPECT_TRUE(c.pass());
    const RMat &t = c.bloch.T;
    EXPECT_LT(max_abs(t * t - t / 3.0), 1e-10);
    const MomentPoint p = normalized_point(c.bloch);
    EXPECT_NEAR(p.r2t, 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(p.r4t, f_lb(1.0 / 3.0, 2), 1e-12);
}

TEST(Constructions, QutritMubStateSitsAtEighthKink) {
    const Construction c = theorem3_state(mub_prime(3), 4);
    EXPECT_TRUE(c.pass());
    const RMat &t = c.bloch.T;
    EXPECT_LT(max_abs(t * t - t / 4.0), 1e-10);
    EXPECT_NEAR(normalized_point(c.bloch).r2t, 1.0 / 8.0, 1e-12);
}

TEST(Constructions, MubStatesForEveryBasisCount) {
    for (int d : {2, 3, 4, 5}) {
        const MubFamily f = mub_prime(d);
        for (int m = 1; m <= static_cast<int>(f.bases.size()); ++m) {
            const Construction c = theorem3_state(f, m);
            EXPECT_TRUE(c.pass()) << "d=" << d << " m=" << m;
            EXPECT_NEAR(normalized_point(c.bloch).r2t, 1.0 / (m * (d - 1.0)), 1e-12);
        }
    }
}

TEST(Constructions, MixedFamilySpectrum) {
    for (int d : {2, 3, 4}) {
        const EquiangularSet set = d == 2 ? qubit_trio() : pad_sic(d);
        const int n = static_cast<int>(set.vectors.size()) - 1;
        for (int i = 0; i <= 10; ++i) {
            const double p = n / (n + 1.0) + (1.0 - n / (n + 1.0)) * i / 10.0;
            const Construction c = corollary1_family(set, p);
            EXPECT_TRUE(c.pass()) << "d=" << d << " p=" << p;
            const double l = (d - 1.0) * (1.0 - p);
            const double m = (d - 1.0) * p / n;
            std::vector<double> want(static_cast<std::size_t>(d * d - 1), 0.0);
            for (int j = 0; j < n; ++j) {
                want[static_cast<std::size_t>(j)] = m;
            }
            want[static_cast<std::size_t>(n)] = l;
            std::sort(want.begin(), want.end(), std::greater<>());
            const std::vector<double> got = correlation_spectrum(c.bloch).sigmas;
            for (std::size_t j = 0; j < want.size(); ++j) {
                EXPECT_NEAR(got[j], want[j], 1e-8);
            }
            const MomentPoint pt = normalized_point(c.bloch);
            EXPECT_NEAR(pt.r4t, f_lb(pt.r2t, d), 1e-10);
        }
    }
}

TEST(Constructions, NoConstructionIsDetectedAsEntangled) {
    std::vector<Construction> all;
    all.push_back(theorem2_state(qubit_trio()));
    all.push_back(theorem2_state(pad_sic(3)));
    all.push_back(theorem2_state(pad_sic(4)));
    all.push_back(corollary1_family(pad_sic(3), 0.9));
    for (int d : {2, 3, 4, 5}) {
        all.push_back(theorem3_state(mub_prime(d), d + 1));
    }
    all.push_back(theorem3_state(mub_known(6), 3));
    for (const Construction &c : all) {
        const SchmidtVerdict v = detect_schmidt(c.bloch, 1);
        EXPECT_FALSE(v.detected) << "margin " << v.margin;
    }
}

TEST(Constructions, KinkCoverage) {
    EXPECT_TRUE(kink_coverage(2).missing().empty());
    EXPECT_EQ(kink_coverage(3).missing(), (std::vector<int>{5, 7}));
    EXPECT_EQ(kink_coverage(4).missing(), (std::vector<int>{10, 11, 13, 14}));
    const KinkCoverage five = kink_coverage(5);
    EXPECT_EQ(five.kinks.size(), 24u);
    EXPECT_EQ(five.kinks[23].method, "mub");
    EXPECT_EQ(five.kinks[0].method, "product");
    EXPECT_THROW(kink_coverage(7), InputError);
}

TEST(Constructions, TraceConstraints) {
    const Construction c = theorem3_state(mub_prime(3), 2);
    const TraceConstraintReport ok = mub_trace_constraints(c.bloch.T, 3, 2, 6);
    EXPECT_TRUE(ok.all_pass);
    EXPECT_EQ(ok.checks.size(), 6u);
    const TraceConstraintReport wrong_m = mub_trace_constraints(c.bloch.T, 3, 3, 4);
    EXPECT_FALSE(wrong_m.all_pass);
    EXPECT_TRUE(wrong_m.checks[0].pass);  // k = 1 does not depend on m
    RMat asym = RMat::Zero(8, 8);
    asym(0, 1) = 1.0;
    EXPECT_THROW(mub_trace_constraints(asym, 3, 1, 3), InputError);
    EXPECT_THROW(mub_trace_constraints(RMat::Zero(3, 8), 3, 1, 3), InputError);
}

TEST(Constructions, InputErrors) {
    EXPECT_THROW(theorem2_state(sic_fiducial_set(2)), InputError);
    EXPECT_THROW(corollary1_family(qubit_trio(), 0.5), InputError);
    EXPECT_THROW(corollary1_family(qubit_trio(), 1.01), InputError);
    EXPECT_THROW(theorem3_state(mub_prime(3), 0), InputError);
    EXPECT_THROW(theorem3_state(mub_prime(3), 5), InputError);
    EXPECT_THROW(pad_sic(5), InputError);
    EXPECT_THROW(sic_fiducial_set(4), InputError);
    EquiangularSet broken = qubit_trio();
    broken.vectors[1](1) *= -1.0;
    broken.vectors[2](1) = 0.3;
    EXPECT_THROW(theorem2_state(broken), InputError);
}
