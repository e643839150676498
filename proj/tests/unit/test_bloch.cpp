#include <gtest/gtest.h>

#include <cmath>

#include "corrgeom/bloch.hpp"
#include "corrgeom/errors.hpp"
#include "test_util.hpp"

using namespace corrgeom;

namespace {

double max_abs(const RMat &m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

}  // namespace

TEST(GellMann, QubitBasisIsPauli) {
    const OperatorBasis b = gell_mann_basis(2);
    ASSERT_EQ(b.elems.size(), 4u);
    CMat sx(2, 2);
    sx << 0, 1, 1, 0;
    CMat sy(2, 2);
    sy << 0, cplx(0, -1), cplx(0, 1), 0;
    CMat sz(2, 2);
    sz << 1, 0, 0, -1;
    EXPECT_LT((b.elems[0] - CMat::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((b.elems[1] - sx).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((b.elems[2] - sy).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_LT((b.elems[3] - sz).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(GellMann, OrthogonalHermitianTraceless) {
    for (int d = 2; d <= 6; ++d) {
        const OperatorBasis b = gell_mann_basis(d);
        ASSERT_EQ(static_cast<int>(b.elems.size()), d * d);
        for (std::size_t i = 0; i < b.elems.size(); ++i) {
            EXPECT_TRUE(qla::is_hermitian(b.elems[i], 1e-14));
            if (i > 0) {
                EXPECT_LT(std::abs(b.elems[i].trace()), 1e-14);
            }
            for (std::size_t j = 0; j < b.elems.size(); ++j) {
                const cplx t = (b.elems[i] * b.elems[j]).trace();
                EXPECT_NEAR(t.real(), i == j ? d : 0.0, 1e-12);
                EXPECT_NEAR(t.imag(), 0.0, 1e-12);
            }
        }
    }
    EXPECT_THROW(gell_mann_basis(1), InputError);
}

TEST(Bloch, ProductStateQubits) {
    const BlochDecomposition b = decompose(product_state(2, 2));
    EXPECT_NEAR(b.alpha(2), 1.0, 1e-14);
    EXPECT_NEAR(b.beta(2), 1.0, 1e-14);
    EXPECT_NEAR(b.alpha.head(2).norm(), 0.0, 1e-14);
    RMat t = RMat::Zero(3, 3);
    t(2, 2) = 1.0;
    EXPECT_LT(max_abs(b.T - t), 1e-14);
}

TEST(Bloch, BellStateQubits) {
    const BlochDecomposition b = decompose(phi_plus_state(2));
    EXPECT_NEAR(b.alpha.norm(), 0.0, 1e-14);
    EXPECT_NEAR(b.beta.norm(), 0.0, 1e-14);
    RMat t = RMat::Zero(3, 3);
    t.diagonal() << 1.0, -1.0, 1.0;
    EXPECT_LT(max_abs(b.T - t), 1e-14);
    const CorrelationSpectrum cs = correlation_spectrum(b);
    for (double s : cs.sigmas) {
        EXPECT_NEAR(s, 1.0, 1e-14);
    }
}

TEST(Bloch, MatchesDirectTraceFormulas) {
    Rng rng(101);
    for (auto [d1, d2] : {std::pair{2, 2}, std::pair{2, 3}, std::pair{3, 3}, std::pair{2, 4}}) {
        const BipartiteState s = testutil::random_state(d1, d2, rng);
        const BlochDecomposition b = decompose(s);
        const OperatorBasis ba = gell_mann_basis(d1);
        const OperatorBasis bb = gell_mann_basis(d2);
        const CMat ia = CMat::Identity(d1, d1);
        const CMat ib = CMat::Identity(d2, d2);
        for (int i = 1; i < d1 * d1; ++i) {
            const cplx a = (s.rho() * qla::kron(ba.elems[static_cast<std::size_t>(i)], ib)).trace();
            EXPECT_NEAR(b.alpha(i - 1), a.real(), 1e-12);
        }
        for (int j = 1; j < d2 * d2; ++j) {
            const cplx v = (s.rho() * qla::kron(ia, bb.elems[static_cast<std::size_t>(j)])).trace();
            EXPECT_NEAR(b.beta(j - 1), v.real(), 1e-12);
        }
        for (int i = 1; i < d1 * d1; ++i) {
            for (int j = 1; j < d2 * d2; ++j) {
                const cplx t =
                    (s.rho() * qla::kron(ba.elems[static_cast<std::size_t>(i)], bb.elems[static_cast<std::size_t>(j)]))
                        .trace();
                EXPECT_NEAR(b.T(i - 1, j - 1), t.real(), 1e-12);
            }
        }
    }
}

TEST(Bloch, RoundTripOnRandomStates) {
    Rng rng(202);
    for (int trial = 0; trial < 50; ++trial) {
        const int d1 = 2 + trial % 3;
        const int d2 = d1 + (trial / 3) % 2;
        const BipartiteState s = testutil::random_state(d1, d2, rng, 1 + trial % (d1 * d2));
        const BipartiteState back = reconstruct(decompose(s));
        EXPECT_LT((back.rho() - s.rho()).cwiseAbs().maxCoeff(), 1e-10) << "trial " << trial;
    }
}

TEST(Bloch, SpectrumInvariantUnderLocalUnitaries) {
    Rng rng(303);
    for (int trial = 0; trial < 50; ++trial) {
        const int d1 = 2 + trial % 2;
        const int d2 = 2 + trial % 3 + (trial % 2);
        const BipartiteState s = testutil::random_state(d1, d2, rng);
        const std::vector<double> before = correlation_spectrum(decompose(s)).sigmas;
        const BipartiteState rotated = apply_local_unitaries(s, haar_unitary(s.d1(), rng), haar_unitary(s.d2(), rng));
        const std::vector<double> after = correlation_spectrum(decompose(rotated)).sigmas;
        ASSERT_EQ(before.size(), after.size());
        for (std::size_t i = 0; i < before.size(); ++i) {
            EXPECT_NEAR(before[i], after[i], 1e-10);
        }
    }
}

TEST(Bloch, SpectrumLengthAndOrder) {
    Rng rng(7);
    const BlochDecomposition b = decompose(testutil::random_state(2, 3, rng));
    const std::vector<double> s = correlation_spectrum(b).sigmas;
    ASSERT_EQ(s.size(), 3u);
    EXPECT_GE(s[0], s[1]);
    EXPECT_GE(s[1], s[2]);
    // Product states have a single nonzero singular value; the rest are padded zeros.
    const std::vector<double> p = correlation_spectrum(decompose(product_state(3, 3))).sigmas;
    ASSERT_EQ(p.size(), 8u);
    EXPECT_NEAR(p[0], 2.0, 1e-12);
    EXPECT_NEAR(p[1], 0.0, 1e-12);
}

TEST(Bloch, LargerFirstFactorIsSwapped) {
    Rng rng(9);
    const BipartiteState s = testutil::random_state(3, 2, rng);
    EXPECT_TRUE(s.swapped());
    EXPECT_EQ(s.d1(), 2);
    EXPECT_EQ(s.d2(), 3);
    const BlochDecomposition b = decompose(s);
    EXPECT_TRUE(b.swapped);
    EXPECT_EQ(b.T.rows(), 3);
    EXPECT_EQ(b.T.cols(), 8);
}

TEST(Bloch, SwapSubsystemsIsInvolution) {
    Rng rng(10);
    const BipartiteState s = testutil::random_state(2, 3, rng);
    const CMat once = swap_subsystems(s.rho(), 2, 3);
    const CMat twice = swap_subsystems(once, 3, 2);
    EXPECT_LT((twice - s.rho()).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Bloch, InvalidStatesRejected) {
    CMat rho = CMat::Identity(4, 4) / 4.0;
    EXPECT_NO_THROW(BipartiteState(rho, 2, 2));
    EXPECT_THROW(BipartiteState(rho, 2, 3), InputError);
    CMat non_herm = rho;
    non_herm(0, 1) = 0.1;
    EXPECT_THROW(BipartiteState(non_herm, 2, 2), InputError);
    EXPECT_THROW(BipartiteState(2.0 * rho, 2, 2), InputError);
    CMat neg = CMat::Zero(4, 4);
    neg.diagonal() << 0.6, 0.6, 0.1, -0.3;
    EXPECT_THROW(BipartiteState(neg, 2, 2), InputError);
}

TEST(Bloch, ReconstructRejectsUnphysicalData) {
    BlochDecomposition b;
    b.d1 = 2;
    b.d2 = 2;
    b.alpha = RVec::Zero(3);
    b.beta = RVec::Zero(3);
    b.T = RMat::Zero(3, 3);
    b.T(2, 2) = 1.5;  // eigenvalue (1 - 1.5)/4 < 0
    EXPECT_THROW(reconstruct(b), InputError);
    b.T(2, 2) = 1.0;
    EXPECT_NO_THROW(reconstruct(b));
}

TEST(Bloch, BasisMismatchRejected) {
    const BipartiteState s = product_state(2, 3);
    EXPECT_THROW(decompose(s, gell_mann_basis(2), gell_mann_basis(2)), InputError);
}

TEST(Bloch, PartialTraceOfBellIsMaximallyMixed) {
    for (int d = 2; d <= 4; ++d) {
        const CMat red = partial_trace_b(phi_plus_state(d).rho(), d, d);
        EXPECT_LT((red - CMat::Identity(d, d) / static_cast<double>(d)).cwiseAbs().maxCoeff(), 1e-14);
    }
}
