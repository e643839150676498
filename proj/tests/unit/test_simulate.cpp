#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "corrgeom/constructions.hpp"
#include "corrgeom/errors.hpp"
#include "corrgeom/landscape.hpp"
#include "corrgeom/moments.hpp"
#include "corrgeom/simulate.hpp"
#include "test_util.hpp"

using namespace corrgeom;

namespace {

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double> &v) {
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) {
        ss += (x - mean) * (x - mean);
    }
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

}  // namespace

TEST(Simulate, IsotropicState) {
    for (int d = 2; d <= 4; ++d) {
        const MomentPoint mixed = normalized_point(decompose(isotropic_state(d, 1.0)));
        EXPECT_NEAR(mixed.r2t, 0.0, 1e-12);
        for (double p : {0.0, 0.2, 0.5, 0.9}) {
            const MomentPoint pt = normalized_point(decompose(isotropic_state(d, p)));
            EXPECT_NEAR(pt.r2t, isotropic_r2t(d, p), 1e-10);
            EXPECT_NEAR(pt.r4t, g_lb(pt.r2t, d), 1e-10);
        }
        // Separability threshold of the isotropic family sits at the first kink.
        EXPECT_NEAR(isotropic_r2t(d, d / (d + 1.0)), 1.0 / (d * d - 1.0), 1e-12);
    }
    EXPECT_NEAR(isotropic_r2t(2, 0.0), 3.0, 1e-12);
    EXPECT_THROW(isotropic_state(2, -0.1), InputError);
    EXPECT_THROW(isotropic_state(2, 1.5), InputError);
}

TEST(Simulate, HaarUnitaryIsUnitaryWithHaarMoments) {
    Rng rng(101);
    const int d = 3;
    const int n = 20000;
    std::vector<double> u11;
    std::vector<double> tr2;
    for (int i = 0; i < n; ++i) {
        const CMat u = haar_unitary(d, rng);
        if (i < 50) {
            EXPECT_LT((u.adjoint() * u - CMat::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-10);
        }
        u11.push_back(std::norm(u(0, 0)));
        tr2.push_back(std::norm(u.trace()));
    }
    const MeanSe a = mean_se(u11);
    const MeanSe b = mean_se(tr2);
    EXPECT_NEAR(a.mean, 1.0 / d, 3.0 * a.se);
    EXPECT_NEAR(b.mean, 1.0, 3.0 * b.se);
}

TEST(Simulate, DerivedSeedsAreDistinctAndStable) {
    EXPECT_EQ(derive_seed(7, {1, 2}), derive_seed(7, {1, 2}));
    EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(7, {2, 1}));
    EXPECT_NE(derive_seed(7, {1, 2}), derive_seed(8, {1, 2}));
}

TEST(Simulate, UnbiasedPowersMatchDistinctTupleMeans) {
    Rng rng(103);
    std::normal_distribution<double> g(0.3, 1.0);
    for (int k = 4; k <= 7; ++k) {
        std::vector<cplx> x;
        for (int i = 0; i < k; ++i) {
            x.emplace_back(g(rng), 0.5 * g(rng));
        }
        cplx two = 0.0;
        cplx four = 0.0;
        double n2 = 0.0;
        double n4 = 0.0;
        for (int a = 0; a < k; ++a) {
            for (int b = 0; b < k; ++b) {
                if (b == a) {
                    continue;
                }
                two += x[a] * x[b];
                n2 += 1.0;
                for (int c = 0; c < k; ++c) {
                    for (int e = 0; e < k; ++e) {
                        if (c == a || c == b || e == a || e == b || e == c) {
                            continue;
                        }
                        four += x[a] * x[b] * x[c] * x[e];
                        n4 += 1.0;
                    }
                }
            }
        }
        const PowerEstimates p = unbiased_powers(x);
        EXPECT_LT(std::abs(p.second - two / n2), 1e-12);
        EXPECT_LT(std::abs(p.fourth - four / n4), 1e-12);
    }
    EXPECT_THROW(unbiased_powers(std::vector<cplx>(3, 1.0)), InputError);
}

TEST(Simulate, UnbiasedPowersRemovePlugInBias) {
    // Fair ±1 coin: E[X] = 0, so both powers vanish in expectation while the
    // plug-in mean² is 1/K on average.
    Rng rng(107);
    std::bernoulli_distribution coin(0.5);
    const int k = 4;
    std::vector<double> u2;
    std::vector<double> plug;
    for (int t = 0; t < 20000; ++t) {
        std::vector<cplx> x;
        double s = 0.0;
        for (int i = 0; i < k; ++i) {
            const double v = coin(rng) ? 1.0 : -1.0;
            x.emplace_back(v, 0.0);
            s += v;
        }
        u2.push_back(unbiased_powers(x).second.real());
        plug.push_back((s / k) * (s / k));
    }
    const MeanSe a = mean_se(u2);
    const MeanSe b = mean_se(plug);
    EXPECT_NEAR(a.mean, 0.0, 4.0 * a.se);
    EXPECT_NEAR(b.mean, 1.0 / k, 4.0 * b.se);
    EXPECT_GT(b.mean - 6.0 * b.se, 0.0);
}

TEST(Simulate, SampleSettingExtremes) {
    Rng rng(109);
    const ObservableSpectrum a = simulation_observable(2);
    const CMat id = CMat::Identity(2, 2);
    const std::vector<cplx> x = sample_setting(product_state(2, 2), a, id, id, 50, rng);
    ASSERT_EQ(x.size(), 50u);
    for (const cplx &v : x) {
        EXPECT_NEAR(v.real(), 1.0, 1e-15);
    }
    const std::vector<double> probs = outcome_probabilities(maximally_mixed_state(3, 3), id.Identity(3, 3),
                                                            id.Identity(3, 3));
    for (double p : probs) {
        EXPECT_NEAR(p, 1.0 / 9.0, 1e-14);
    }
}

TEST(Simulate, EstimatorIsUnbiasedForRandomStates) {
    Rng state_rng(113);
    for (int d : {2, 3}) {
        const BipartiteState s = testutil::random_state(d, d, state_rng, 1);
        const MomentPoint exact = normalized_point(decompose(s));
        const ObservableSpectrum a = simulation_observable(d);
        std::vector<double> r2;
        std::vector<double> r4;
        for (int rep = 0; rep < 30; ++rep) {
            Rng rng(derive_seed(5, {static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(rep)}));
            const MomentEstimate e = estimate_moments(s, a, 100, 12, rng);
            r2.push_back(e.r2);
            r4.push_back(e.r4);
        }
        const MeanSe m2 = mean_se(r2);
        const MeanSe m4 = mean_se(r4);
        EXPECT_NEAR(m2.mean, exact.r2t, 4.0 * m2.se) << "d=" << d;
        EXPECT_NEAR(m4.mean, exact.r4t, 4.0 * m4.se) << "d=" << d;
    }
}

TEST(Simulate, ComplexObservableGivesRealMoments) {
    Rng rng(127);
    const ObservableSpectrum a = simulation_observable(9);
    ASSERT_FALSE(a.is_real());
    const MomentEstimate e = estimate_moments(isotropic_state(9, 0.3), a, 20, 20, rng);
    EXPECT_LT(std::abs(e.r2_imag), 0.5 * std::abs(e.r2) + 0.2);
    EXPECT_TRUE(std::isfinite(e.r4));
}

TEST(Simulate, CriterionStatisticSigns) {
    for (int d = 2; d <= 4; ++d) {
        const CriterionValue mixed = criterion_statistic(0.0, 0.0, d, 1);
        EXPECT_TRUE(mixed.applicable);
        EXPECT_LE(mixed.value, 1e-15);
        const DetectionWindow w = detection_window(d, 1);
        const double p = 0.5 * (w.p_min + w.p_max);
        const double x = isotropic_r2t(d, p);
        const CriterionValue iso = criterion_statistic(x, g_lb(x, d), d, 1);
        EXPECT_GT(iso.value, 0.0) << "d=" << d;
        EXPECT_FALSE(iso.r2_only);
    }
    // States built on the lower boundary give D = 0.
    const MomentPoint trio = normalized_point(theorem2_state(qubit_trio()).bloch);
    EXPECT_NEAR(criterion_statistic(trio.r2t, trio.r4t, 2, 1).value, 0.0, 1e-12);
    const MomentPoint mub = normalized_point(theorem3_state(mub_prime(3), 3).bloch);
    EXPECT_NEAR(criterion_statistic(mub.r2t, mub.r4t, 3, 1).value, 0.0, 1e-12);
}

TEST(Simulate, CriterionContinuationIsContinuous) {
    for (int d = 2; d <= 3; ++d) {
        for (int k = 1; k < d; ++k) {
            const double c = trace_norm_radius(d, d, k);
            const double eps = 1e-9;
            const CriterionValue in = criterion_statistic(c * c - eps, 0.5, d, k);
            const CriterionValue out = criterion_statistic(c * c + eps, 0.5, d, k);
            EXPECT_TRUE(in.applicable);
            EXPECT_FALSE(out.applicable);
            EXPECT_NEAR(in.value, out.value, 1e-6);
            const CriterionValue lo = criterion_statistic(-eps, 0.5, d, k);
            EXPECT_FALSE(lo.applicable);
            EXPECT_NEAR(lo.value, criterion_statistic(0.0, 0.5, d, k).value, 1e-6);
        }
    }
}

TEST(Simulate, DetectionWindows) {
    const DetectionWindow w21 = detection_window(2, 1);
    EXPECT_NEAR(w21.p_min, 1.0 - 1.0 / std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(w21.p_max, 2.0 / 3.0, 1e-12);
    const DetectionWindow w31 = detection_window(3, 1);
    EXPECT_NEAR(w31.p_max, 0.75, 1e-12);
    const DetectionWindow w32 = detection_window(3, 2);
    EXPECT_LT(w32.p_min, w32.p_max);
    EXPECT_NEAR(w32.p_max, 0.375, 1e-12);
}

TEST(Simulate, StudyIsIndependentOfWorkerCount) {
    BudgetGrid g;
    g.d = {2, 3};
    g.p = {0.5};
    g.M = {5, 10};
    g.K = 10;
    g.reps = 6;
    g.seed = 11;
    g.workers = 1;
    const BudgetStudy a = run_budget_study(g);
    g.workers = 3;
    const BudgetStudy b = run_budget_study(g);
    std::ostringstream oa;
    std::ostringstream ob;
    write_budget_csv(oa, a);
    write_budget_csv(ob, b);
    EXPECT_EQ(oa.str(), ob.str());
    EXPECT_EQ(a.rows.size(), 4u);
    EXPECT_EQ(a.fits.size(), 2u);
}

TEST(Simulate, RunSimulationMatchesStudyRow) {
    SimulationConfig cfg;
    cfg.d = 2;
    cfg.p = 0.5;
    cfg.M = 8;
    cfg.K = 8;
    cfg.reps = 5;
    cfg.seed = 3;
    const SimulationResult r = run_simulation(cfg);
    BudgetGrid g;
    g.d = {2};
    g.p = {0.5};
    g.M = {8};
    g.K = 8;
    g.reps = 5;
    g.seed = 3;
    const BudgetStudy s = run_budget_study(g);
    EXPECT_EQ(r.r2_mean, s.rows[0].r2_mean);
    EXPECT_EQ(r.stat_std, s.rows[0].stat_std);
}

TEST(Simulate, ParseBudgetConfig) {
    const BudgetGrid g = parse_budget_config("d = [2, 3]\np = 0.45\nk_target = 1\nM = [10, 100]\nK = 50\nreps = 7\nseed = 9\n");
    EXPECT_EQ(g.d, (std::vector<int>{2, 3}));
    EXPECT_EQ(g.p, (std::vector<double>{0.45}));
    EXPECT_EQ(g.M, (std::vector<int>{10, 100}));
    EXPECT_EQ(g.K, 50);
    EXPECT_EQ(g.reps, 7);
    EXPECT_EQ(g.seed, 9u);
    EXPECT_THROW(parse_budget_config("d = 2\nshots = 5\n"), InputError);
    EXPECT_THROW(parse_budget_config("d = [2\n"), InputError);
    EXPECT_THROW(run_budget_study(parse_budget_config("K = 3\n")), InputError);
}

TEST(Simulate, CsvSchema) {
    BudgetGrid g;
    g.d = {2};
    g.p = {0.5};
    g.M = {4};
    g.K = 6;
    g.reps = 3;
    std::ostringstream os;
    write_budget_csv(os, run_budget_study(g));
    const std::string text = os.str();
    EXPECT_EQ(text.rfind("# window d=2 k=1", 0), 0u);
    EXPECT_NE(text.find("d,p,k,M,K,reps,r2_mean,r2_std,r4_mean,r4_std,stat_mean,stat_std,m_star,total\n"),
              std::string::npos);
}
