#pragma once

#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "corrgeom/bloch.hpp"
#include "corrgeom/observables.hpp"

namespace corrgeom {

using Rng = std::mt19937_64;

struct SimulationConfig {
    int d = 2;
    double p = 0.0;
    int M = 100;
    int K = 100;
    int reps = 100;
    int k_target = 1;
    std::uint64_t seed = 1;
};

struct SimulationResult {
    SimulationConfig config;
    double r2_mean = 0.0;
    double r2_std = 0.0;
    double r4_mean = 0.0;
    double r4_std = 0.0;
    double stat_mean = 0.0;
    double stat_std = 0.0;
    int applicable_reps = 0;             // reps with r2 inside the boundary domain
    std::optional<std::uint64_t> m_star;  // empty when stat_mean <= 0
    std::optional<std::uint64_t> total;   // m_star * K
};

/// (1-p)|φ+⟩⟨φ+| + p/d² · 1. Throws InputError unless 0 <= p <= 1.
BipartiteState isotropic_state(int d, double p);

/// Normalized moments of isotropic_state(d, p): r2t = (1-p)²(d+1)/(d-1), r4t = g_lb(r2t).
double isotropic_r2t(int d, double p);

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases of
/// diag(R) moved into Q.
CMat haar_unitary(int d, Rng &rng);

/// Deterministic 64-bit stream key from a master seed and a list of counters.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> counters);

/// Joint outcome distribution of measuring the computational basis on
/// (U_A ⊗ U_B) ρ (U_A ⊗ U_B)†. Throws NumericError if it does not sum to 1 (1e-9).
std::vector<double> outcome_probabilities(const BipartiteState &s, const CMat &ua, const CMat &ub);

/// K outcome products λ_i λ_j for a given pair of local unitaries.
std::vector<cplx> sample_setting(const BipartiteState &s, const ObservableSpectrum &a, const CMat &ua,
                                 const CMat &ub, int K, Rng &rng);

/// K outcome products for one Haar-random pair of local unitaries.
std::vector<cplx> sample_setting(const BipartiteState &s, const ObservableSpectrum &a, int K, Rng &rng);

/// Unbiased estimates of E[X]² and E[X]⁴ from i.i.d. samples X_1..X_K,
/// i.e. means over products of distinct samples. Requires K >= 4.
struct PowerEstimates {
    cplx second;
    cplx fourth;
};
PowerEstimates unbiased_powers(const std::vector<cplx> &x);

struct MomentEstimate {
    double r2 = 0.0;  // normalized second moment
    double r4 = 0.0;  // normalized fourth moment
    double r2_imag = 0.0;
    double r4_imag = 0.0;
};

/// M Haar settings with K shots each; per-setting U-statistics averaged over
/// settings, then normalized so that a pure product state gives (1, 1).
/// The observable must match moments up to t = 4.
MomentEstimate estimate_moments(const BipartiteState &s, const ObservableSpectrum &a, int M, int K, Rng &rng);

/// Observable used by the simulation: the rank-4 spectrum (complex for d >= 8).
ObservableSpectrum simulation_observable(int d);

struct CriterionValue {
    bool applicable = false;  // r2 inside [0, radius²], where the boundary is defined
    double value = 0.0;       // lower boundary at r2 minus r4; > 0 refutes Schmidt number <= k
    bool r2_only = false;     // r2 alone exceeds every Schmidt-number-k state
};

/// Outside [0, radius²] the value continues the outermost boundary branch
/// smoothly and applicable is false; ensemble statistics keep those samples.
CriterionValue criterion_statistic(double r2_hat, double r4_hat, int d, int k);

/// Isotropic noise range over which the two-moment statistic refutes k while
/// r2 alone does not: p_min <= p < p_max.
struct DetectionWindow {
    double p_min = 0.0;
    double p_max = 0.0;
};
DetectionWindow detection_window(int d, int k);

struct BudgetGrid {
    std::vector<int> d{2};
    std::vector<double> p{0.5};
    std::vector<int> k{1};
    std::vector<int> M{10, 30, 100, 300, 1000};
    int K = 100;
    int reps = 100;
    std::uint64_t seed = 1;
    int workers = 1;
};

/// Fitted 1/√M scaling of the statistic's spread for one (d, p, k).
struct BudgetFit {
    int d = 0;
    double p = 0.0;
    int k = 0;
    double slope = 0.0;      // log-log slope of stat_std against M
    double prefactor = 0.0;  // c in stat_std = c/√M
    double stat_mean = 0.0;  // at the largest M
    std::optional<std::uint64_t> m_star;
    std::optional<std::uint64_t> total;
};

struct BudgetStudy {
    BudgetGrid grid;
    std::vector<SimulationResult> rows;  // grid order: d, p, k, M
    std::vector<BudgetFit> fits;         // grid order: d, p, k
};

/// Results do not depend on grid.workers.
BudgetStudy run_budget_study(const BudgetGrid &grid);

/// Single configuration; M and reps from cfg, fit over that one M only.
SimulationResult run_simulation(const SimulationConfig &cfg);

/// Accepts scalar or array values for d, p, k (alias k_target), M; scalars for
/// K, reps, seed, workers. Throws InputError on unknown keys or bad values.
BudgetGrid parse_budget_config(const std::string &toml_text);

/// CSV with '#' window lines, header d,p,k,M,K,reps,r2_mean,...,m_star,total.
void write_budget_csv(std::ostream &os, const BudgetStudy &study);

}  // namespace corrgeom
