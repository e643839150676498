#include "corrgeom/simulate.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <thread>
#include <type_traits>

#include <fmt/format.h>
#include <fmt/ostream.h>
#include <toml.hpp>

#include "corrgeom/errors.hpp"
#include "corrgeom/landscape.hpp"
#include "corrgeom/moments.hpp"

namespace corrgeom {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

double uniform01(Rng &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

struct Summary {
    double mean = std::numeric_limits<double>::quiet_NaN();
    double std = std::numeric_limits<double>::quiet_NaN();
    int n = 0;
};

Summary summarize(const std::vector<double> &xs) {
    Summary s;
    s.n = static_cast<int>(xs.size());
    if (xs.empty()) {
        return s;
    }
    double sum = 0.0;
    for (double x : xs) {
        sum += x;
    }
    s.mean = sum / s.n;
    if (s.n < 2) {
        s.std = 0.0;
        return s;
    }
    double ss = 0.0;
    for (double x : xs) {
        ss += (x - s.mean) * (x - s.mean);
    }
    s.std = std::sqrt(ss / (s.n - 1));
    return s;
}

void check_observable(const ObservableSpectrum &a, int d) {
    if (a.d != d || static_cast<int>(a.eigenvalues.size()) != d) {
        throw InputError("observable dimension does not match the state");
    }
    if (a.match_order && *a.match_order < 4) {
        throw InputError("observable must match moments up to t = 4");
    }
}

template <class Fn>
void parallel_for(int n, int workers, Fn &&fn) {
    workers = std::clamp(workers, 1, std::max(1, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&fn, w, workers, n] {
            for (int i = w; i < n; i += workers) {
                fn(i);
            }
        });
    }
}

}  // namespace

BipartiteState isotropic_state(int d, double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw InputError("isotropic_state: p=" + std::to_string(p) + " outside [0, 1]");
    }
    const BipartiteState bell = phi_plus_state(d);
    const int n = d * d;
    CMat rho = (1.0 - p) * bell.rho() + (p / n) * CMat::Identity(n, n);
    return BipartiteState(std::move(rho), d, d);
}

double isotropic_r2t(int d, double p) { return (1.0 - p) * (1.0 - p) * (d + 1.0) / (d - 1.0); }

CMat haar_unitary(int d, Rng &rng) {
    if (d < 1) {
        throw InputError("haar_unitary: d must be >= 1");
    }
    std::normal_distribution<double> normal(0.0, 1.0 / std::sqrt(2.0));
    CMat z(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            const double re = normal(rng);
            const double im = normal(rng);
            z(i, j) = cplx(re, im);
        }
    }
    Eigen::HouseholderQR<CMat> qr(z);
    CMat q = qr.householderQ();
    const CMat &r = qr.matrixQR();
    for (int i = 0; i < d; ++i) {
        const double mag = std::abs(r(i, i));
        if (mag > 0.0) {
            q.col(i) *= r(i, i) / mag;
        }
    }
    return q;
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> counters) {
    std::uint64_t s = splitmix64(master);
    for (std::uint64_t c : counters) {
        s = splitmix64(s ^ splitmix64(c + 0x632be59bd9b4e019ULL));
    }
    return s;
}

std::vector<double> outcome_probabilities(const BipartiteState &s, const CMat &ua, const CMat &ub) {
    if (ua.rows() != s.d1() || ub.rows() != s.d2()) {
        throw InputError("outcome_probabilities: unitary size does not match the state");
    }
    const CMat w = qla::kron(ua, ub);
    const CMat rotated = w * s.rho() * w.adjoint();
    std::vector<double> probs(static_cast<std::size_t>(rotated.rows()));
    double total = 0.0;
    for (Eigen::Index i = 0; i < rotated.rows(); ++i) {
        probs[static_cast<std::size_t>(i)] = std::max(0.0, rotated(i, i).real());
        total += rotated(i, i).real();
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw NumericError("outcome probabilities sum to " + std::to_string(total), std::abs(total - 1.0));
    }
    return probs;
}

std::vector<cplx> sample_setting(const BipartiteState &s, const ObservableSpectrum &a, const CMat &ua,
                                 const CMat &ub, int K, Rng &rng) {
    if (K < 1) {
        throw InputError("sample_setting: K must be >= 1");
    }
    if (s.d1() != s.d2()) {
        throw InputError("sample_setting: requires d1 = d2");
    }
    const int d = s.d1();
    if (a.d != d || static_cast<int>(a.eigenvalues.size()) != d) {
        throw InputError("sample_setting: observable dimension does not match the state");
    }
    const std::vector<double> probs = outcome_probabilities(s, ua, ub);
    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cdf[i] = acc;
    }
    std::vector<cplx> out;
    out.reserve(static_cast<std::size_t>(K));
    for (int shot = 0; shot < K; ++shot) {
        const double u = uniform01(rng) * acc;
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        auto r = static_cast<int>(std::min<std::ptrdiff_t>(it - cdf.begin(), static_cast<std::ptrdiff_t>(cdf.size()) - 1));
        out.push_back(a.eigenvalues[static_cast<std::size_t>(r / d)] * a.eigenvalues[static_cast<std::size_t>(r % d)]);
    }
    return out;
}

std::vector<cplx> sample_setting(const BipartiteState &s, const ObservableSpectrum &a, int K, Rng &rng) {
    const CMat ua = haar_unitary(s.d1(), rng);
    const CMat ub = haar_unitary(s.d2(), rng);
    return sample_setting(s, a, ua, ub, K, rng);
}

PowerEstimates unbiased_powers(const std::vector<cplx> &x) {
    const auto k = static_cast<double>(x.size());
    if (x.size() < 4) {
        throw InputError("unbiased_powers: need at least 4 samples, got " + std::to_string(x.size()));
    }
    cplx s1 = 0.0;
    cplx s2 = 0.0;
    cplx s3 = 0.0;
    cplx s4 = 0.0;
    for (const cplx &v : x) {
        const cplx v2 = v * v;
        s1 += v;
        s2 += v2;
        s3 += v2 * v;
        s4 += v2 * v2;
    }
    PowerEstimates e;
    e.second = (s1 * s1 - s2) / (k * (k - 1.0));
    e.fourth = (s1 * s1 * s1 * s1 - 6.0 * s1 * s1 * s2 + 3.0 * s2 * s2 + 8.0 * s1 * s3 - 6.0 * s4) /
               (k * (k - 1.0) * (k - 2.0) * (k - 3.0));
    return e;
}

MomentEstimate estimate_moments(const BipartiteState &s, const ObservableSpectrum &a, int M, int K, Rng &rng) {
    if (M < 1) {
        throw InputError("estimate_moments: M must be >= 1");
    }
    if (K < 4) {
        throw InputError("estimate_moments: K=" + std::to_string(K) + " is below 4, the fourth moment needs 4 shots");
    }
    if (s.d1() != s.d2()) {
        throw InputError("estimate_moments: requires d1 = d2");
    }
    const int d = s.d1();
    check_observable(a, d);
    cplx sum2 = 0.0;
    cplx sum4 = 0.0;
    for (int m = 0; m < M; ++m) {
        const PowerEstimates e = unbiased_powers(sample_setting(s, a, K, rng));
        sum2 += e.second;
        sum4 += e.fourth;
    }
    const cplx r2 = r2_normalization(d, d) * sum2 / static_cast<double>(M);
    const cplx r4 = r4_normalization(d, d) * sum4 / static_cast<double>(M);
    return {r2.real(), r4.real(), r2.imag(), r4.imag()};
}

ObservableSpectrum simulation_observable(int d) { return spectrum_rank4(d); }

CriterionValue criterion_statistic(double r2_hat, double r4_hat, int d, int k) {
    const double radius = trace_norm_radius(d, d, k);
    const double c2 = radius * radius;
    CriterionValue v;
    if (!std::isfinite(r2_hat) || !std::isfinite(r4_hat)) {
        v.value = std::numeric_limits<double>::quiet_NaN();
        return v;
    }
    v.r2_only = r2_hat > std::min(purity_cap(d, d, k), c2);
    v.applicable = r2_hat >= 0.0 && r2_hat <= c2;
    double lower = 0.0;
    if (v.applicable) {
        lower = lower_boundary_l1(r2_hat, d, d, k);
    } else if (r2_hat < 0.0) {
        // Equal-values branch, even in x.
        const double n = d * d - 1.0;
        lower = (n + 2.0) * r2_hat * r2_hat / (3.0 * n);
    } else {
        // Two-value branch continued past l = 0.
        const double l = (radius - std::sqrt(2.0 * r2_hat - c2)) / 2.0;
        const double m = radius - l;
        lower = (2.0 * (l * l * l * l + m * m * m * m) + r2_hat * r2_hat) / 3.0;
    }
    v.value = lower - r4_hat;
    return v;
}

DetectionWindow detection_window(int d, int k) {
    const double radius = trace_norm_radius(d, d, k);
    const double c2 = radius * radius;
    const double x_hi = std::min(purity_cap(d, d, k), c2);
    const double x_lo = c2 / (d * d - 1.0);
    auto p_of = [d](double x) { return std::clamp(1.0 - std::sqrt(x * (d - 1.0) / (d + 1.0)), 0.0, 1.0); };
    return {p_of(x_hi), p_of(x_lo)};
}

BudgetStudy run_budget_study(const BudgetGrid &grid) {
    if (grid.K < 4) {
        throw InputError("budget study: K must be >= 4");
    }
    if (grid.reps < 1) {
        throw InputError("budget study: reps must be >= 1");
    }
    for (int m : grid.M) {
        if (m < 1) {
            throw InputError("budget study: M values must be >= 1");
        }
    }
    BudgetStudy study;
    study.grid = grid;
    for (int d : grid.d) {
        if (d < 2 || d > 10) {
            throw InputError("budget study: d=" + std::to_string(d) + " outside [2, 10]");
        }
        for (int k : grid.k) {
            if (k < 1 || k > d) {
                throw InputError("budget study: k=" + std::to_string(k) + " outside [1, d]");
            }
        }
        const ObservableSpectrum obs = simulation_observable(d);
        for (double p : grid.p) {
            const BipartiteState state = isotropic_state(d, p);

            // Moment estimates are shared by every k at a given (d, p, M).
            std::vector<std::vector<MomentEstimate>> est(grid.M.size());
            for (std::size_t mi = 0; mi < grid.M.size(); ++mi) {
                const int M = grid.M[mi];
                est[mi].resize(static_cast<std::size_t>(grid.reps));
                parallel_for(grid.reps, grid.workers, [&](int rep) {
                    Rng rng(derive_seed(grid.seed, {static_cast<std::uint64_t>(d), std::bit_cast<std::uint64_t>(p),
                                                    static_cast<std::uint64_t>(M), static_cast<std::uint64_t>(rep)}));
                    est[mi][static_cast<std::size_t>(rep)] = estimate_moments(state, obs, M, grid.K, rng);
                });
            }

            for (int k : grid.k) {
                std::vector<SimulationResult> rows;
                for (std::size_t mi = 0; mi < grid.M.size(); ++mi) {
                    std::vector<double> r2s;
                    std::vector<double> r4s;
                    std::vector<double> stats;
                    int in_domain = 0;
                    for (const MomentEstimate &e : est[mi]) {
                        r2s.push_back(e.r2);
                        r4s.push_back(e.r4);
                        const CriterionValue cv = criterion_statistic(e.r2, e.r4, d, k);
                        in_domain += cv.applicable ? 1 : 0;
                        if (std::isfinite(cv.value)) {
                            stats.push_back(cv.value);
                        }
                    }
                    const Summary s2 = summarize(r2s);
                    const Summary s4 = summarize(r4s);
                    const Summary st = summarize(stats);
                    SimulationResult row;
                    row.config = {d, p, grid.M[mi], grid.K, grid.reps, k, grid.seed};
                    row.r2_mean = s2.mean;
                    row.r2_std = s2.std;
                    row.r4_mean = s4.mean;
                    row.r4_std = s4.std;
                    row.stat_mean = st.mean;
                    row.stat_std = st.std;
                    row.applicable_reps = in_domain;
                    rows.push_back(row);
                }

                BudgetFit fit;
                fit.d = d;
                fit.p = p;
                fit.k = k;
                double sx = 0.0;
                double sy = 0.0;
                double sxx = 0.0;
                double sxy = 0.0;
                double s_c = 0.0;
                int n = 0;
                for (const SimulationResult &r : rows) {
                    if (!(r.stat_std > 0.0)) {
                        continue;
                    }
                    const double x = std::log(static_cast<double>(r.config.M));
                    const double y = std::log(r.stat_std);
                    sx += x;
                    sy += y;
                    sxx += x * x;
                    sxy += x * y;
                    s_c += y + 0.5 * x;
                    ++n;
                }
                fit.slope = std::numeric_limits<double>::quiet_NaN();
                fit.prefactor = std::numeric_limits<double>::quiet_NaN();
                if (n >= 2 && n * sxx - sx * sx > 0.0) {
                    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
                }
                if (n >= 1) {
                    fit.prefactor = std::exp(s_c / n);
                }
                const auto largest = std::max_element(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
                    return a.config.M < b.config.M;
                });
                fit.stat_mean = largest->stat_mean;
                if (std::isfinite(fit.prefactor) && fit.stat_mean > 0.0) {
                    const double m = std::ceil(std::pow(3.0 * fit.prefactor / fit.stat_mean, 2));
                    if (m < 1e18) {
                        fit.m_star = static_cast<std::uint64_t>(std::max(1.0, m));
                        fit.total = *fit.m_star * static_cast<std::uint64_t>(grid.K);
                    }
                }
                for (SimulationResult &r : rows) {
                    r.m_star = fit.m_star;
                    r.total = fit.total;
                    study.rows.push_back(r);
                }
                study.fits.push_back(fit);
            }
        }
    }
    return study;
}

SimulationResult run_simulation(const SimulationConfig &cfg) {
    BudgetGrid grid;
    grid.d = {cfg.d};
    grid.p = {cfg.p};
    grid.k = {cfg.k_target};
    grid.M = {cfg.M};
    grid.K = cfg.K;
    grid.reps = cfg.reps;
    grid.seed = cfg.seed;
    return run_budget_study(grid).rows.front();
}

namespace {

template <class T>
std::vector<T> read_list(const toml::node &node, const std::string &key) {
    std::vector<T> out;
    auto read_one = [&key](const toml::node &n) -> T {
        if constexpr (std::is_same_v<T, double>) {
            if (auto v = n.value<double>()) {
                return *v;
            }
        } else {
            if (auto v = n.value<std::int64_t>()) {
                return static_cast<T>(*v);
            }
        }
        throw InputError("config key '" + key + "' has a value of the wrong type");
    };
    if (const toml::array *arr = node.as_array()) {
        if (arr->empty()) {
            throw InputError("config key '" + key + "' is an empty array");
        }
        for (const toml::node &n : *arr) {
            out.push_back(read_one(n));
        }
    } else {
        out.push_back(read_one(node));
    }
    return out;
}

template <class T>
T read_scalar(const toml::node &node, const std::string &key) {
    if (node.is_array()) {
        throw InputError("config key '" + key + "' must be a scalar");
    }
    return read_list<T>(node, key).front();
}

}  // namespace

BudgetGrid parse_budget_config(const std::string &toml_text) {
    toml::table tbl;
    try {
        tbl = toml::parse(toml_text);
    } catch (const toml::parse_error &e) {
        const auto &src = e.source();
        throw InputError(fmt::format("config parse error at line {}, column {}: {}", src.begin.line, src.begin.column,
                                     e.description()));
    }
    BudgetGrid grid;
    for (const auto &[raw_key, node] : tbl) {
        const std::string key(raw_key.str());
        if (key == "d") {
            grid.d = read_list<int>(node, key);
        } else if (key == "p") {
            grid.p = read_list<double>(node, key);
        } else if (key == "k" || key == "k_target") {
            grid.k = read_list<int>(node, key);
        } else if (key == "M") {
            grid.M = read_list<int>(node, key);
        } else if (key == "K") {
            grid.K = read_scalar<int>(node, key);
        } else if (key == "reps") {
            grid.reps = read_scalar<int>(node, key);
        } else if (key == "seed") {
            const auto s = read_scalar<std::int64_t>(node, key);
            if (s < 0) {
                throw InputError("config key 'seed' must be non-negative");
            }
            grid.seed = static_cast<std::uint64_t>(s);
        } else if (key == "workers") {
            grid.workers = read_scalar<int>(node, key);
        } else {
            throw InputError("unknown config key '" + key + "'");
        }
    }
    for (double p : grid.p) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw InputError("config: p values must lie in [0, 1]");
        }
    }
    if (grid.K < 4) {
        throw InputError("config: K must be >= 4");
    }
    if (grid.reps < 1 || grid.workers < 1) {
        throw InputError("config: reps and workers must be >= 1");
    }
    for (int m : grid.M) {
        if (m < 1) {
            throw InputError("config: M values must be >= 1");
        }
    }
    for (int d : grid.d) {
        if (d < 2 || d > 10) {
            throw InputError("config: d values must lie in [2, 10]");
        }
        for (int k : grid.k) {
            if (k < 1 || k > d) {
                throw InputError("config: k values must lie in [1, d]");
            }
        }
    }
    return grid;
}

void write_budget_csv(std::ostream &os, const BudgetStudy &study) {
    for (int d : study.grid.d) {
        for (int k : study.grid.k) {
            const DetectionWindow w = detection_window(d, k);
            fmt::print(os, "# window d={} k={} p_min={:.12g} p_max={:.12g}{}\n", d, k, w.p_min, w.p_max,
                       w.p_min < w.p_max ? "" : " empty");
        }
    }
    for (const BudgetFit &f : study.fits) {
        fmt::print(os, "# fit d={} p={} k={} slope={:.6g} prefactor={:.6g} stat_mean={:.6g}\n", f.d, f.p, f.k, f.slope,
                   f.prefactor, f.stat_mean);
    }
    fmt::print(os, "d,p,k,M,K,reps,r2_mean,r2_std,r4_mean,r4_std,stat_mean,stat_std,m_star,total\n");
    for (const SimulationResult &r : study.rows) {
        const std::string m_star = r.m_star ? std::to_string(*r.m_star) : "inf";
        const std::string total = r.total ? std::to_string(*r.total) : "inf";
        fmt::print(os, "{},{},{},{},{},{},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{:.12g},{},{}\n", r.config.d,
                   r.config.p, r.config.k_target, r.config.M, r.config.K, r.config.reps, r.r2_mean, r.r2_std,
                   r.r4_mean, r.r4_std, r.stat_mean, r.stat_std, m_star, total);
    }
}

}  // namespace corrgeom
