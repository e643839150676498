#include "corrgeom/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "corrgeom/criteria.hpp"
#include "corrgeom/errors.hpp"

namespace corrgeom {

namespace {

constexpr double kDomainTol = 1e-12;

void check_dims(int d1, int d2, int k) {
    if (d1 < 2 || d1 > d2) {
        throw InputError("landscape: requires 2 <= d1 <= d2");
    }
    if (k < 1 || k > d1) {
        throw InputError("landscape: Schmidt number k=" + std::to_string(k) + " outside [1, " + std::to_string(d1) + "]");
    }
}

}  // namespace

double f_lb(double x, int d1) {
    if (d1 < 2) {
        throw InputError("f_lb: d1 must be >= 2");
    }
    if (!(x >= -kDomainTol && x <= 1.0 + kDomainTol)) {
        throw InputError("f_lb: x=" + std::to_string(x) + " outside [0, 1]");
    }
    x = std::clamp(x, 0.0, 1.0);
    const int n = d1 * d1 - 1;
    if (x < 1.0 / n) {
        return g_lb(x, d1);
    }
    // Branch K covers [1/K, 1/(K-1)); K = d1² - m in the usual indexing.
    int big_k = static_cast<int>(std::ceil(1.0 / x));
    while (big_k > 2 && x >= 1.0 / (big_k - 1)) {
        --big_k;
    }
    while (x < 1.0 / big_k) {
        ++big_k;
    }
    big_k = std::clamp(big_k, 2, n);
    const double kk = big_k;
    const double v = std::max(0.0, kk * (kk - 1.0) * (x - 1.0 / kk));
    const double sv = std::sqrt(v);
    return x * x / 3.0 +
           2.0 / (3.0 * std::pow(kk, 4)) * (std::pow(sv - 1.0, 4) + std::pow(sv + kk - 1.0, 4) / std::pow(kk - 1.0, 3));
}

double f_ub(double x) {
    if (!(x >= -kDomainTol)) {
        throw InputError("f_ub: x must be >= 0");
    }
    return x * x;
}

double g_lb(double x, int d1) {
    if (!(x >= -kDomainTol)) {
        throw InputError("g_lb: x must be >= 0");
    }
    const double dd = static_cast<double>(d1) * d1;
    return (dd + 1.0) / (3.0 * (dd - 1.0)) * x * x;
}

double trace_norm_radius(int d1, int d2, int k) {
    check_dims(d1, d2, k);
    return schmidt_bound(d1, d2, k) / std::sqrt(static_cast<double>(d1 - 1) * (d2 - 1));
}

double purity_cap(int d1, int d2, int k) {
    check_dims(d1, d2, k);
    return 1.0 + (k - 1.0) / k * (d1 + d2) / (static_cast<double>(d1 - 1) * (d2 - 1));
}

double lower_boundary_l1(double x, int d1, int d2, int k) {
    const double c = trace_norm_radius(d1, d2, k);
    const double c2 = c * c;
    if (!(x >= -kDomainTol) || x > c2 * (1.0 + kDomainTol)) {
        throw InputError("lower_boundary: x=" + std::to_string(x) + " outside [0, " + std::to_string(c2) + "]");
    }
    x = std::clamp(x, 0.0, c2);
    const int n = d1 * d1 - 1;

    // Candidates in units s = σ/√((d1-1)(d2-1)): Σs² = x, Σs <= c.
    double best = std::numeric_limits<double>::infinity();
    // Trace-norm constraint inactive: K equal values.
    for (int kk = 1; kk <= n; ++kk) {
        if (kk * x <= c2 * (1.0 + kDomainTol)) {
            best = std::min(best, x * x / kk);
        }
    }
    // Constraint active: one value l and K-1 values m, l + (K-1)m = c, l <= m.
    for (int kk = 2; kk <= n; ++kk) {
        double disc = (kk - 1.0) * (kk * x - c2);
        if (disc < -kDomainTol * c2) {
            continue;
        }
        disc = std::max(0.0, disc);
        const double l = (c - std::sqrt(disc)) / kk;
        if (l < -kDomainTol * c) {
            continue;
        }
        const double m = (c - l) / (kk - 1.0);
        const double lp = std::max(0.0, l);
        best = std::min(best, lp * lp * lp * lp + (kk - 1.0) * m * m * m * m);
    }
    return (2.0 * best + x * x) / 3.0;
}

double lower_boundary_k(double x, int d1, int d2, int k) {
    const double cap = purity_cap(d1, d2, k);
    if (x > cap * (1.0 + kDomainTol)) {
        throw InputError("lower_boundary_k: x=" + std::to_string(x) + " exceeds the purity cap " +
                         std::to_string(cap) + " for k=" + std::to_string(k));
    }
    return lower_boundary_l1(std::min(x, cap), d1, d2, k);
}

double region_upper_k(double x, int d1, int d2, int k) {
    const double cap = purity_cap(d1, d2, k);
    if (!(x >= -kDomainTol) || x > cap * (1.0 + kDomainTol)) {
        throw InputError("region_upper_k: x=" + std::to_string(x) + " outside [0, " + std::to_string(cap) +
                         "] for k=" + std::to_string(k));
    }
    return x * x;
}

std::vector<double> kink_positions(int d1, int d2, int k) {
    const double c = trace_norm_radius(d1, d2, k);
    const double cap = purity_cap(d1, d2, k);
    const int n = d1 * d1 - 1;
    std::vector<double> out;
    for (int kk = n; kk >= 2; --kk) {
        const double x = c * c / kk;
        if (x <= cap * (1.0 + kDomainTol)) {
            out.push_back(x);
        }
    }
    return out;
}

RegionClass classify(const MomentPoint &p) {
    for (int k = 1; k <= p.d1; ++k) {
        const double cap = purity_cap(p.d1, p.d2, k);
        if (p.r2t > cap + kRegionTol || p.r2t < -kRegionTol) {
            continue;
        }
        const double x = std::clamp(p.r2t, 0.0, cap);
        const double lower = lower_boundary_k(x, p.d1, p.d2, k);
        const double upper = region_upper_k(x, p.d1, p.d2, k);
        if (p.r4t >= lower - kRegionTol && p.r4t <= upper + kRegionTol) {
            return {k};
        }
    }
    return {};
}

BoundaryCurves emit_curves(int d1, int d2, int k, int n_samples) {
    check_dims(d1, d2, k);
    if (n_samples < 2) {
        throw InputError("emit_curves: need at least 2 samples");
    }
    BoundaryCurves out;
    out.d1 = d1;
    out.d2 = d2;
    out.k = k;
    out.upper_tight = (k == 1);
    out.kinks = kink_positions(d1, d2, k);

    const double cap = purity_cap(d1, d2, k);
    std::vector<std::pair<double, bool>> xs;
    for (int i = 0; i < n_samples; ++i) {
        xs.emplace_back(cap * i / (n_samples - 1.0), false);
    }
    for (double kx : out.kinks) {
        auto hit = std::find_if(xs.begin(), xs.end(), [kx](const auto &e) { return std::abs(e.first - kx) <= 1e-12; });
        if (hit != xs.end()) {
            hit->second = true;
        } else {
            xs.emplace_back(kx, true);
        }
    }
    std::sort(xs.begin(), xs.end());
    for (const auto &[x, kink] : xs) {
        out.samples.push_back({x, lower_boundary_k(x, d1, d2, k), region_upper_k(x, d1, d2, k), kink});
    }
    return out;
}

void write_curves_csv(std::ostream &os, const BoundaryCurves &curves) {
    fmt::print(os, "# d1={} d2={} k={} kinks={} upper_bound={} upper_tight={}\n", curves.d1, curves.d2, curves.k,
               curves.kinks.size(), curves.upper_tight ? "exact" : "purity", curves.upper_tight ? "true" : "false");
    fmt::print(os, "x,lower,upper,k,d1,d2,is_kink\n");
    for (const CurveSample &s : curves.samples) {
        fmt::print(os, "{:.17g},{:.17g},{:.17g},{},{},{},{}\n", s.x, s.lower, s.upper, curves.k, curves.d1, curves.d2,
                   s.is_kink ? 1 : 0);
    }
}

}  // namespace corrgeom
