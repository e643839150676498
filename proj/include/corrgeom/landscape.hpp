#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "corrgeom/moments.hpp"

namespace corrgeom {

// All abscissae x are normalized second moments r2t; ordinates are r4t.

/// Lower boundary of the separable region, 0 <= x <= 1. Piecewise in x with
/// kinks at 1/(d1²-1), ..., 1/3, 1/2. Throws InputError outside [0, 1].
double f_lb(double x, int d1);

/// Upper boundary of the separable region (and of all states): x².
double f_ub(double x);

/// Lower boundary of all states, traced by the isotropic family.
double g_lb(double x, int d1);

/// Trace-norm radius of the Schmidt-number-k set in normalized units:
/// schmidt_bound(d1, d2, k) / √((d1-1)(d2-1)).
double trace_norm_radius(int d1, int d2, int k);

/// Largest x reachable by a Schmidt-number-k state under the purity bound:
/// 1 + (k-1)/k · (d1+d2)/((d1-1)(d2-1)).
double purity_cap(int d1, int d2, int k);

/// Minimum of r4t at fixed x over singular-value configurations obeying the
/// Schmidt-number-k trace-norm constraint. Defined for 0 <= x <= radius².
double lower_boundary_l1(double x, int d1, int d2, int k);

/// lower_boundary_l1 restricted to the physical range x <= purity_cap.
/// Throws InputError beyond it.
double lower_boundary_k(double x, int d1, int d2, int k);

/// x² for 0 <= x <= purity_cap(d1, d2, k); throws InputError beyond. Tight
/// only for k = 1.
double region_upper_k(double x, int d1, int d2, int k);

/// Abscissae of the kinks of lower_boundary_k inside [0, purity_cap], ascending.
std::vector<double> kink_positions(int d1, int d2, int k);

struct RegionClass {
    std::optional<int> k;  // smallest Schmidt-number region containing the point; empty if none
};

/// Tolerance used when testing region membership.
inline constexpr double kRegionTol = 1e-9;

RegionClass classify(const MomentPoint &p);

struct CurveSample {
    double x = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool is_kink = false;
};

struct BoundaryCurves {
    int d1 = 0;
    int d2 = 0;
    int k = 1;
    std::vector<CurveSample> samples;  // ascending in x
    std::vector<double> kinks;
    bool upper_tight = true;
};

/// Uniform grid on [0, purity_cap] with the kink abscissae inserted.
BoundaryCurves emit_curves(int d1, int d2, int k, int n_samples);

/// CSV with '#' metadata lines, then header x,lower,upper,k,d1,d2,is_kink.
void write_curves_csv(std::ostream &os, const BoundaryCurves &curves);

}  // namespace corrgeom
