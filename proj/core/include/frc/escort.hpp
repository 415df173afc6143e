#pragma once

#include <functional>
#include <utility>

#include "frc/density.hpp"

namespace frc {

// The change of variable behind the differential-escort transform: the
// strictly increasing map y(x) with dy/dx = rho(x)^{1-alpha}, anchored at
// y(0) = 0 (or at the support point nearest 0 when 0 lies outside).
//
// Both directions are table-backed and cheap to query; the forward map is a
// C^1 interpolant whose knot slopes are the exact integrand values, refined
// until its midpoint error is below 1e-10, and the inverse solves the
// interpolant by safeguarded Newton and then polishes against the exact
// integrand. Queries are thread-safe once built.
struct EscortMap {
    double alpha;
    std::function<double(double)> y_of_x;
    std::function<double(double)> x_of_y;
    Interval y_range;  // image of the tabulated region
};

// Differential-escort transform of order alpha > 0: the density
// E[rho](y) = rho(x(y))^alpha in the deformed coordinate above. It is
// normalized by construction (the map trades density mass for length), which
// is verified numerically after the build.
//
// The table spans the region where rho exceeds 1e-16 of its peak; outside
// the image of that region the transformed density is zero. Throws
// std::domain_error for alpha <= 0 (the alpha = 0 limit has its own
// operation) and divergence_error when the cumulative integral of
// rho^{1-alpha} blows up toward a support endpoint or interior zero, or the
// truncated transform fails the normalization check -- both meaning this
// alpha is outside the usable range for this rho.
std::pair<DensityModel, EscortMap> escort_transform(const DensityModel& rho,
                                                    double alpha);

// The alpha -> 0 limit of the transform: every density flattens to the
// uniform density on an interval of unit length, realized directly through
// the cumulative distribution (mass below/above the anchor becomes the
// interval ends).
DensityModel escort_uniformize(const DensityModel& rho);

}  // namespace frc
