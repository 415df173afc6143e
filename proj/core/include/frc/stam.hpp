#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "frc/density.hpp"

namespace frc {

// Which lambda branch of the bound formula was evaluated.
enum class LambdaBranch { below_one, at_one, above_one };

// Membership of a parameter pair (beta, lambda) in the regions where the
// complexity bound is known, plus the escort indices that move the pair onto
// the two diagonal lines where minimizers are stretched Gaussians.
//
// The measure-zero lines L and L-bar are detected with a 1e-12 relative
// tolerance, so that points produced by composing the involution and affine
// maps in floating point still classify onto them.
struct DomainClass {
    bool in_D_tilde;  // lambda > 1 - beta p*: the bound exists
    bool in_D;        // beta in (1/p*, 1/p* + min(1, lambda)]
    bool on_L;        // beta = lambda > 1/(1+p*)
    bool on_L_bar;    // involution image of L: beta = 1+(1-lambda)/p*,
                      // 0 < lambda < 1+p*
    // alpha with affine_A(alpha, beta, lambda) landing on L (resp. L-bar),
    // when that lands inside the valid part of the line.
    std::optional<double> escort_index_to_L;
    std::optional<double> escort_index_to_L_bar;
};

struct BoundReport {
    double K;            // sharp lower bound for the complexity
    double zeta;         // beta + (lambda-1)_+ / p*
    DomainClass domain;
    LambdaBranch branch;
};

// Region membership and escort routes for (beta, lambda) at exponent p.
// Out-of-domain pairs are a valid classification, never an error.
DomainClass classify(double p, double beta, double lambda);

// The involution (beta, lambda) -> ((beta p* + lambda - 1)/(lambda p*),
// 1/lambda). Applying it twice is the identity; the bound transforms as
// K -> lambda^2 K.
std::pair<double, double> involution_T(double p, double beta, double lambda);

// The affine family (beta, lambda) -> (a beta, 1 + a(lambda-1)), a > 0.
// The bound transforms as K -> a^{-2} K.
std::pair<double, double> affine_A(double a, double beta, double lambda);

// Sharp bound K for the (p, beta, lambda) complexity, valid on all of
// D-tilde. Throws std::domain_error outside it.
BoundReport sharp_bound(double p, double beta, double lambda);

// Verifies that rho is (a dilate of) a minimizer by checking the minimizer
// differential equation: with theta = p*/(beta p* - 1) and u = rho^{1/theta},
//   gamma(x) = theta (1-lambda) (|u'|^{p-2} u')' / (u^{lambda theta - 1} -
//              u^{theta - 1}),
// (denominator -u^{theta-1} ln u, without the theta(1-lambda) prefactor, in
// the Shannon band |lambda-1| < 1e-6) must be one constant gamma > 0.
// Returns the relative spread max|gamma(x) - gamma_med| / gamma_med over the
// grid; gamma_med (the median) is written to *gamma_out when given.
//
// The equation pins the amplitude of u, so of all dilates of a minimizing
// density exactly one satisfies it. The check therefore first fits the
// two-coefficient form of the equation to recover the canonical dilation,
// rescales rho to it internally, and only then evaluates gamma(x); the
// result is thus invariant under rescaling of rho, matching the "up to a
// scale factor" sense in which minimizers are unique.
//
// Outer derivative by 5-point central differences with relative step 1e-4;
// u' itself comes from the analytic density derivative. Requires
// (beta, lambda) in D (throws std::domain_error otherwise, or when rho is
// not strictly positive around a grid point); throws std::range_error when
// the equation denominator vanishes at a grid point (callers must exclude
// x = 0 and other symmetry points).
double edo_residual(double p, double beta, double lambda,
                    const DensityModel& rho, const std::vector<double>& grid,
                    double* gamma_out = nullptr);

}  // namespace frc
