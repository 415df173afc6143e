#pragma once

#include <functional>

#include "frc/quadrature.hpp"

namespace frc {

/// A one-dimensional probability density with an analytic derivative.
///
/// Instances are immutable value types: the evaluators are pure closures, so
/// models can be copied and shared across threads freely. `pdf` vanishes
/// outside `support`; `dpdf` is the exact analytic derivative at interior
/// points and the one-sided interior limit (taken at a relative 1e-10 inset)
/// at a finite support endpoint.
struct DensityModel {
    std::function<double(double)> pdf;
    std::function<double(double)> dpdf;
    Interval support;
    /// Multiplicative factor that turned the defining un-normalized shape
    /// into a unit-mass density.
    double normalization_constant;
    /// True when the density is continuously differentiable on all of R,
    /// including across finite support endpoints.
    bool smooth;
};

/// Parameters of the stretched deformed Gaussian
///   g(x) = (1/Z) * (1 + (1-lambda)|x|^{p*})_+^{1/(lambda-1)},
/// where p* = p/(p-1). Requires lambda > 1 - p*. For lambda > 1 the support
/// is the compact interval |x| <= (lambda-1)^{-1/p*}; for lambda = 1 the
/// family degenerates to exp(-|x|^{p*}); for lambda < 1 it has a power tail.
struct StretchedGaussianParams {
    double p;
    double lambda;
    double Z;  ///< normalization integral of the un-normalized shape
};

/// Parameters of the three-parameter Gaussian family built from inverse
/// incomplete beta/gamma functions (the minimizers of the complexity bound).
struct PblGaussianParams {
    double p;
    double beta;
    double lambda;
    /// Second argument of the incomplete beta function in the lambda != 1
    /// construction: q = (beta-1)/|1-lambda| + [lambda<1]/p.
    double q;
    /// Half-width of the support; +infinity for the heavy-tailed branches.
    /// Finite exactly when B(1/p*, q) is finite (lambda != 1) or beta > 1
    /// (lambda = 1).
    double support_halfwidth;
    /// Scale constant of the equivalent differential-escort representation
    /// (escort of a stretched Gaussian with index alpha = 1/(beta+1-lambda)):
    /// kappa = Z^{alpha-1} / (p* eps0^{1/p*}) with eps0 = alpha|1-lambda|.
    /// NaN when that route does not apply (alpha <= 0 or the base family
    /// parameter falls outside its own domain).
    double kappa;
};

/// Gaussian with mean `mu` and standard deviation `sigma > 0`.
DensityModel gaussian(double mu, double sigma);

/// Stretched deformed Gaussian; see StretchedGaussianParams. Requires p > 1
/// and lambda > 1 - p/(p-1).
DensityModel stretched_gaussian(double p, double lambda);

/// The (p,beta,lambda)-Gaussian: the centered minimizer of the
/// Fisher/entropy-power complexity at parameters (p,beta,lambda). Built
/// branch-wise from the inverse incomplete beta (lambda != 1) or inverse
/// incomplete gamma functions (lambda = 1), with the derivative supplied by
/// the inverse-function rule. Requires p > 1, beta > 0, lambda > 0 and
/// lambda > 1 - beta p/(p-1).
DensityModel pbl_gaussian(double p, double beta, double lambda);

/// The density x -> rho((x-x0)/sigma)/sigma with correspondingly moved
/// support and chain-ruled derivative. Requires sigma > 0.
DensityModel translate_scale(const DensityModel& rho, double x0, double sigma);

/// Closed-form parameter block for stretched_gaussian (same preconditions).
StretchedGaussianParams stretched_params(double p, double lambda);

/// Parameter block for pbl_gaussian (same preconditions).
PblGaussianParams pbl_params(double p, double beta, double lambda);

}  // namespace frc
