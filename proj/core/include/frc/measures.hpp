#pragma once

#include "frc/density.hpp"

namespace frc {

// Parameter triple of the complexity measure, carried together with the
// Hölder conjugate p* = p/(p-1) that every downstream formula needs.
struct MeasureParams {
    double p;       // > 1
    double beta;    // > 0
    double lambda;  // > 0
    double p_star;  // p/(p-1), so 1/p + 1/p_star = 1
};

// Validates p > 1, beta > 0, lambda > 0 and fills in the conjugate exponent.
// Throws std::domain_error on violation.
MeasureParams measure_params(double p, double beta, double lambda);

// Half-width of the band around lambda = 1 inside which renyi_entropy_power
// evaluates the Shannon limit instead of the unstable (1-lambda)^{-1} form.
inline constexpr double kShannonBand = 1e-6;

// Entropy power exp(2 H_lambda) with H_lambda = (1-lambda)^{-1} ln I of
// I = integral of rho^lambda. Within kShannonBand of lambda = 1 this switches
// to the limit exp(-2 * integral of rho ln rho). Always positive.
//
// Throws divergence_error when the integral does not converge (heavy tails
// with small lambda) and std::domain_error for lambda <= 0.
double renyi_entropy_power(const DensityModel& rho, double lambda,
                           double tol = 1e-10);

// Two-parameter Fisher information
//   ( integral of |rho'|^p rho^{p(beta-2)+1} )^{2/(p beta)}.
// The integrand is assembled in log space, since beta < 1 makes the
// small-density regions dominant and the factor rho^{p(beta-2)+1} overflows
// long before the product is formed. Always positive.
//
// Throws divergence_error when the integral does not exist -- for instance a
// density whose boundary slope is too steep for the requested beta -- and
// std::domain_error for p <= 1 or beta <= 0.
double fisher_info(const DensityModel& rho, double p, double beta,
                   double tol = 1e-10);

// The complexity (F_{p,beta} * N_lambda)^beta. Invariant under translation
// and rescaling of rho: the sigma^2 factor picked up by N cancels the
// sigma^{-2} of F. Propagates divergence errors from either factor.
double complexity(const DensityModel& rho, const MeasureParams& params,
                  double tol = 1e-10);

}  // namespace frc
