#include "frc/measures.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "frc/quadrature.hpp"

namespace frc {

namespace {

// Outside the Shannon band but still near lambda = 1, ln I is the small
// quantity (lambda-1) * O(1) while I itself is rounded near 1, so dividing
// ln I by (1-lambda) amplifies the quadrature error by 1/|1-lambda|.  In
// this band the integral is instead computed as I = 1 + J with
//   J = integral of rho * expm1((lambda-1) ln rho),
// whose integrand carries the cancellation analytically; the quadrature
// error then scales with J ~ (lambda-1) and the division is harmless.  The
// form is only safe while I stays near 1, hence the narrow band.
constexpr double kNearOneBand = 1e-3;

}  // namespace

MeasureParams measure_params(double p, double beta, double lambda) {
    if (!(p > 1.0) || !(beta > 0.0) || !(lambda > 0.0)) {
        std::ostringstream msg;
        msg << "measure_params: require p > 1, beta > 0, lambda > 0; got (p, "
               "beta, lambda) = ("
            << p << ", " << beta << ", " << lambda << ")";
        throw std::domain_error(msg.str());
    }
    return {p, beta, lambda, p / (p - 1.0)};
}

double renyi_entropy_power(const DensityModel& rho, double lambda,
                           double tol) {
    if (!(lambda > 0.0)) {
        throw std::domain_error("renyi_entropy_power: require lambda > 0");
    }
    const auto& pdf = rho.pdf;

    if (std::fabs(lambda - 1.0) < kShannonBand) {
        const QuadResult s = integrate(
            [&pdf](double x) {
                const double r = pdf(x);
                return r > 0.0 ? -r * std::log(r) : 0.0;
            },
            rho.support, tol);
        return std::exp(2.0 * s.value);
    }

    if (std::fabs(lambda - 1.0) <= kNearOneBand) {
        const QuadResult j = integrate(
            [&pdf, lambda](double x) {
                const double r = pdf(x);
                return r > 0.0 ? r * std::expm1((lambda - 1.0) * std::log(r))
                               : 0.0;
            },
            rho.support, tol);
        return std::exp(2.0 * std::log1p(j.value) / (1.0 - lambda));
    }

    const QuadResult i = integrate(
        [&pdf, lambda](double x) {
            const double r = pdf(x);
            return r > 0.0 ? std::exp(lambda * std::log(r)) : 0.0;
        },
        rho.support, tol);
    return std::exp(2.0 * std::log(i.value) / (1.0 - lambda));
}

double fisher_info(const DensityModel& rho, double p, double beta,
                   double tol) {
    if (!(p > 1.0) || !(beta > 0.0)) {
        throw std::domain_error("fisher_info: require p > 1 and beta > 0");
    }
    const double e1 = p * (beta - 2.0) + 1.0;
    const auto& pdf = rho.pdf;
    const auto& dpdf = rho.dpdf;
    const QuadResult i = integrate(
        [&pdf, &dpdf, p, e1](double x) {
            const double r = pdf(x);
            if (!(r > 0.0)) return 0.0;
            const double d = dpdf(x);
            if (d == 0.0) return 0.0;
            return std::exp(p * std::log(std::fabs(d)) + e1 * std::log(r));
        },
        rho.support, tol);
    return std::pow(i.value, 2.0 / (p * beta));
}

double complexity(const DensityModel& rho, const MeasureParams& params,
                  double tol) {
    const MeasureParams v = measure_params(params.p, params.beta,
                                           params.lambda);
    const double f = fisher_info(rho, v.p, v.beta, tol);
    const double n = renyi_entropy_power(rho, v.lambda, tol);
    return std::pow(f * n, v.beta);
}

}  // namespace frc
