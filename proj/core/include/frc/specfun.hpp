#pragma once

namespace frc {

// Value with an absolute error estimate, for routines evaluated by series,
// continued fractions, or quadrature rather than a closed form.
struct SpecFunResult {
    double value;
    double abs_error_estimate;
};

// ln Gamma(a) for a > 0. Relative error <= 1e-13.
double log_gamma(double a);

// Gamma(a) for a > 0 (overflows to +infinity above a ~ 171.6).
double gamma_fn(double a);

// Complete beta function B(a,b) = Gamma(a)Gamma(b)/Gamma(a+b) for a > 0,
// b > 0. Returns +infinity when b <= 0: the defining integral diverges at
// t = 1, and that convention is exactly what the deformed-Gaussian support
// rule needs (infinite B <=> unbounded support).
double beta_fn(double a, double b);

// Lower incomplete beta integral
//     B(a,b;x) = integral_0^x t^(a-1) (1-t)^(b-1) dt,   a > 0, 0 <= x < 1.
// b may be zero or negative; the integral is then finite for every x < 1 but
// grows without bound as x -> 1. Relative error <= 1e-11. Values too large
// for double (possible for very negative b with x near 1) saturate to
// +infinity.
double inc_beta(double a, double b, double x);
SpecFunResult inc_beta_est(double a, double b, double x);

// Inverse of inc_beta in x for fixed (a,b): the x in [0,1) with
// inc_beta(a,b,x) = y, resolved to ~1e-13 residual in y where double
// precision permits. For b > 0, y must be < B(a,b) (std::range_error
// otherwise); for b <= 0 any y >= 0 is valid.
double inv_inc_beta(double a, double b, double y);

// Inverse that also reports 1-x to full relative accuracy. In the deformed
// Gaussian tails x approaches 1 so closely that 1-x underflows the gap
// between representable doubles; the density only needs 1-x, so this variant
// resolves it in log space. x is derived from one_minus_x and may round to
// exactly 1.0.
struct InvIncBeta {
    double x;
    double one_minus_x;
};
InvIncBeta inv_inc_beta_split(double a, double b, double y);

// Lower incomplete gamma  integral_0^w t^(a-1) e^(-t) dt,  a > 0, w >= 0.
double inc_gamma_lower(double a, double w);

// Growing variant  integral_0^v t^(a-1) e^(+t) dt,  a > 0, v >= 0. This is
// the real factor of the incomplete gamma integral continued to negative
// argument (the constant complex phase of (-t)^(a-1) divides out of every
// expression it is used in), so the library stays in real arithmetic.
double inc_gamma_grow(double a, double v);

// Inverses of the two gamma integrals on their monotone domains.
// inv_inc_gamma_lower requires 0 <= y < Gamma(a) (std::range_error above);
// inv_inc_gamma_grow accepts any y >= 0.
double inv_inc_gamma_lower(double a, double y);
double inv_inc_gamma_grow(double a, double y);

// Error function, odd, values in (-1,1). Relative error <= 1e-13.
double erf(double x);

}  // namespace frc
