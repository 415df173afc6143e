#include "frc/density.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "frc/specfun.hpp"

namespace frc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

// Clamp applied to the inverse incomplete beta near the edge of a compact
// support, where rounding of the argument could otherwise push it past 1.
constexpr double kEdgeComplement = 1e-15;

// Relative inset used to report one-sided derivatives at finite endpoints.
constexpr double kEndpointInset = 1e-10;

double holder_conjugate(double p) { return p / (p - 1.0); }

[[noreturn]] void fail(const char* who, const char* what) {
    std::ostringstream msg;
    msg << who << ": " << what;
    throw std::domain_error(msg.str());
}

void require_p(const char* who, double p) {
    if (!(p > 1.0)) fail(who, "require p > 1");
}

double sgn(double x) { return (x > 0.0) - (x < 0.0); }

// Normalization over a symmetric support: the shapes below are all even, so
// integrate one side and double, which also halves the cost of the expensive
// inverse-function branches.
double even_mass(const std::function<double(double)>& shape, double halfwidth) {
    return 2.0 * integrate(shape, {0.0, halfwidth}).value;
}

}  // namespace

DensityModel gaussian(double mu, double sigma) {
    if (!(sigma > 0.0)) fail("gaussian", "require sigma > 0");
    const double c = 1.0 / (sigma * std::sqrt(2.0 * std::numbers::pi));
    DensityModel m;
    m.pdf = [mu, sigma, c](double x) {
        const double z = (x - mu) / sigma;
        return c * std::exp(-0.5 * z * z);
    };
    m.dpdf = [mu, sigma, c](double x) {
        const double z = (x - mu) / sigma;
        return -c * z / sigma * std::exp(-0.5 * z * z);
    };
    m.support = {-kInf, kInf};
    m.normalization_constant = c;
    m.smooth = true;
    return m;
}

StretchedGaussianParams stretched_params(double p, double lambda) {
    require_p("stretched_gaussian", p);
    const double ps = holder_conjugate(p);
    if (!(lambda > 1.0 - ps)) {
        std::ostringstream msg;
        msg << "stretched_gaussian: require lambda > 1 - p* = " << 1.0 - ps
            << ", got " << lambda;
        throw std::domain_error(msg.str());
    }
    const double a = 1.0 / ps;
    double Z;
    if (lambda > 1.0) {
        Z = 2.0 * beta_fn(a, 1.0 / (lambda - 1.0) + 1.0) /
            (ps * std::pow(lambda - 1.0, a));
    } else if (lambda < 1.0) {
        Z = 2.0 * beta_fn(a, 1.0 / (1.0 - lambda) - a) /
            (ps * std::pow(1.0 - lambda, a));
    } else {
        Z = 2.0 * gamma_fn(a) / ps;
    }
    return {p, lambda, Z};
}

DensityModel stretched_gaussian(double p, double lambda) {
    const StretchedGaussianParams par = stretched_params(p, lambda);
    const double ps = holder_conjugate(p);
    const double inv_z = 1.0 / par.Z;

    DensityModel m;
    m.normalization_constant = inv_z;
    if (lambda > 1.0) {
        const double halfwidth = std::pow(lambda - 1.0, -1.0 / ps);
        m.support = {-halfwidth, halfwidth};
        m.smooth = lambda < 2.0;
    } else {
        m.support = {-kInf, kInf};
        m.smooth = true;
    }

    if (lambda == 1.0) {
        m.pdf = [inv_z, ps](double x) {
            return inv_z * std::exp(-std::pow(std::fabs(x), ps));
        };
        m.dpdf = [inv_z, ps](double x) {
            const double ax = std::fabs(x);
            return -inv_z * ps * std::pow(ax, ps - 1.0) * sgn(x) *
                   std::exp(-std::pow(ax, ps));
        };
        return m;
    }

    const double lo = m.support.lo, hi = m.support.hi;
    m.pdf = [inv_z, ps, lambda](double x) {
        const double base = 1.0 + (1.0 - lambda) * std::pow(std::fabs(x), ps);
        if (base <= 0.0) return 0.0;
        return inv_z * std::pow(base, 1.0 / (lambda - 1.0));
    };
    // d/dx (1/Z)(1+(1-lambda)|x|^{p*})^{1/(lambda-1)}
    //   = -(p*/Z) |x|^{p*-1} sgn(x) (1+(1-lambda)|x|^{p*})^{(2-lambda)/(lambda-1)}
    auto slope = [inv_z, ps, lambda](double x) {
        const double ax = std::fabs(x);
        const double base = 1.0 + (1.0 - lambda) * std::pow(ax, ps);
        if (base <= 0.0) return 0.0;
        return -inv_z * ps * std::pow(ax, ps - 1.0) * sgn(x) *
               std::pow(base, (2.0 - lambda) / (lambda - 1.0));
    };
    m.dpdf = [slope, lo, hi](double x) {
        if (x < lo || x > hi) return 0.0;
        if (std::isfinite(hi) && std::fabs(x) >= hi * (1.0 - kEndpointInset)) {
            return slope(sgn(x) * hi * (1.0 - kEndpointInset));
        }
        return slope(x);
    };
    return m;
}

PblGaussianParams pbl_params(double p, double beta, double lambda) {
    require_p("pbl_gaussian", p);
    const double ps = holder_conjugate(p);
    if (!(beta > 0.0) || !(lambda > 0.0) || !(lambda > 1.0 - beta * ps)) {
        std::ostringstream msg;
        msg << "pbl_gaussian: (beta, lambda) = (" << beta << ", " << lambda
            << ") violates beta > 0, lambda > 0, lambda > 1 - beta p* with p* = "
            << ps;
        throw std::domain_error(msg.str());
    }
    const double a = 1.0 / ps;

    PblGaussianParams par;
    par.p = p;
    par.beta = beta;
    par.lambda = lambda;
    if (lambda != 1.0) {
        const double eps = std::fabs(1.0 - lambda);
        par.q = (beta - 1.0) / eps + (lambda < 1.0 ? 1.0 / p : 0.0);
        // The q = 0 line (exponential tail) is crossed by rounding noise in
        // the sum above; a vanishingly positive q would otherwise report a
        // compact support of half-width ~ 1/q and wreck the normalization.
        // Below the snap threshold the compact and exponential profiles agree
        // to better than exp(-1e12), far under double resolution.
        if (std::fabs(par.q) <= 1e-12) par.q = 0.0;
        par.support_halfwidth =
            par.q > 0.0
                ? beta_fn(a, par.q) / (ps * std::pow(eps, a))
                : kInf;
    } else {
        par.q = kNan;  // the lambda = 1 branches use gamma functions instead
        par.support_halfwidth =
            beta > 1.0 ? gamma_fn(a) / (ps * std::pow(beta - 1.0, a)) : kInf;
    }

    // Scale constant of the escort route through the beta = lambda line:
    // alpha = 1/(beta+1-lambda) maps this member onto the stretched Gaussian
    // with parameter lambda0 = alpha*beta.
    const double denom = beta + 1.0 - lambda;
    par.kappa = kNan;
    if (denom > 0.0) {
        const double alpha = 1.0 / denom;
        const double lambda0 = alpha * beta;
        if (lambda0 > 1.0 - ps) {
            const double z0 = stretched_params(p, lambda0).Z;
            const double eps0 = std::fabs(1.0 - lambda0);
            par.kappa = eps0 > 0.0
                            ? std::pow(z0, alpha - 1.0) /
                                  (ps * std::pow(eps0, a))
                            : std::pow(z0, alpha - 1.0) / ps;
        }
    }
    return par;
}

DensityModel pbl_gaussian(double p, double beta, double lambda) {
    const PblGaussianParams par = pbl_params(p, beta, lambda);
    const double ps = holder_conjugate(p);
    const double a = 1.0 / ps;

    DensityModel m;
    m.support = {-par.support_halfwidth, par.support_halfwidth};

    std::function<double(double)> shape;   // un-normalized even pdf
    std::function<double(double)> dshape;  // its derivative (interior)

    if (lambda != 1.0) {
        const double eps = std::fabs(1.0 - lambda);
        const double q = par.q;
        const double scale = ps * std::pow(eps, a);  // y = scale * |x|
        const double ymax = q > 0.0 ? beta_fn(a, q) : kInf;
        const bool compact = q > 0.0;
        m.smooth = compact ? (q * eps < 1.0) : true;

        // Solve B(a,q; y) = scale|x| for u; the density is (1-u)^{1/eps}.
        // The split inverse keeps the complement w = 1-u resolvable far
        // below double-subtraction range, which the heavy power tails
        // (q < 0, lambda > 1) genuinely reach.
        auto solve = [a, q, scale, ymax, compact](double x, double& u,
                                                  double& w) -> bool {
            const double y = scale * std::fabs(x);
            if (compact && y >= ymax) return false;
            const InvIncBeta s = inv_inc_beta_split(a, q, y);
            u = s.x;
            w = s.one_minus_x;
            if (compact && w < kEdgeComplement) {
                w = kEdgeComplement;
                u = 1.0 - w;
            }
            return true;
        };
        shape = [solve, eps](double x) {
            double u, w;
            if (!solve(x, u, w)) return 0.0;
            return std::pow(w, 1.0 / eps);
        };
        // Inverse-function rule: du/dy = u^{1-a}(1-u)^{1-q}, so
        //   d/dx (1-u)^{1/eps} = -(scale/eps) sgn(x) u^{1-a} w^{1/eps - q}.
        dshape = [solve, eps, q, a, scale](double x) {
            double u, w;
            if (!solve(x, u, w)) return 0.0;
            return -(scale / eps) * sgn(x) * std::pow(u, 1.0 - a) *
                   std::pow(w, 1.0 / eps - q);
        };
    } else if (beta > 1.0) {
        const double ga = gamma_fn(a);
        const double scale = ps * std::pow(beta - 1.0, a);
        m.smooth = beta < 2.0;
        shape = [a, ga, scale, beta](double x) {
            const double arg = scale * std::fabs(x);
            if (arg >= ga) return 0.0;
            const double w = inv_inc_gamma_lower(a, arg);
            return std::exp(-w / (beta - 1.0));
        };
        dshape = [a, ga, scale, beta](double x) {
            const double arg = scale * std::fabs(x);
            if (arg >= ga) return 0.0;
            const double w = inv_inc_gamma_lower(a, arg);
            // dw/darg = w^{1-a} e^{w}
            return -(scale / (beta - 1.0)) * sgn(x) * std::pow(w, 1.0 - a) *
                   std::exp(w * (beta - 2.0) / (beta - 1.0));
        };
    } else if (beta < 1.0) {
        const double scale = ps * std::pow(1.0 - beta, a);
        m.smooth = true;
        shape = [a, scale, beta](double x) {
            if (x == 0.0) return 1.0;
            const double v = inv_inc_gamma_grow(a, scale * std::fabs(x));
            return std::exp(-v / (1.0 - beta));
        };
        dshape = [a, scale, beta](double x) {
            if (x == 0.0) return 0.0;
            const double v = inv_inc_gamma_grow(a, scale * std::fabs(x));
            // dv/darg = v^{1-a} e^{-v}
            return -(scale / (1.0 - beta)) * sgn(x) * std::pow(v, 1.0 - a) *
                   std::exp(-v * (2.0 - beta) / (1.0 - beta));
        };
    } else {
        m.smooth = true;
        shape = [ps](double x) {
            return std::exp(-std::pow(std::fabs(x), ps));
        };
        dshape = [ps](double x) {
            const double ax = std::fabs(x);
            return -ps * std::pow(ax, ps - 1.0) * sgn(x) *
                   std::exp(-std::pow(ax, ps));
        };
    }

    const double c = 1.0 / even_mass(shape, par.support_halfwidth);
    m.normalization_constant = c;
    const double hw = par.support_halfwidth;
    m.pdf = [shape, c, hw](double x) {
        if (std::fabs(x) > hw) return 0.0;
        return c * shape(x);
    };
    m.dpdf = [dshape, c, hw](double x) {
        if (std::fabs(x) > hw) return 0.0;
        if (std::isfinite(hw) && std::fabs(x) >= hw * (1.0 - kEndpointInset)) {
            return c * dshape(sgn(x) * hw * (1.0 - kEndpointInset));
        }
        return c * dshape(x);
    };
    return m;
}

DensityModel translate_scale(const DensityModel& rho, double x0, double sigma) {
    if (!(sigma > 0.0)) fail("translate_scale", "require sigma > 0");
    DensityModel m;
    const auto base_pdf = rho.pdf;
    const auto base_dpdf = rho.dpdf;
    m.pdf = [base_pdf, x0, sigma](double x) {
        return base_pdf((x - x0) / sigma) / sigma;
    };
    m.dpdf = [base_dpdf, x0, sigma](double x) {
        return base_dpdf((x - x0) / sigma) / (sigma * sigma);
    };
    m.support = {x0 + sigma * rho.support.lo, x0 + sigma * rho.support.hi};
    m.normalization_constant = rho.normalization_constant / sigma;
    m.smooth = rho.smooth;
    return m;
}

}  // namespace frc
