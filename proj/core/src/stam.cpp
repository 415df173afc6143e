#include "frc/stam.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "frc/measures.hpp"
#include "frc/specfun.hpp"

namespace frc {

namespace {

// Relative tolerance for detecting the measure-zero lines L and L-bar, wide
// enough to absorb rounding from composed parameter maps.
constexpr double kLineTol = 1e-12;

[[noreturn]] void fail_domain(const char* who, double p, double beta,
                              double lambda, const char* what) {
    std::ostringstream msg;
    msg << who << ": (p, beta, lambda) = (" << p << ", " << beta << ", "
        << lambda << ") " << what;
    throw std::domain_error(msg.str());
}

}  // namespace

DomainClass classify(double p, double beta, double lambda) {
    if (!(p > 1.0) || !(beta > 0.0) || !(lambda > 0.0)) {
        fail_domain("classify", p, beta, lambda,
                    "requires p > 1, beta > 0, lambda > 0");
    }
    const double ps = p / (p - 1.0);
    DomainClass dc;
    dc.in_D_tilde = lambda > 1.0 - beta * ps;
    dc.in_D = beta > 1.0 / ps && beta <= 1.0 / ps + std::min(1.0, lambda);

    const double tol = kLineTol * std::max({1.0, beta, lambda});
    dc.on_L = std::fabs(beta - lambda) <= tol && lambda > 1.0 / (1.0 + ps);
    dc.on_L_bar = std::fabs(beta - (1.0 + (1.0 - lambda) / ps)) <= tol &&
                  lambda < 1.0 + ps;

    // Escort route onto the diagonal: affine_A(alpha, .) lands on L when
    // alpha = 1/(beta+1-lambda), provided that is positive and the landing
    // value alpha*beta clears the lower end of the line.
    const double t_l = beta + 1.0 - lambda;
    if (t_l > 0.0) {
        const double alpha = 1.0 / t_l;
        if (alpha * beta > 1.0 / (1.0 + ps)) dc.escort_index_to_L = alpha;
    }
    // Route onto the involution image of the diagonal: alpha =
    // p*/(beta p* + lambda - 1), provided the landing lambda stays positive
    // (its upper end is cleared automatically).
    const double t_lb = beta * ps + lambda - 1.0;
    if (t_lb > 0.0) {
        const double alpha = ps / t_lb;
        if (1.0 + alpha * (lambda - 1.0) > 0.0) {
            dc.escort_index_to_L_bar = alpha;
        }
    }
    return dc;
}

std::pair<double, double> involution_T(double p, double beta, double lambda) {
    if (!(p > 1.0) || !(lambda > 0.0)) {
        fail_domain("involution_T", p, beta, lambda,
                    "requires p > 1 and lambda > 0");
    }
    const double ps = p / (p - 1.0);
    return {(beta * ps + lambda - 1.0) / (lambda * ps), 1.0 / lambda};
}

std::pair<double, double> affine_A(double a, double beta, double lambda) {
    if (!(a > 0.0)) {
        throw std::domain_error("affine_A: require a > 0");
    }
    return {a * beta, 1.0 + a * (lambda - 1.0)};
}

BoundReport sharp_bound(double p, double beta, double lambda) {
    const DomainClass dc = classify(p, beta, lambda);
    if (!dc.in_D_tilde) {
        fail_domain("sharp_bound", p, beta, lambda,
                    "is outside the bound's validity region lambda > "
                    "1 - beta p*");
    }
    const double ps = p / (p - 1.0);
    const double a = 1.0 / ps;

    BoundReport r;
    r.domain = dc;
    r.zeta = beta + std::max(lambda - 1.0, 0.0) / ps;
    if (lambda == 1.0) {
        r.branch = LambdaBranch::at_one;
        const double root = 2.0 * std::exp(a) * gamma_fn(a) /
                            (beta * std::pow(ps, 1.0 / p));
        r.K = root * root;
        return r;
    }
    r.branch = lambda < 1.0 ? LambdaBranch::below_one
                            : LambdaBranch::above_one;
    const double eps = std::fabs(1.0 - lambda);
    const double zs = ps * r.zeta;  // > eps inside the validity region
    const double m = r.zeta / eps + 1.0 / p;
    // (zs/(zs-eps))^m written through log1p so the power stays accurate
    // when eps/zs is tiny and m correspondingly huge.
    const double root = 2.0 / zs * std::pow(zs / eps, a) *
                        std::exp(-m * std::log1p(-eps / zs)) *
                        beta_fn(a, m);
    r.K = root * root;
    return r;
}

double edo_residual(double p, double beta, double lambda,
                    const DensityModel& rho, const std::vector<double>& grid,
                    double* gamma_out) {
    const DomainClass dc = classify(p, beta, lambda);
    if (!dc.in_D) {
        fail_domain("edo_residual", p, beta, lambda,
                    "is outside the region D where the minimizer equation "
                    "is stated");
    }
    if (grid.size() < 3) {
        throw std::domain_error("edo_residual: need at least 3 grid points");
    }
    const double ps = p / (p - 1.0);
    const double theta = ps / (beta * ps - 1.0);
    const bool shannon = std::fabs(lambda - 1.0) < kShannonBand;

    auto positive_pdf = [&rho](double x) {
        const double r = rho.pdf(x);
        if (!(r > 0.0)) {
            throw std::domain_error(
                "edo_residual: density must be strictly positive at and "
                "around every grid point");
        }
        return r;
    };

    // Equation ingredients for the dilate s*rho(s*x) at grid point x:
    // D = (|u'|^{p-2}u')', A = u^{lambda theta - 1}, B = u^{theta-1}.
    struct Terms {
        double D, A, B, lnu;
    };
    auto terms_at = [&](double s, double x) -> Terms {
        auto phi = [&](double t) {
            const double r = s * positive_pdf(s * t);
            const double du = (1.0 / theta) *
                              std::pow(r, 1.0 / theta - 1.0) * s * s *
                              rho.dpdf(s * t);
            const double sg = (du > 0.0) - (du < 0.0);
            return sg * std::pow(std::fabs(du), p - 1.0);
        };
        const double h = 1e-4 * std::max(1.0, std::fabs(x));
        Terms t;
        t.D = (8.0 * (phi(x + h) - phi(x - h)) -
               (phi(x + 2.0 * h) - phi(x - 2.0 * h))) /
              (12.0 * h);
        const double u = std::pow(s * positive_pdf(s * x), 1.0 / theta);
        t.A = std::pow(u, lambda * theta - 1.0);
        t.B = std::pow(u, theta - 1.0);
        t.lnu = std::log(u);
        return t;
    };

    // The equation pins the amplitude of u: a dilate of a solution satisfies
    // only the relaxed two-coefficient form. Fit that form, read off the
    // canonical dilation, and evaluate gamma there.
    std::vector<Terms> t0;
    t0.reserve(grid.size());
    for (double x : grid) t0.push_back(terms_at(1.0, x));

    double s_hat = 1.0;
    if (shannon) {
        // D = g*(B ln u) + d*B; the canonical dilate (d = 0) sits at
        // s = exp(theta d / g).
        double sll = 0, slb = 0, sbb = 0, sdl = 0, sdb = 0;
        for (const Terms& t : t0) {
            const double l = t.B * t.lnu;
            sll += l * l;
            slb += l * t.B;
            sbb += t.B * t.B;
            sdl += t.D * l;
            sdb += t.D * t.B;
        }
        const double det = sll * sbb - slb * slb;
        if (det > 0.0) {
            const double g = (sdl * sbb - sdb * slb) / det;
            const double d = (sdb * sll - sdl * slb) / det;
            const double arg = theta * d / g;
            if (std::isfinite(arg) && std::fabs(arg) < 300.0) {
                s_hat = std::exp(arg);
            }
        }
    } else {
        // D = g1*A - g2*B; the canonical dilate (g1 = g2) sits at
        // s = (g2/g1)^{1/(1-lambda)}.
        double saa = 0, sab = 0, sbb = 0, sda = 0, sdb = 0;
        for (const Terms& t : t0) {
            saa += t.A * t.A;
            sab += t.A * t.B;
            sbb += t.B * t.B;
            sda += t.D * t.A;
            sdb += t.D * t.B;
        }
        const double det = saa * sbb - sab * sab;
        if (det > 0.0) {
            const double g1 = (sda * sbb - sdb * sab) / det;
            const double g2 = -(sdb * saa - sda * sab) / det;
            if (g1 * g2 > 0.0) {
                const double arg = std::log(g2 / g1) / (1.0 - lambda);
                if (std::isfinite(arg) && std::fabs(arg) < 300.0) {
                    s_hat = std::exp(arg);
                }
            }
        }
    }

    std::vector<double> gam;
    gam.reserve(grid.size());
    for (double x : grid) {
        const Terms t = terms_at(s_hat, x);
        double g;
        if (shannon) {
            if (std::fabs(t.lnu) <= 1e-12) {
                throw std::range_error(
                    "edo_residual: equation denominator vanishes at a grid "
                    "point (u = 1 crossing)");
            }
            g = -t.D / (t.B * t.lnu);
        } else {
            const double den = t.A - t.B;
            if (std::fabs(den) <=
                1e-12 * (std::fabs(t.A) + std::fabs(t.B))) {
                throw std::range_error(
                    "edo_residual: equation denominator vanishes at a grid "
                    "point (u = 1 crossing)");
            }
            g = theta * (1.0 - lambda) * t.D / den;
        }
        if (!std::isfinite(g)) {
            throw std::range_error(
                "edo_residual: non-finite equation ratio at a grid point");
        }
        gam.push_back(g);
    }

    std::vector<double> srt = gam;
    std::nth_element(srt.begin(), srt.begin() + srt.size() / 2, srt.end());
    const double med = srt[srt.size() / 2];
    if (!(std::fabs(med) > 0.0)) {
        throw std::range_error("edo_residual: degenerate zero-median fit");
    }
    double worst = 0.0;
    for (double g : gam) worst = std::max(worst, std::fabs(g - med));
    if (gamma_out) *gamma_out = med;
    return worst / std::fabs(med);
}

}  // namespace frc
