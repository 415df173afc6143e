#include "frc/density.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "frc/quadrature.hpp"

using namespace frc;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kInf = std::numeric_limits<double>::infinity();

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::max(1e-300, std::fabs(want));
}

double mass(const DensityModel& m) {
    return integrate(m.pdf, m.support).value;
}

// Shared battery: normalization, nonnegativity, and agreement of the
// analytic derivative with central finite differences at interior points.
void check_model_invariants(const DensityModel& m,
                            const std::vector<double>& points) {
    CHECK(std::fabs(mass(m) - 1.0) < 1e-8);
    for (double x : points) {
        CHECK(m.pdf(x) >= 0.0);
        const double h = 1e-6 * std::max(1.0, std::fabs(x));
        if (x - h <= m.support.lo || x + h >= m.support.hi) continue;
        const double fd = (m.pdf(x + h) - m.pdf(x - h)) / (2.0 * h);
        const double d = m.dpdf(x);
        CHECK(std::fabs(d - fd) <= std::max(1e-6, 1e-4 * std::fabs(d)));
    }
}

// x where pdf has dropped to half its central value; used to fit the affine
// rescale in proportionality tests without referencing any constants.
double half_height_point(const DensityModel& m) {
    const double target = 0.5 * m.pdf(0.0);
    double lo = 0.0;
    double hi = std::isfinite(m.support.hi) ? m.support.hi : 1.0;
    if (!std::isfinite(m.support.hi)) {
        while (m.pdf(hi) > target) hi *= 2.0;
    }
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (m.pdf(mid) > target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("gaussian: center value, mass, peak location") {
    const DensityModel g = gaussian(0.0, 1.0);
    CHECK(rel_err(g.pdf(0.0), 1.0 / std::sqrt(2.0 * kPi)) < 1e-14);
    CHECK(g.smooth);

    CHECK(std::fabs(mass(gaussian(0.0, 2.0)) - 1.0) < 1e-10);

    const DensityModel g3 = gaussian(3.0, 1.0);
    CHECK(g3.pdf(3.0) > g3.pdf(2.9));
    CHECK(g3.pdf(3.0) > g3.pdf(3.1));
    CHECK(std::fabs(g3.dpdf(3.0)) < 1e-14);

    CHECK_THROWS_AS(gaussian(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(gaussian(0.0, -1.0), std::domain_error);
}

TEST_CASE("stretched_gaussian: closed-form values and supports") {
    // p=2, lambda=1: exp(-x^2)/sqrt(pi)
    const DensityModel s1 = stretched_gaussian(2.0, 1.0);
    CHECK(rel_err(s1.pdf(0.0), 1.0 / std::sqrt(kPi)) < 1e-13);
    CHECK(rel_err(s1.pdf(1.3), std::exp(-1.69) / std::sqrt(kPi)) < 1e-13);

    // p=2, lambda=2: (1-x^2)_+ on [-1,1]
    const DensityModel s2 = stretched_gaussian(2.0, 2.0);
    CHECK(s2.support.lo == doctest::Approx(-1.0));
    CHECK(s2.support.hi == doctest::Approx(1.0));
    CHECK(s2.pdf(1.5) == 0.0);
    CHECK_FALSE(s2.smooth);  // linear cutoff at the boundary

    // Z for lambda < 1 follows the closed form used in the constructor;
    // cross-check the normalization independently by quadrature.
    const StretchedGaussianParams par = stretched_params(2.0, 0.5);
    CHECK(par.Z > 0.0);
    const double z_quad =
        integrate(
            [](double x) { return std::pow(1.0 + 0.5 * x * x, -2.0); },
            {-kInf, kInf})
            .value;
    CHECK(rel_err(par.Z, z_quad) < 1e-10);

    CHECK_THROWS_AS(stretched_gaussian(2.0, -1.5), std::domain_error);
    CHECK_THROWS_AS(stretched_gaussian(0.9, 1.0), std::domain_error);
}

TEST_CASE("stretched_gaussian: continuity in lambda across 1") {
    const double want = stretched_gaussian(2.0, 1.0).pdf(0.5);
    const double above = stretched_gaussian(2.0, 1.0 + 1e-6).pdf(0.5);
    const double below = stretched_gaussian(2.0, 1.0 - 1e-6).pdf(0.5);
    CHECK(rel_err(above, want) < 1e-6);
    CHECK(rel_err(below, want) < 1e-6);
}

TEST_CASE("stretched_gaussian: model invariants") {
    check_model_invariants(stretched_gaussian(2.0, 0.8),
                           {0.0, 0.2, 1.0, 2.5, -1.7, 8.0});
    check_model_invariants(stretched_gaussian(3.0, 1.4),
                           {0.0, 0.3, 1.0, -0.9});
    check_model_invariants(stretched_gaussian(2.0, 1.0),
                           {0.0, 0.4, -1.1, 2.2});
}

TEST_CASE("pbl_gaussian: beta=lambda=1 is the p-generalized Gaussian") {
    const DensityModel g = pbl_gaussian(2.0, 1.0, 1.0);
    CHECK(rel_err(g.pdf(0.0), 1.0 / std::sqrt(kPi)) < 1e-10);
    for (double x : {0.3, 1.0, 2.4}) {
        CHECK(rel_err(g.pdf(x), std::exp(-x * x) / std::sqrt(kPi)) < 1e-10);
    }
}

TEST_CASE("pbl_gaussian: beta=lambda reproduces the stretched Gaussian") {
    for (double lam : {0.5, 0.8, 1.5, 3.0}) {
        const DensityModel direct = stretched_gaussian(2.0, lam);
        const DensityModel viabeta = pbl_gaussian(2.0, lam, lam);
        for (double x : {0.0, 0.3, 0.55, 1.0, 2.5}) {
            if (x >= direct.support.hi) continue;
            CHECK(rel_err(viabeta.pdf(x), direct.pdf(x)) < 1e-8);
        }
    }
    // and a non-quadratic p
    const DensityModel d3 = stretched_gaussian(3.0, 0.7);
    const DensityModel v3 = pbl_gaussian(3.0, 0.7, 0.7);
    for (double x : {0.0, 0.4, 1.2, 3.0}) {
        CHECK(rel_err(v3.pdf(x), d3.pdf(x)) < 1e-8);
    }
}

TEST_CASE("pbl_gaussian: (2,1,1/2) is cos^4 on a compact interval") {
    // With (a,q) = (1/2,1/2) the inverse incomplete beta is sin^2, so the
    // density is proportional to cos^4(|x|/sqrt(2)), supported on
    // |x| < pi/sqrt(2).
    const DensityModel m = pbl_gaussian(2.0, 1.0, 0.5);
    const double hw = kPi / std::sqrt(2.0);
    CHECK(rel_err(m.support.hi, hw) < 1e-12);
    const double c0 = m.pdf(0.0);
    for (double x : {0.2, 0.7, 1.4, 2.0}) {
        const double want = c0 * std::pow(std::cos(x / std::sqrt(2.0)), 4.0);
        CHECK(rel_err(m.pdf(x), want) < 1e-9);
    }
    CHECK(m.pdf(hw + 0.1) == 0.0);
    CHECK(m.smooth);  // q*eps = 1/4 < 1
}

TEST_CASE("pbl_gaussian: symmetry and monotone decay") {
    for (auto [p, b, l] : {std::tuple{2.0, 1.0, 7.0}, {2.0, 0.8, 7.0},
                           {3.0, 1.2, 0.6}, {2.0, 1.3, 1.0},
                           {2.0, 0.7, 1.0}}) {
        const DensityModel m = pbl_gaussian(p, b, l);
        const double hi =
            std::isfinite(m.support.hi) ? m.support.hi : 6.0;
        double prev = m.pdf(0.0);
        for (int k = 1; k <= 12; ++k) {
            const double x = hi * k / 13.0;
            const double v = m.pdf(x);
            CHECK(rel_err(m.pdf(-x), v) < 1e-12);  // even
            CHECK(v < prev);                        // strictly decreasing
            prev = v;
        }
    }
}

TEST_CASE("pbl_gaussian: model invariants across all branches") {
    // lambda > 1 compact, lambda > 1 power tail, lambda < 1 compact,
    // lambda < 1 power tail, lambda = 1 with beta above/at/below 1.
    check_model_invariants(pbl_gaussian(2.0, 2.0, 7.0),
                           {0.0, 0.1, 0.3, -0.2});
    check_model_invariants(pbl_gaussian(2.0, 0.8, 7.0),
                           {0.0, 0.5, 2.0, -4.0, 20.0});
    check_model_invariants(pbl_gaussian(2.0, 1.0, 0.5),
                           {0.0, 0.4, 1.2, -1.9});
    check_model_invariants(pbl_gaussian(2.0, 0.7, 0.5),
                           {0.0, 0.5, 2.0, -3.5});
    check_model_invariants(pbl_gaussian(2.0, 1.4, 1.0),
                           {0.0, 0.3, 0.8, -0.6});
    check_model_invariants(pbl_gaussian(3.0, 1.0, 1.0),
                           {0.0, 0.4, 1.3, -2.0});
    check_model_invariants(pbl_gaussian(2.0, 0.8, 1.0),
                           {0.0, 0.5, 1.8, -3.0});
}

TEST_CASE("pbl_gaussian: heavy power tail has the predicted exponent") {
    // For lambda > 1, beta < 1 the tail decays like |x|^{1/(beta-1)}; at
    // (beta,lambda) = (0.8,7) that is |x|^{-5}.  The local logarithmic slope
    // x * pdf'/pdf approaches the exponent with an O(1/x) correction from
    // the additive constant inside the profile inversion, so test it far out
    // and only bound the moderate-x density ratio qualitatively.
    const DensityModel m = pbl_gaussian(2.0, 0.8, 7.0);
    const double slope4 = 1e4 * m.dpdf(1e4) / m.pdf(1e4);
    const double slope6 = 1e6 * m.dpdf(1e6) / m.pdf(1e6);
    CHECK(rel_err(slope4, -5.0) < 1e-2);
    CHECK(rel_err(slope6, -5.0) < 1e-4);

    const double r = m.pdf(25.0) / m.pdf(50.0);
    CHECK(r > 8.0);    // far heavier than any exponential tail at this depth
    CHECK(r < 32.0);   // pre-asymptotic: approaches 2^5 from below
    CHECK(m.pdf(300.0) > 0.0);
}

TEST_CASE("pbl_gaussian: continuity in lambda across 1") {
    for (double beta : {1.3, 0.8}) {
        const DensityModel at1 = pbl_gaussian(2.0, beta, 1.0);
        const DensityModel up = pbl_gaussian(2.0, beta, 1.0 + 1e-6);
        const DensityModel dn = pbl_gaussian(2.0, beta, 1.0 - 1e-6);
        for (double x : {0.0, 0.4, 1.1}) {
            CHECK(rel_err(up.pdf(x), at1.pdf(x)) < 1e-5);
            CHECK(rel_err(dn.pdf(x), at1.pdf(x)) < 1e-5);
        }
    }
}

TEST_CASE("pbl_gaussian: involution sends g to a rescaled power") {
    // For lambda != 1 the member at ((beta p* + lambda - 1)/(lambda p*),
    // 1/lambda) is proportional to the lambda-th power of the member at
    // (beta, lambda) after an affine rescale of x. Fit the rescale by
    // matching half-height points of g2 and g1^lambda, then require the
    // pointwise ratio to be flat.
    for (auto [p, b, l] : {std::tuple{2.0, 1.0, 0.5}, {2.0, 1.2, 2.0},
                           {3.0, 0.9, 0.7}}) {
        const double ps = p / (p - 1.0);
        const double b2 = (b * ps + l - 1.0) / (l * ps);
        const double l2 = 1.0 / l;
        const DensityModel g1 = pbl_gaussian(p, b, l);
        const DensityModel g2 = pbl_gaussian(p, b2, l2);

        // Half-height of g1^lambda sits where g1 = g1(0) * 0.5^{1/lambda}.
        const double target = g1.pdf(0.0) * std::pow(0.5, 1.0 / l);
        double lo = 0.0,
               hi = std::isfinite(g1.support.hi) ? g1.support.hi : 1.0;
        if (!std::isfinite(g1.support.hi)) {
            while (g1.pdf(hi) > target) hi *= 2.0;
        }
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            (g1.pdf(mid) > target ? lo : hi) = mid;
        }
        const double x1 = 0.5 * (lo + hi);
        const double s = half_height_point(g2) / x1;

        const double ref =
            g2.pdf(s * x1 * 0.3) / std::pow(g1.pdf(x1 * 0.3), l);
        for (double f : {0.05, 0.5, 0.8, 0.95}) {
            const double x = x1 * f / 0.5;  // spread across the support
            const double ratio = g2.pdf(s * x) / std::pow(g1.pdf(x), l);
            CHECK(rel_err(ratio, ref) < 1e-6);
        }
    }
}

TEST_CASE("pbl_params: exponent, support, and escort-scale bookkeeping") {
    const PblGaussianParams a = pbl_params(2.0, 1.0, 0.5);
    CHECK(a.q == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::isfinite(a.support_halfwidth));

    const PblGaussianParams bpar = pbl_params(2.0, 0.8, 7.0);
    CHECK(bpar.q == doctest::Approx(-0.2 / 6.0).epsilon(1e-12));
    CHECK(std::isinf(bpar.support_halfwidth));
    // beta + 1 - lambda < 0: no escort route through the diagonal family
    CHECK(std::isnan(bpar.kappa));

    const PblGaussianParams cpar = pbl_params(2.0, 1.2, 1.0);
    CHECK(std::isfinite(cpar.support_halfwidth));  // lambda=1, beta>1 compact
    CHECK(cpar.kappa > 0.0);

    const PblGaussianParams dpar = pbl_params(2.0, 0.9, 1.0);
    CHECK(std::isinf(dpar.support_halfwidth));

    CHECK_THROWS_AS(pbl_gaussian(2.0, 0.2, 0.5), std::domain_error);
    CHECK_THROWS_AS(pbl_gaussian(2.0, -1.0, 2.0), std::domain_error);
    CHECK_THROWS_AS(pbl_gaussian(1.0, 1.0, 1.0), std::domain_error);
}

TEST_CASE("translate_scale: closed-form agreement and unit mass") {
    const DensityModel base = gaussian(0.0, 1.0);
    const DensityModel shifted = translate_scale(base, 2.0, 1.0);
    const DensityModel widened = translate_scale(base, 0.0, 3.0);
    const DensityModel want_shift = gaussian(2.0, 1.0);
    const DensityModel want_wide = gaussian(0.0, 3.0);
    for (double x : {-4.0, -1.0, 0.0, 0.7, 2.0, 5.5}) {
        CHECK(rel_err(shifted.pdf(x), want_shift.pdf(x)) < 1e-14);
        CHECK(rel_err(widened.pdf(x), want_wide.pdf(x)) < 1e-14);
        CHECK(rel_err(shifted.dpdf(x) + 1e-300,
                      want_shift.dpdf(x) + 1e-300) < 1e-10);
    }

    const DensityModel moved =
        translate_scale(stretched_gaussian(2.0, 2.0), -1.5, 0.25);
    CHECK(std::fabs(mass(moved) - 1.0) < 1e-8);
    CHECK(moved.support.lo == doctest::Approx(-1.75));
    CHECK(moved.support.hi == doctest::Approx(-1.25));

    CHECK_THROWS_AS(translate_scale(base, 0.0, 0.0), std::domain_error);
}
