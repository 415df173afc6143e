#include "frc/quantum.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "frc/measures.hpp"
#include "frc/quadrature.hpp"

using namespace frc;

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel_err(double got, double want) {
    return std::fabs(got - want) / std::fabs(want);
}

// Five-point central difference, O(h^4).
double fd5(const std::function<double(double)>& f, double x, double h) {
    return (8.0 * (f(x + h) - f(x - h)) - (f(x + 2 * h) - f(x - 2 * h))) /
           (12.0 * h);
}

// Golden-section minimum of f on [a, b].
double min_on(const std::function<double(double)>& f, double a, double b) {
    const double gr = 0.6180339887498949;
    for (int i = 0; i < 90; ++i) {
        const double c = b - gr * (b - a);
        const double d = a + gr * (b - a);
        if (f(c) < f(d))
            b = d;
        else
            a = c;
    }
    return f(0.5 * (a + b));
}

// Number of interior points where the density vanishes: scan for local
// minima of the pdf on a grid over (0, hi), refine each by golden section,
// and count the ones that bottom out at numerical zero. A true node is a
// squared simple root, so the refined minimum lands many orders below the
// 1e-10 * peak cutoff, while genuine inter-lobe minima stay O(peak).
int interior_zeros(const DensityModel& m, double hi, int npts = 8001) {
    std::vector<double> x(npts), v(npts);
    double peak = 0.0;
    for (int i = 0; i < npts; ++i) {
        x[i] = hi * (i + 1.0) / npts;
        v[i] = m.pdf(x[i]);
        peak = std::max(peak, v[i]);
    }
    int count = 0;
    for (int i = 1; i + 1 < npts; ++i) {
        if (v[i] < v[i - 1] && v[i] <= v[i + 1]) {
            if (min_on(m.pdf, x[i - 1], x[i + 1]) < 1e-10 * peak) ++count;
        }
    }
    return count;
}

// Closed-form normalization constants, recomputed here from gamma functions
// so the library values are checked against an independent spelling.
double hyd_pos_norm(double Z, double eta, double L) {
    return Z / (eta * eta) *
           std::exp(std::lgamma(eta - L) - std::lgamma(eta + L + 1.0));
}
double hyd_mom_norm(double Z, double eta, double L) {
    return std::pow(4.0, 2.0 * L + 3.0) * std::tgamma(eta - L) *
           std::pow(std::tgamma(L + 1.0), 2) * eta * eta /
           (2.0 * kPi * Z * std::tgamma(eta + L + 1.0));
}
double osc_norm(double scale, int n, double L) {
    return 2.0 * scale * std::tgamma(n + 1.0) / std::tgamma(n + L + 1.5);
}

double mass_of(const DensityModel& m) {
    return integrate(m.pdf, m.support, 1e-10, 1e-12).value;
}

}  // namespace

TEST_CASE("laguerre: recurrence against the explicit low-degree forms") {
    const PolyEval l0 = laguerre(0, 0.7, 3.1);
    CHECK(l0.value == 1.0);
    CHECK(l0.derivative == 0.0);

    // L_1^{(alpha)}(x) = 1 + alpha - x
    CHECK(laguerre(1, 1.5, 2.0).value == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(laguerre(1, 1.5, 2.0).derivative ==
          doctest::Approx(-1.0).epsilon(1e-14));  // -L_0^{(2.5)} = -1

    // L_3^{(0)}(x) = 1 - 3x + 3x^2/2 - x^3/6, expanded here independently
    const auto cubic = [](double x) {
        return 1.0 - 3.0 * x + 1.5 * x * x - x * x * x / 6.0;
    };
    const auto cubic_d = [](double x) { return -3.0 + 3.0 * x - 0.5 * x * x; };
    for (double x : {0.3, 1.0, 2.5, 6.0}) {
        CHECK(laguerre(3, 0.0, x).value ==
              doctest::Approx(cubic(x)).epsilon(1e-13));
        CHECK(laguerre(3, 0.0, x).derivative ==
              doctest::Approx(cubic_d(x)).epsilon(1e-13));
    }

    CHECK_THROWS_AS(laguerre(-1, 0.0, 1.0), std::domain_error);
}

TEST_CASE("gegenbauer: recurrence against the Chebyshev-U special case") {
    const PolyEval c0 = gegenbauer(0, 2.0, -0.4);
    CHECK(c0.value == 1.0);
    CHECK(c0.derivative == 0.0);

    // C_1^{(alpha)}(x) = 2 alpha x
    CHECK(gegenbauer(1, 2.0, 0.5).value == doctest::Approx(2.0).epsilon(1e-14));

    // C_n^{(1)} = U_n; U_2(x) = 4x^2 - 1 vanishes at x = 1/2
    CHECK(gegenbauer(2, 1.0, 0.5).value == doctest::Approx(0.0));
    for (double x : {-0.9, -0.3, 0.2, 0.8}) {
        CHECK(gegenbauer(2, 1.0, x).value ==
              doctest::Approx(4.0 * x * x - 1.0).epsilon(1e-13));
        CHECK(gegenbauer(2, 1.0, x).derivative ==
              doctest::Approx(8.0 * x).epsilon(1e-13));
    }

    CHECK_THROWS_AS(gegenbauer(-2, 1.0, 0.0), std::domain_error);
}

TEST_CASE("polynomial derivatives match finite differences") {
    for (int n : {1, 2, 4, 7}) {
        for (double x : {0.4, 1.7, 5.2}) {
            const auto lf = [n](double t) { return laguerre(n, 2.5, t).value; };
            CHECK(rel_err(laguerre(n, 2.5, x).derivative, fd5(lf, x, 1e-3)) <
                  1e-8);
            const double xc = x / 6.0;  // keep the argument inside (-1, 1)
            const auto gf = [n](double t) {
                return gegenbauer(n, 1.5, t).value;
            };
            CHECK(rel_err(gegenbauer(n, 1.5, xc).derivative,
                          fd5(gf, xc, 1e-4)) < 1e-8);
        }
    }
}

TEST_CASE("quantum_state: quantum-number validation") {
    CHECK_NOTHROW(quantum_state(QuantumSystem::hydrogenic,
                                QuantumSpace::position, 1, 0, 3, 1.0));
    CHECK_NOTHROW(quantum_state(QuantumSystem::harmonic,
                                QuantumSpace::momentum, 0, 5, 2, 0.3));
    // hydrogenic needs n >= 1 and l <= n-1
    CHECK_THROWS_AS(quantum_state(QuantumSystem::hydrogenic,
                                  QuantumSpace::position, 0, 0, 3, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantum_state(QuantumSystem::hydrogenic,
                                  QuantumSpace::position, 2, 2, 3, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantum_state(QuantumSystem::harmonic,
                                  QuantumSpace::position, -1, 0, 3, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantum_state(QuantumSystem::hydrogenic,
                                  QuantumSpace::position, 1, 0, 1, 1.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantum_state(QuantumSystem::hydrogenic,
                                  QuantumSpace::position, 1, 0, 3, 0.0),
                    std::domain_error);
    CHECK_THROWS_AS(quantum_state(QuantumSystem::harmonic,
                                  QuantumSpace::position, 0, 0, 3, -2.0),
                    std::domain_error);

    // hand-built states with stale eta/L are rejected by the operations
    QuantumState s = quantum_state(QuantumSystem::hydrogenic,
                                   QuantumSpace::position, 2, 1, 3, 1.0);
    CHECK(s.eta == 2.0);
    CHECK(s.L == 1.0);
    s.eta = 3.0;
    CHECK_THROWS_AS(radial_density(s), std::domain_error);
    CHECK_THROWS_AS(energy(s), std::domain_error);
}

TEST_CASE("hydrogenic ground state in position space is 4 r^2 e^{-2r}") {
    const DensityModel m = radial_density(quantum_state(
        QuantumSystem::hydrogenic, QuantumSpace::position, 1, 0, 3, 1.0));
    CHECK(m.support.lo == 0.0);
    CHECK(std::isinf(m.support.hi));
    CHECK(m.pdf(1.0) ==
          doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-12));
    for (double r : {0.3, 1.0, 2.7}) {
        CHECK(m.pdf(r) ==
              doctest::Approx(4.0 * r * r * std::exp(-2.0 * r)).epsilon(1e-12));
        CHECK(m.dpdf(r) ==
              doctest::Approx((8.0 * r - 8.0 * r * r) * std::exp(-2.0 * r))
                  .epsilon(1e-12));
    }
    CHECK(m.pdf(-0.5) == 0.0);
    CHECK(m.pdf(0.0) == 0.0);
    CHECK(mass_of(m) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("hydrogenic ground state in momentum space is the Fock profile") {
    const DensityModel m = radial_density(quantum_state(
        QuantumSystem::hydrogenic, QuantumSpace::momentum, 1, 0, 3, 1.0));
    // gamma(k) = (32/pi) k^2 / (1+k^2)^4; the shape integral has the closed
    // value pi/32, checked here by quadrature as the normalization oracle
    const auto shape = [](double k) {
        return k * k / std::pow(1.0 + k * k, 4);
    };
    const double inf = std::numeric_limits<double>::infinity();
    CHECK(integrate(shape, {0.0, inf}).value ==
          doctest::Approx(kPi / 32.0).epsilon(1e-10));
    for (double k : {0.5, 1.0, 3.0}) {
        CHECK(m.pdf(k) ==
              doctest::Approx(32.0 / kPi * shape(k)).epsilon(1e-12));
        const double want_d = 64.0 * k / kPi * (1.0 - 3.0 * k * k) /
                              std::pow(1.0 + k * k, 5);
        CHECK(m.dpdf(k) == doctest::Approx(want_d).epsilon(1e-12));
    }
    CHECK(mass_of(m) == doctest::Approx(1.0).epsilon(1e-10));
    // far past any representable t^2 the tail is exactly zero, never NaN
    CHECK(m.pdf(1e160) == 0.0);
    CHECK(m.dpdf(1e160) == 0.0);
}

TEST_CASE("harmonic ground state is (4/sqrt(pi)) r^2 e^{-r^2}") {
    const DensityModel m = radial_density(quantum_state(
        QuantumSystem::harmonic, QuantumSpace::position, 0, 0, 3, 1.0));
    const double c = 4.0 / std::sqrt(kPi);
    for (double r : {0.2, 1.0, 2.4}) {
        CHECK(m.pdf(r) ==
              doctest::Approx(c * r * r * std::exp(-r * r)).epsilon(1e-12));
        CHECK(m.dpdf(r) ==
              doctest::Approx(c * (2.0 * r - 2.0 * r * r * r) *
                              std::exp(-r * r))
                  .epsilon(1e-12));
    }
    CHECK(mass_of(m) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("harmonic position and momentum profiles swap under omega -> 1/omega") {
    const DensityModel mom = radial_density(quantum_state(
        QuantumSystem::harmonic, QuantumSpace::momentum, 2, 1, 3, 4.0));
    const DensityModel pos_inv = radial_density(quantum_state(
        QuantumSystem::harmonic, QuantumSpace::position, 2, 1, 3, 0.25));
    const DensityModel pos = radial_density(quantum_state(
        QuantumSystem::harmonic, QuantumSpace::position, 2, 1, 3, 4.0));
    for (double v : {0.4, 1.1, 2.9}) {
        CHECK(mom.pdf(v) == doctest::Approx(pos_inv.pdf(v)).epsilon(1e-13));
        // position at omega scales as sqrt(omega) rho_1(sqrt(omega) r)
        const DensityModel unit = radial_density(quantum_state(
            QuantumSystem::harmonic, QuantumSpace::position, 2, 1, 3, 1.0));
        CHECK(pos.pdf(v) ==
              doctest::Approx(2.0 * unit.pdf(2.0 * v)).epsilon(1e-13));
    }
    CHECK(mass_of(mom) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("energies of the closed-form spectra") {
    CHECK(energy(quantum_state(QuantumSystem::hydrogenic,
                               QuantumSpace::position, 1, 0, 3, 1.0)) ==
          doctest::Approx(-0.5).epsilon(1e-14));
    // d = 12 shifts the principal number to eta = n + 4.5
    CHECK(energy(quantum_state(QuantumSystem::hydrogenic,
                               QuantumSpace::momentum, 2, 0, 12, 1.0)) ==
          doctest::Approx(-1.0 / (2.0 * 6.5 * 6.5)).epsilon(1e-14));
    CHECK(energy(quantum_state(QuantumSystem::harmonic, QuantumSpace::position,
                               0, 0, 3, 1.0)) ==
          doctest::Approx(1.5).epsilon(1e-14));
    // space never enters the spectrum
    CHECK(energy(quantum_state(QuantumSystem::hydrogenic,
                               QuantumSpace::position, 3, 2, 5, 1.7)) ==
          energy(quantum_state(QuantumSystem::hydrogenic,
                               QuantumSpace::momentum, 3, 2, 5, 1.7)));
}

TEST_CASE("unit mass and closed-form constants across the (d, n, l) table") {
    for (int d : {3, 12}) {
        const double shift = 0.5 * (d - 3);
        for (int n = 1; n <= 4; ++n) {
            for (int l = 0; l < n; ++l) {
                const double eta = n + shift, L = l + shift;
                for (QuantumSpace sp :
                     {QuantumSpace::position, QuantumSpace::momentum}) {
                    const DensityModel m = radial_density(quantum_state(
                        QuantumSystem::hydrogenic, sp, n, l, d, 1.0));
                    const double want = sp == QuantumSpace::position
                                            ? hyd_pos_norm(1.0, eta, L)
                                            : hyd_mom_norm(1.0, eta, L);
                    CHECK(rel_err(m.normalization_constant, want) < 1e-12);
                    CHECK(std::fabs(mass_of(m) - 1.0) < 1e-8);
                }
            }
        }
        for (int n = 0; n <= 4; ++n) {
            for (int l = 0; l <= 3; ++l) {
                const double L = l + shift;
                for (QuantumSpace sp :
                     {QuantumSpace::position, QuantumSpace::momentum}) {
                    const DensityModel m = radial_density(quantum_state(
                        QuantumSystem::harmonic, sp, n, l, d, 1.0));
                    // at omega = 1 both spaces share the scale factor 1
                    CHECK(rel_err(m.normalization_constant,
                                  osc_norm(1.0, n, L)) < 1e-12);
                    CHECK(std::fabs(mass_of(m) - 1.0) < 1e-8);
                }
            }
        }
    }
    // non-unit potential constants
    const DensityModel hz = radial_density(quantum_state(
        QuantumSystem::hydrogenic, QuantumSpace::position, 3, 1, 3, 2.7));
    CHECK(std::fabs(mass_of(hz) - 1.0) < 1e-8);
    const DensityModel hk = radial_density(quantum_state(
        QuantumSystem::hydrogenic, QuantumSpace::momentum, 3, 1, 3, 2.7));
    CHECK(std::fabs(mass_of(hk) - 1.0) < 1e-8);
    const DensityModel ow = radial_density(quantum_state(
        QuantumSystem::harmonic, QuantumSpace::momentum, 2, 2, 12, 0.35));
    CHECK(rel_err(ow.normalization_constant,
                  osc_norm(1.0 / std::sqrt(0.35), 2, 2 + 4.5)) < 1e-12);
    CHECK(std::fabs(mass_of(ow) - 1.0) < 1e-8);
}

TEST_CASE("node counts follow the polynomial degrees") {
    for (int d : {3, 12}) {
        for (int n = 1; n <= 4; ++n) {
            for (int l = 0; l < n; ++l) {
                const QuantumState s = quantum_state(
                    QuantumSystem::hydrogenic, QuantumSpace::position, n, l, d,
                    1.0);
                // every Laguerre zero sits below 4*deg + 2*order + 2 in t
                const double t_hi =
                    4.0 * (n - l) + 2.0 * (2.0 * s.L + 1.0) + 12.0;
                const double r_hi = t_hi * s.eta / 2.0;
                CHECK(interior_zeros(radial_density(s), r_hi) == n - l - 1);
            }
        }
        for (int n = 0; n <= 3; ++n) {
            const QuantumState s = quantum_state(
                QuantumSystem::harmonic, QuantumSpace::position, n, 1, d, 1.0);
            const double t_hi =
                std::sqrt(4.0 * n + 2.0 * s.L + 3.0) + 5.0;
            CHECK(interior_zeros(radial_density(s), t_hi) == n);
        }
    }
}

TEST_CASE("density derivatives match finite differences") {
    const std::vector<QuantumState> states = {
        quantum_state(QuantumSystem::hydrogenic, QuantumSpace::position, 3, 1,
                      3, 1.0),
        quantum_state(QuantumSystem::hydrogenic, QuantumSpace::momentum, 2, 0,
                      12, 1.0),
        quantum_state(QuantumSystem::harmonic, QuantumSpace::position, 2, 1, 3,
                      1.3),
    };
    for (const QuantumState& s : states) {
        const DensityModel m = radial_density(s);
        // sample scale of the state so the points probe the populated region
        const double x0 =
            s.system == QuantumSystem::harmonic ? 1.0 : s.eta * s.eta / 4.0;
        double slope_scale = 0.0;
        std::vector<double> xs;
        for (double f : {0.35, 0.8, 1.5, 2.3}) {
            xs.push_back(f * x0);
            slope_scale = std::max(slope_scale, std::fabs(m.dpdf(f * x0)));
        }
        for (double x : xs) {
            const double an = m.dpdf(x);
            if (std::fabs(an) < 1e-3 * slope_scale) continue;  // near a zero
            const double fd = fd5(m.pdf, x, 1e-4 * (1.0 + x));
            CHECK(rel_err(fd, an) < 1e-6);
        }
    }
}

TEST_CASE("position and momentum spreads move oppositely in n") {
    // lambda = 7 entropy powers, l = 0, d = 3: position grows with n while
    // momentum shrinks -- orbits get larger and slower simultaneously
    std::vector<double> pos, mom;
    for (int n = 1; n <= 4; ++n) {
        pos.push_back(renyi_entropy_power(
            radial_density(quantum_state(QuantumSystem::hydrogenic,
                                         QuantumSpace::position, n, 0, 3, 1.0)),
            7.0));
        mom.push_back(renyi_entropy_power(
            radial_density(quantum_state(QuantumSystem::hydrogenic,
                                         QuantumSpace::momentum, n, 0, 3, 1.0)),
            7.0));
    }
    for (int i = 0; i + 1 < 4; ++i) {
        CHECK(pos[i + 1] > pos[i]);
        CHECK(mom[i + 1] < mom[i]);
    }
}
