#pragma once

#include "frc/density.hpp"

namespace frc {

enum class QuantumSystem { hydrogenic, harmonic };
enum class QuantumSpace { position, momentum };

// A bound stationary state of a d-dimensional central-potential system:
// hydrogenic (V = -Z/r) or harmonic (V = omega^2 r^2 / 2). The angular part
// of the wave function is common to both systems and integrates out of the
// radial densities, so (n, l, d) plus the potential constant fix the state.
//
// The dimension enters every radial formula only through the shifted "grand"
// quantum numbers eta = n + (d-3)/2 and L = l + (d-3)/2, which are stored
// precomputed; build states with quantum_state() so they stay consistent.
struct QuantumState {
    QuantumSystem system;
    int n;            // hydrogenic: principal, n >= 1; harmonic: radial, n >= 0
    int l;            // orbital angular momentum; l <= n-1 for hydrogenic
    int d;            // spatial dimension, d >= 2
    double constant;  // nuclear charge Z or oscillator frequency omega, > 0
    QuantumSpace space;
    double eta;       // n + (d-3)/2
    double L;         // l + (d-3)/2
};

// Validating constructor: enforces d >= 2, constant > 0 and the per-system
// quantum-number ranges (hydrogenic 1 <= n, 0 <= l <= n-1; harmonic n >= 0,
// l >= 0), then fills in eta and L. Throws std::domain_error on violation.
QuantumState quantum_state(QuantumSystem system, QuantumSpace space, int n,
                           int l, int d, double constant);

// Value and first derivative of an orthogonal polynomial at one point.
struct PolyEval {
    double value;
    double derivative;
};

// Generalized Laguerre polynomial L_n^{(alpha)}(x) by the three-term
// recurrence, for real (including half-integer) orders alpha. The derivative
// comes from the shift identity d/dx L_n^{(alpha)} = -L_{n-1}^{(alpha+1)}
// (0 for n = 0). Requires n >= 0; throws std::domain_error otherwise.
PolyEval laguerre(int n, double alpha, double x);

// Gegenbauer polynomial C_n^{(alpha)}(x) by the three-term recurrence, for
// real orders alpha > 0. The derivative comes from the shift identity
// d/dx C_n^{(alpha)} = 2 alpha C_{n-1}^{(alpha+1)} (0 for n = 0). Requires
// n >= 0; throws std::domain_error otherwise.
PolyEval gegenbauer(int n, double alpha, double x);

// Energy of the state in atomic units: -Z^2 / (2 eta^2) for hydrogenic,
// omega (2n + L + 3/2) for harmonic; the same in both spaces. Throws
// std::domain_error for inconsistent states.
double energy(const QuantumState& state);

// The normalized radial probability density of the state, supported on
// (0, infinity), with analytic derivative:
//
//   hydrogenic position  rho(r)   ~ t^{2L+2} e^{-t} Lag^2,   t = (2Z/eta) r
//   hydrogenic momentum  gamma(k) ~ t^{2L+2} (1+t^2)^{-(2L+4)} Geg^2,
//                                                            t = (eta/Z) k
//   harmonic, either     rho(r)   ~ t^{2L+2} e^{-t^2} Lag^2, t = sqrt(omega) r
//                                   (position) or k / sqrt(omega) (momentum)
//
// where Lag/Geg are Laguerre resp. Gegenbauer factors of degree n - l - 1
// (hydrogenic) or n (harmonic). The harmonic radial eigenfunctions are fixed
// points of the Hankel-type transform between the two spaces, so position
// and momentum share one dimensionless profile with reciprocal scales and
// coincide exactly at omega = 1.
//
// The closed-form normalization constant is cross-checked by quadrature at
// construction; if it were ever off by more than 1e-8 the numerical constant
// would win and one diagnostic line would go to stderr. Throws
// std::domain_error for inconsistent states.
DensityModel radial_density(const QuantumState& state);

}  // namespace frc
