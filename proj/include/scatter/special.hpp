#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace scatter {

/// Spherical Bessel j_L(x): power series for x < 1e-3, upward recurrence
/// for x > L, downward (Miller) recurrence otherwise.
double spherical_bessel(int l, double x);

/// Spherical Neumann y_L(x); upward recurrence is stable for all x > 0.
double spherical_neumann(int l, double x);

/// Riccati-Bessel pair S_L(x) = x j_L(x), C_L(x) = -x y_L(x) and their
/// x-derivatives, evaluated together for asymptotic matching.
struct RiccatiPair {
    double s, sp;  // S_L, S_L'
    double c, cp;  // C_L, C_L'
};
RiccatiPair riccati_bessel(int l, double x);

/// Generalized Laguerre L_n^(a)(x) by the three-term degree recurrence.
double assoc_laguerre(int n, double a, double x);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int n);

/// Gauss-Hermite rule for weight exp(-x^2) on (-inf, inf).
QuadratureRule gauss_hermite(int n);

}  // namespace scatter
