#pragma once

#include <complex>

#include "scatter/grid.hpp"

namespace scatter {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    double norm() const;
};

/// Momentum transfer of one Born event; incident momentum along +z by
/// convention.
struct MomentumTransfer {
    Vec3 k_i;
    Vec3 k_f;

    Vec3 k_tilde() const { return k_f - k_i; }
    double magnitude() const { return k_tilde().norm(); }

    /// k_i of magnitude `ki` along +z; k_f of magnitude `kf` at polar angle
    /// theta, azimuth phi.
    static MomentumTransfer collinear_incident(double ki, double kf, double theta,
                                               double phi = 0.0);
};

/// On-shell first-Born amplitude for (nu, k_i) -> (E, L, k_f); the
/// i^L sqrt(2L+1) factor is included in `value`.
struct TMatrixElement {
    int nu = 0;
    double energy = 0.0;  // fragment energy (hartree)
    int l = 0;
    std::complex<double> value;
};

/// LCAO normalization pair N±(R) = [2 ± 2 e^{-R}(1 + R + R^2/3)]^{-1/2}.
/// N- is singular at R = 0; R must be positive.
std::pair<double, double> lcao_norms(double r);

/// Grid-sampled N+(R) N-(R) weight used inside the radial integral.
std::vector<double> lcao_weight(const RadialGrid& grid);

/// R(L, nu, E, k~) = 16/pi^2 * 1/(k~^2 (4 + k~^2)^2) *
///                   int N+ N- chi_{E,L}(R) j_L(k~ R/2) chi_nu(R) dR.
/// Both wavefunctions must share the grid.  k~ = 0 is a kinematically
/// degenerate input and is rejected.
double radial_integral(int l, const RadialFunction& bound, const RadialFunction& continuum,
                       double k_tilde);

/// Same, with the LCAO weight precomputed by lcao_weight() and an
/// optional support window [i0, i1] (bound-state support trimming).
double radial_integral(int l, const RadialFunction& bound, const RadialFunction& continuum,
                       double k_tilde, const std::vector<double>& lcao_w, std::size_t i0,
                       std::size_t i1);

/// t = i^L sqrt(2L+1) R(L, nu, E, k~); depends on (k_i, k_f) only through
/// k~ = |k_f - k_i|.
TMatrixElement t_element(int nu, double energy, int l, const RadialFunction& bound,
                         const RadialFunction& continuum, const MomentumTransfer& kin);

/// Support window where |chi| > 1e-15 * max|chi|, padded and aligned so
/// Simpson sees an even interval count.
std::pair<std::size_t, std::size_t> support_window(const RadialFunction& f);

}  // namespace scatter
