#pragma once

#include <functional>
#include <optional>

#include "scatter/grid.hpp"
#include "scatter/potentials.hpp"

namespace scatter {

/// Energy-normalized Sigma_u continuum radial state:
/// asymptotically sqrt(2 mu / (pi k)) sin(kR - L pi/2 + delta_L).
struct ContinuumState {
    double energy = 0.0;      // hartree, > 0
    int l = 0;
    RadialFunction wavefunction;
    double phase_shift = 0.0;    // delta_L, radians (free potential -> 0)
    double asymptotic_k = 0.0;   // sqrt(2 mu E)
    double matching_radius = 0.0;
};

using PotentialFn = std::function<double(double)>;

/// Numerov-propagated regular solution, matched against the Riccati-Bessel
/// pair via the value and a five-point derivative at the matching point.
/// Riccati matching absorbs the centrifugal tail exactly, so the match
/// only needs |V(R)| < 1e-6 E; if that radius exceeds the grid a GridError
/// is thrown.  `match_r` overrides the matching point (self-consistency
/// checks); it must lie beyond the potential cutoff.
ContinuumState solve_continuum(double energy, int l, const PotentialFn& potential,
                               const PotentialParams& params, const RadialGrid& grid,
                               std::optional<double> match_r = std::nullopt);

/// Convenience overload on the default anti-Morse Sigma_u surface.
ContinuumState solve_continuum(double energy, int l, const PotentialParams& params,
                               const RadialGrid& grid,
                               std::optional<double> match_r = std::nullopt);

/// Overlap int_0^{Rmax} chi_{E1,L} chi_{E2,L} dR of two stored states.
/// On a uniform energy grid of spacing h the matrix M_ij * h approximates
/// the identity (finite-window smeared delta(E - E')).
double energy_normalization_check(const ContinuumState& a, const ContinuumState& b);

}  // namespace scatter
