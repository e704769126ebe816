#pragma once

#include <vector>

#include "scatter/grid.hpp"
#include "scatter/potentials.hpp"

namespace scatter {

/// One bound vibrational level of the Sigma_g Morse well.
///
/// Wavefunctions are the closed-form associated-Laguerre Morse
/// eigenfunctions sampled on the grid, unit-normalized, with the sign
/// convention that the innermost lobe is positive.  (That convention makes
/// the alternating-sign envelope superposition pile up at the outer
/// turning point, and the all-positive one at the inner wall.)
struct BoundLevel {
    int nu = 0;
    double energy = 0.0;  // hartree, < 0
    RadialFunction wavefunction;
};

/// Analytic level energy E_nu = -D (1 - (nu + 1/2)/lambda)^2.
double morse_level_energy(const PotentialParams& p, int nu);

/// Number of bound levels, nu = 0 .. floor(lambda - 1/2).
int morse_level_count(const PotentialParams& p);

/// All bound levels with wavefunctions sampled on `grid`.
/// Throws ConfigError when the parameter set supports no bound state.
std::vector<BoundLevel> morse_levels(const PotentialParams& p, const RadialGrid& grid);

/// <R> = int chi R chi dR.  Throws InvariantError if the stored
/// wavefunction is not unit-normalized to 1e-6.
double bound_expectation_R(const BoundLevel& level);

}  // namespace scatter
