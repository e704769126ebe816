#pragma once

#include "scatter/constants.hpp"

namespace scatter {

/// Morse parameters of the Sigma_g surface plus the nuclear masses.
/// The Sigma_u surface is the anti-Morse curve built from the same set.
struct PotentialParams {
    double d = kDefaultMorseD;          // well depth (hartree)
    double alpha = kDefaultMorseAlpha;  // range parameter (1/bohr)
    double r_e = kDefaultMorseRe;       // equilibrium separation (bohr)
    double m_p = kProtonMass;           // proton mass (electron masses)

    double mu() const { return 0.5 * m_p; }      // reduced nuclear mass
    double m_ion() const { return 2.0 * m_p; }   // H2+ mass
    // reduced electron-ion mass of the e-H2+ pair
    double m_rel() const { return m_ion() / (m_ion() + 1.0); }

    /// Morse lambda = sqrt(2 mu D)/alpha; bound levels require lambda > 1/2.
    double lambda() const;

    void validate() const;  // throws ConfigError on nonphysical values
};

/// Bonding Sigma_g curve: D (e^{-2a(R-Re)} - 2 e^{-a(R-Re)}).
double sigma_g_potential(double r, const PotentialParams& p);

/// Antibonding Sigma_u curve: (D/2)(e^{-2a(R-Re)} + 2 e^{-a(R-Re)}),
/// purely repulsive.
double sigma_u_potential(double r, const PotentialParams& p);

}  // namespace scatter
