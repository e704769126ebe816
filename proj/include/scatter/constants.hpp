#pragma once

// Atomic units throughout (hbar = m_e = e = 1).

namespace scatter {

inline constexpr double kProtonMass = 1836.152672;   // electron masses
inline constexpr double kAuTimeFs  = 0.024188843265857;  // 1 au of time in fs
inline constexpr double kPi = 3.14159265358979323846;

// Morse defaults for the H2+ Sigma_g surface.  They reproduce the bound
// spectrum anchors E0 = -0.0973, E1 = -0.0871 hartree with mu = m_p/2.
inline constexpr double kDefaultMorseD     = 0.1026;  // hartree
inline constexpr double kDefaultMorseAlpha = 0.72;    // 1/bohr
inline constexpr double kDefaultMorseRe    = 2.00;    // bohr

inline constexpr double kDefaultRmin = 0.2;    // bohr
inline constexpr double kDefaultRmax = 40.0;   // bohr
inline constexpr double kDefaultDr   = 0.01;   // bohr

}  // namespace scatter
