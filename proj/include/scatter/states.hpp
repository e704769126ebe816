#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "scatter/kinematics.hpp"
#include "scatter/morse.hpp"

namespace scatter {

/// Gaussian translational packet spec (momentum space) times an internal
/// vibrational superposition: Psi = sum_nu c_nu |nu> x |psi_p> x |psi_P>.
struct PacketSpec {
    std::vector<std::pair<int, std::complex<double>>> nu_coeffs;
    double p0 = 4.0;     // electron packet center (au)
    double dp = 0.01;    // electron packet momentum width (au)
    double P0 = 0.0;     // ion packet center (au)
    double dP = 1.0;     // ion packet momentum width (au)
    double tau_d = 0.0;  // focus offset (au time); adds e^{i p x_d - i p^2 tau_d/2}
};

enum class StateKind { EntangledDiscrete, ProductPacket };

struct SuperpositionState {
    StateKind kind = StateKind::EntangledDiscrete;
    std::vector<ShellComponent> components;  // discrete case
    std::optional<PacketSpec> packet;        // packet case
    std::vector<std::string> warnings;       // dropped closed channels etc.
};

/// P(R, x) on a finite window; x is the electron-ion separation conjugate
/// to the relative momentum (center-of-mass factor dropped).
struct DensityMap {
    std::vector<double> r_grid;
    std::vector<double> x_grid;
    std::vector<double> values;  // row-major: values[ir * nx + ix]
    double at(std::size_t ir, std::size_t ix) const { return values[ir * x_grid.size() + ix]; }
};

struct ContactSlice {
    std::vector<std::complex<double>> psi;  // on the bound-state grid
    double expectation_r = 0.0;
};

/// Two-component entangled state on one shell: second component carries
/// e^{i phi}; its momenta come from solve_entangled_partner.  C1, C2 are
/// real with C1^2 + C2^2 = 1.  The degenerate case nu2 == nu1 collapses
/// to a single component with coefficient C1 + C2 e^{i phi}.
SuperpositionState build_two_state(const std::vector<BoundLevel>& levels, int nu1, int nu2,
                                   double p1, double P1, double phi, double c1, double c2,
                                   const PotentialParams& params);

/// Envelope multi-state superposition on one shell: coefficients
/// proportional to (+-1)^nu exp(-((nu - center)/width)^2), each nu paired
/// with the k_nu that keeps the components on the shell anchored by
/// k0 at nu = 0 (common K, set to 0 as a spectator).  Components whose
/// channel is closed are dropped with a warning; all-closed is an error.
SuperpositionState build_envelope_state(const std::vector<BoundLevel>& levels,
                                        double center_nu, double width_nu,
                                        bool alternate_sign, double k0,
                                        const PotentialParams& params);

/// Product packet state; nu coefficients are normalized to sum |c|^2 = 1.
SuperpositionState build_packet_state(std::vector<std::pair<int, std::complex<double>>> nu_coeffs,
                                      double p0, double dp, double P0, double dP, double tau_d);

/// P(R,x) = |sum_n C_n chi_nu(R) e^{i k_n x} / sqrt(2 pi)|^2 for discrete
/// states; packet states factorize into |sum c_nu chi_nu|^2 times the
/// relative-coordinate Gaussian density at t = 0.
DensityMap density_map(const SuperpositionState& state, const std::vector<BoundLevel>& levels,
                       double r_lo, double r_hi, std::size_t nr, double x_lo, double x_hi,
                       std::size_t nx, const PotentialParams& params);

/// psi(R) = sum C_nu chi_nu(R) at x = 0 and its normalized <R>.
/// Throws InvariantError when the slice norm vanishes (perfect
/// destructive interference).
ContactSlice contact_slice(const SuperpositionState& state,
                           const std::vector<BoundLevel>& levels);

}  // namespace scatter
