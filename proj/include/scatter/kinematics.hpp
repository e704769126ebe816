#pragma once

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "scatter/potentials.hpp"

namespace scatter {

// Incident momenta are collinear (antiparallel beams), so lab and
// relative momenta along the beam axis are scalars; outgoing momenta are
// fully 3D and handled in the Born/cross-section layer.

/// Lab-frame component of an incident superposition.
struct LabState {
    double p = 0.0;     // electron lab momentum (au)
    double P = 0.0;     // ion lab momentum (au)
    int nu = 0;         // internal label
    double e_nu = 0.0;  // internal energy (hartree)
};

/// Center-of-mass decomposition of an e-ion pair.
struct CmMomenta {
    double k = 0.0;  // relative momentum
    double K = 0.0;  // center-of-mass momentum
};

struct LabMomenta {
    double p = 0.0;
    double P = 0.0;
};

/// K = p + P, k = (m_I p - P)/(m_I + 1).
CmMomenta lab_to_cm(double p, double P, double m_ion);
/// Exact inverse: p = k + K/(m_I+1), P = K m_I/(m_I+1) - k.
LabMomenta cm_to_lab(double k, double K, double m_ion);

/// Total energy of a component: k^2/(2 m_rel) + K^2/(2 M_tot) + E_nu.
/// The paper's electron-mass-unit expressions absorb m_rel ~ 0.99973; we
/// carry it explicitly so shell grouping is exact.
double component_total_energy(double k, double K, double e_nu, const PotentialParams& p);

/// |k_b| from energy conservation at fixed total relative energy.
/// Closed channel (negative radicand) -> nullopt.
std::optional<double> outgoing_momentum(double k_a, double e_a_int, double e_b_int,
                                        double m_rel);

/// Incident momentum that puts component (E_nu) on the shell reaching
/// fragment energy E with outgoing |k_f|.  Closed channel -> nullopt.
std::optional<double> incident_k_for_shell(double k_f_mag, double e_frag, double e_nu,
                                           double m_rel);

/// Solves the partner momenta (p2, P2) of an entangled two-component
/// state: equal total momentum and equal total energy.  Of the two
/// quadratic roots the one continuously connected to (p1, P1) as
/// E_nu2 -> E_nu1 is returned.  Throws InfeasibleStateError when no real
/// root exists.
LabState solve_entangled_partner(const LabState& c1, int nu2, double e_nu2, double m_ion);

/// One term of an incident superposition in CM coordinates.
struct ShellComponent {
    int nu = 0;
    double e_nu = 0.0;            // internal energy (hartree)
    double k = 0.0;               // relative momentum (au)
    double K = 0.0;               // center-of-mass momentum (au)
    std::complex<double> coeff;   // amplitude
};

/// Components sharing (E_tot, K) within tolerance; only these interfere.
struct Shell {
    double e_total = 0.0;  // full total energy incl. CM term
    double K = 0.0;
    double weight = 1.0;   // quadrature weight (1 for discrete states)
    std::vector<ShellComponent> members;
};

/// Partitions components into shells keyed by (E_tot, K).  The partition
/// is independent of input order.  Default tolerance 1e-9 absorbs only
/// floating-point noise; discrete scenarios are constructed exactly.
std::vector<Shell> enumerate_shells(std::span<const ShellComponent> components,
                                    const PotentialParams& params,
                                    double tolerance = 1e-9);

}  // namespace scatter
