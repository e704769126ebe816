#include "scatter/continuum.hpp"

#include <cmath>
#include <stdexcept>

#include "scatter/errors.hpp"
#include "scatter/numerov.hpp"
#include "scatter/special.hpp"

namespace scatter {

ContinuumState solve_continuum(double energy, int l, const PotentialFn& potential,
                               const PotentialParams& params, const RadialGrid& grid,
                               std::optional<double> match_r) {
    if (!(energy > 0.0) || !std::isfinite(energy)) {
        throw std::domain_error("solve_continuum: require E > 0");
    }
    if (l < 0) throw std::domain_error("solve_continuum: require L >= 0");

    const double mu = params.mu();
    const double k = std::sqrt(2.0 * mu * energy);
    const std::size_t n = grid.n;

    // chi'' = w chi with the centrifugal term folded in
    std::vector<double> w(n);
    for (std::size_t i = 0; i < n; ++i) {
        double r = grid.r(i);
        w[i] = 2.0 * mu * (potential(r) - energy) + l * (l + 1.0) / (r * r);
    }

    std::vector<double> chi(n, 0.0);
    chi[0] = 0.0;
    chi[1] = std::pow(grid.dr, l + 1);  // regularity seed
    numerov_outward(w, grid.dr, chi);

    // short-range cutoff: |V| < 1e-6 E (the Riccati basis carries the
    // centrifugal tail exactly)
    std::size_t i_cut = n;
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(potential(grid.r(i))) < 1e-6 * energy) {
            i_cut = i;
            break;
        }
    }
    if (i_cut + 6 >= n) {
        throw GridError("solve_continuum: matching radius exceeds Rmax; enlarge the grid");
    }

    std::size_t im = n - 3;  // room for the five-point derivative stencil
    if (match_r) {
        im = grid.index_at(*match_r);
        if (im < i_cut + 2 || im + 2 >= n) {
            throw GridError("solve_continuum: requested matching radius unusable");
        }
    }

    const double rm = grid.r(im);
    const double chi_m = chi[im];
    const double dchi_m = (-chi[im + 2] + 8.0 * chi[im + 1] - 8.0 * chi[im - 1] + chi[im - 2]) /
                          (12.0 * grid.dr);

    // chi = Ca S_L(kR) + Cb C_L(kR); Wronskian S C' - S' C = -k (R-units)
    RiccatiPair rb = riccati_bessel(l, k * rm);
    double wronskian = k * (rb.s * rb.cp - rb.sp * rb.c);  // = -k
    double ca = (chi_m * k * rb.cp - dchi_m * rb.c) / wronskian;
    double cb = (dchi_m * rb.s - chi_m * k * rb.sp) / wronskian;

    double amplitude = std::hypot(ca, cb);
    if (!(amplitude > 0.0) || !std::isfinite(amplitude)) {
        throw ConvergenceError("solve_continuum: degenerate asymptotic fit");
    }

    ContinuumState state;
    state.energy = energy;
    state.l = l;
    state.asymptotic_k = k;
    state.matching_radius = rm;
    state.phase_shift = std::atan2(cb, ca);

    double target = std::sqrt(2.0 * mu / (kPi * k));
    double scale = target / amplitude;
    state.wavefunction.grid = grid;
    state.wavefunction.energy = energy;
    state.wavefunction.l = l;
    state.wavefunction.norm = RadialFunction::Norm::EnergyDelta;
    state.wavefunction.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) state.wavefunction.values[i] = chi[i] * scale;
    return state;
}

ContinuumState solve_continuum(double energy, int l, const PotentialParams& params,
                               const RadialGrid& grid, std::optional<double> match_r) {
    return solve_continuum(
        energy, l, [&params](double r) { return sigma_u_potential(r, params); }, params,
        grid, match_r);
}

double energy_normalization_check(const ContinuumState& a, const ContinuumState& b) {
    if (!(a.wavefunction.grid == b.wavefunction.grid)) {
        throw InvariantError("energy_normalization_check: states on different grids");
    }
    std::vector<double> prod(a.wavefunction.values.size());
    for (std::size_t i = 0; i < prod.size(); ++i) {
        prod[i] = a.wavefunction.values[i] * b.wavefunction.values[i];
    }
    return integrate(prod, a.wavefunction.grid.dr);
}

}  // namespace scatter
