#include "scatter/morse.hpp"

#include <cmath>

#include "scatter/errors.hpp"
#include "scatter/special.hpp"

namespace scatter {

double morse_level_energy(const PotentialParams& p, int nu) {
    double lam = p.lambda();
    double x = 1.0 - (nu + 0.5) / lam;
    return -p.d * x * x;
}

int morse_level_count(const PotentialParams& p) {
    double lam = p.lambda();
    if (lam <= 0.5) return 0;
    // levels with nu + 1/2 < lambda, i.e. before the formula turns over
    return static_cast<int>(std::floor(lam - 0.5)) + 1;
}

std::vector<BoundLevel> morse_levels(const PotentialParams& p, const RadialGrid& grid) {
    p.validate();
    int count = morse_level_count(p);
    if (count < 1) {
        throw ConfigError("Morse parameters support no bound level");
    }
    double lam = p.lambda();
    std::vector<BoundLevel> levels;
    levels.reserve(count);
    for (int nu = 0; nu < count; ++nu) {
        double s = lam - nu - 0.5;
        double a = 2.0 * s;  // Laguerre order 2*lambda - 2*nu - 1
        double ln_norm = 0.5 * (std::log(p.alpha) + std::lgamma(nu + 1.0) +
                                std::log(a) - std::lgamma(2.0 * lam - nu));
        double sign = (nu % 2 == 0) ? 1.0 : -1.0;  // inner lobe positive

        BoundLevel lvl;
        lvl.nu = nu;
        lvl.energy = morse_level_energy(p, nu);
        lvl.wavefunction.grid = grid;
        lvl.wavefunction.energy = lvl.energy;
        lvl.wavefunction.l = 0;
        lvl.wavefunction.norm = RadialFunction::Norm::Unit;
        lvl.wavefunction.values.resize(grid.n);
        for (std::size_t i = 0; i < grid.n; ++i) {
            double z = 2.0 * lam * std::exp(-p.alpha * (grid.r(i) - p.r_e));
            double expo = ln_norm + s * std::log(z) - 0.5 * z;
            double env = expo < -700.0 ? 0.0 : std::exp(expo);
            lvl.wavefunction.values[i] = sign * env * assoc_laguerre(nu, a, z);
        }
        levels.push_back(std::move(lvl));
    }
    return levels;
}

double bound_expectation_R(const BoundLevel& level) {
    const auto& wf = level.wavefunction;
    std::vector<double> dens(wf.values.size());
    for (std::size_t i = 0; i < dens.size(); ++i) dens[i] = wf.values[i] * wf.values[i];
    double norm = integrate(dens, wf.grid.dr);
    if (std::abs(norm - 1.0) > 1e-6) {
        throw InvariantError("bound_expectation_R: wavefunction not unit-normalized");
    }
    for (std::size_t i = 0; i < dens.size(); ++i) dens[i] *= wf.grid.r(i);
    return integrate(dens, wf.grid.dr) / norm;
}

}  // namespace scatter
