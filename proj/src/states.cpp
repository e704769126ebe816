#include "scatter/states.hpp"

#include <cmath>
#include <stdexcept>

#include "scatter/errors.hpp"

namespace scatter {

namespace {

const BoundLevel& level_at(const std::vector<BoundLevel>& levels, int nu) {
    if (nu < 0 || static_cast<std::size_t>(nu) >= levels.size()) {
        throw ConfigError("vibrational label nu = " + std::to_string(nu) +
                          " outside the bound spectrum (0.." +
                          std::to_string(levels.size() - 1) + ")");
    }
    return levels[static_cast<std::size_t>(nu)];
}

}  // namespace

SuperpositionState build_two_state(const std::vector<BoundLevel>& levels, int nu1, int nu2,
                                   double p1, double P1, double phi, double c1, double c2,
                                   const PotentialParams& params) {
    if (std::abs(c1 * c1 + c2 * c2 - 1.0) > 1e-9) {
        throw ConfigError("build_two_state: require C1^2 + C2^2 = 1");
    }
    const BoundLevel& l1 = level_at(levels, nu1);
    const BoundLevel& l2 = level_at(levels, nu2);
    const double m_ion = params.m_ion();

    SuperpositionState state;
    state.kind = StateKind::EntangledDiscrete;

    std::complex<double> phase = std::polar(1.0, phi);
    if (nu1 == nu2) {
        // degenerate collapse onto a single basis state
        CmMomenta cm = lab_to_cm(p1, P1, m_ion);
        state.components.push_back({nu1, l1.energy, cm.k, cm.K, c1 + c2 * phase});
        return state;
    }

    LabState first{p1, P1, nu1, l1.energy};
    LabState second = solve_entangled_partner(first, nu2, l2.energy, m_ion);

    CmMomenta cm1 = lab_to_cm(first.p, first.P, m_ion);
    CmMomenta cm2 = lab_to_cm(second.p, second.P, m_ion);
    state.components.push_back({nu1, l1.energy, cm1.k, cm1.K, {c1, 0.0}});
    state.components.push_back({nu2, l2.energy, cm2.k, cm2.K, c2 * phase});
    return state;
}

SuperpositionState build_envelope_state(const std::vector<BoundLevel>& levels,
                                        double center_nu, double width_nu,
                                        bool alternate_sign, double k0,
                                        const PotentialParams& params) {
    if (!(width_nu > 0.0) || !(k0 > 0.0)) {
        throw ConfigError("build_envelope_state: require width > 0 and k0 > 0");
    }
    const double m_rel = params.m_rel();
    const double e0 = levels.front().energy;

    SuperpositionState state;
    state.kind = StateKind::EntangledDiscrete;
    double norm2 = 0.0;
    for (const BoundLevel& lvl : levels) {
        double x = (lvl.nu - center_nu) / width_nu;
        double g = std::exp(-x * x);
        if (alternate_sign && (lvl.nu % 2 == 1)) g = -g;
        auto k_nu = outgoing_momentum(k0, e0, lvl.energy, m_rel);
        if (!k_nu) {
            state.warnings.push_back("dropped closed component nu=" + std::to_string(lvl.nu));
            continue;
        }
        state.components.push_back({lvl.nu, lvl.energy, *k_nu, 0.0, {g, 0.0}});
        norm2 += g * g;
    }
    if (state.components.empty()) {
        throw InfeasibleStateError("build_envelope_state: every component is closed");
    }
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& comp : state.components) comp.coeff *= inv;
    return state;
}

SuperpositionState build_packet_state(std::vector<std::pair<int, std::complex<double>>> nu_coeffs,
                                      double p0, double dp, double P0, double dP,
                                      double tau_d) {
    if (!(dp > 0.0) || !(dP > 0.0)) {
        throw ConfigError("build_packet_state: require dp > 0 and dP > 0");
    }
    if (nu_coeffs.empty()) throw ConfigError("build_packet_state: empty nu coefficient list");
    double norm2 = 0.0;
    for (const auto& [nu, c] : nu_coeffs) norm2 += std::norm(c);
    if (!(norm2 > 0.0)) throw ConfigError("build_packet_state: zero-norm nu coefficients");
    double inv = 1.0 / std::sqrt(norm2);
    for (auto& [nu, c] : nu_coeffs) c *= inv;

    SuperpositionState state;
    state.kind = StateKind::ProductPacket;
    state.packet = PacketSpec{std::move(nu_coeffs), p0, dp, P0, dP, tau_d};
    return state;
}

DensityMap density_map(const SuperpositionState& state, const std::vector<BoundLevel>& levels,
                       double r_lo, double r_hi, std::size_t nr, double x_lo, double x_hi,
                       std::size_t nx, const PotentialParams& params) {
    DensityMap map;
    map.r_grid.resize(nr);
    map.x_grid.resize(nx);
    for (std::size_t i = 0; i < nr; ++i) {
        map.r_grid[i] = r_lo + (r_hi - r_lo) * static_cast<double>(i) / (nr - 1);
    }
    for (std::size_t j = 0; j < nx; ++j) {
        map.x_grid[j] = x_lo + (x_hi - x_lo) * static_cast<double>(j) / (nx - 1);
    }
    map.values.assign(nr * nx, 0.0);

    struct Term {
        const BoundLevel* level;
        double k;
        std::complex<double> coeff;
    };
    std::vector<Term> terms;
    double packet_width2 = 0.0;
    if (state.kind == StateKind::EntangledDiscrete) {
        for (const auto& comp : state.components) {
            terms.push_back({&level_at(levels, comp.nu), comp.k, comp.coeff});
        }
    } else {
        const PacketSpec& ps = *state.packet;
        CmMomenta cm = lab_to_cm(ps.p0, ps.P0, params.m_ion());
        for (const auto& [nu, c] : ps.nu_coeffs) {
            terms.push_back({&level_at(levels, nu), cm.k, c});
        }
        // relative-coordinate Gaussian at t = 0; amplitude k-width sa,
        // position density variance 1/(2 sa^2), defocused by tau_d
        double sa2 = 1.0 / (1.0 / (ps.dp * ps.dp) + 1.0 / (ps.dP * ps.dP));
        packet_width2 = 1.0 / (2.0 * sa2) + 0.5 * sa2 * ps.tau_d * ps.tau_d;
    }

    const double inv2pi = 1.0 / (2.0 * kPi);
    for (std::size_t i = 0; i < nr; ++i) {
        double r = map.r_grid[i];
        for (std::size_t j = 0; j < nx; ++j) {
            double x = map.x_grid[j];
            std::complex<double> amp{0.0, 0.0};
            for (const auto& t : terms) {
                const auto& wf = t.level->wavefunction;
                double chi = wf.values[wf.grid.index_at(r)];
                amp += t.coeff * chi * std::polar(1.0, t.k * x);
            }
            double val = std::norm(amp) * inv2pi;
            if (state.kind == StateKind::ProductPacket) {
                val *= std::exp(-x * x / (2.0 * packet_width2)) /
                       std::sqrt(2.0 * kPi * packet_width2) * (2.0 * kPi);
            }
            map.values[i * nx + j] = val;
        }
    }
    return map;
}

ContactSlice contact_slice(const SuperpositionState& state,
                           const std::vector<BoundLevel>& levels) {
    struct Term {
        const BoundLevel* level;
        std::complex<double> coeff;
    };
    std::vector<Term> terms;
    if (state.kind == StateKind::EntangledDiscrete) {
        for (const auto& comp : state.components) {
            terms.push_back({&level_at(levels, comp.nu), comp.coeff});
        }
    } else {
        for (const auto& [nu, c] : state.packet->nu_coeffs) {
            terms.push_back({&level_at(levels, nu), c});
        }
    }
    if (terms.empty()) throw InvariantError("contact_slice: empty state");

    const RadialGrid& grid = terms.front().level->wavefunction.grid;
    ContactSlice slice;
    slice.psi.assign(grid.n, {0.0, 0.0});
    for (const auto& t : terms) {
        for (std::size_t i = 0; i < grid.n; ++i) {
            slice.psi[i] += t.coeff * t.level->wavefunction.values[i];
        }
    }
    std::vector<double> dens(grid.n), r_dens(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        dens[i] = std::norm(slice.psi[i]);
        r_dens[i] = dens[i] * grid.r(i);
    }
    double norm = integrate(dens, grid.dr);
    if (norm < 1e-12) {
        throw InvariantError("contact_slice: zero-norm slice (fully destructive interference)");
    }
    slice.expectation_r = integrate(r_dens, grid.dr) / norm;
    return slice;
}

}  // namespace scatter
