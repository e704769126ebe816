#include "scatter/cross_sections.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scatter/born.hpp"
#include "scatter/errors.hpp"
#include "scatter/special.hpp"
#include "parallel.hpp"

namespace scatter {

namespace {

// (2 pi)^4 flux convention times the trivial 2 pi azimuthal integral
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kFluxPrefactor = kTwoPi * kTwoPi * kTwoPi * kTwoPi * kTwoPi;

}  // namespace

CrossSectionEngine::CrossSectionEngine(const PotentialParams& params, const RadialGrid& grid,
                                       EngineConfig config)
    : CrossSectionEngine(params, grid, std::move(config), AmplitudeFn{}) {}

CrossSectionEngine::CrossSectionEngine(const PotentialParams& params, const RadialGrid& grid,
                                       EngineConfig config, AmplitudeFn override_amplitude)
    : params_(params), grid_(grid), config_(std::move(config)),
      override_(std::move(override_amplitude)) {
    params_.validate();
    if (config_.e_grid.empty()) throw ConfigError("engine: empty fragment energy grid");
    if (!std::is_sorted(config_.e_grid.begin(), config_.e_grid.end()) ||
        config_.e_grid.front() <= 0.0) {
        throw ConfigError("engine: fragment energy grid must be positive and increasing");
    }
    if (config_.l_max % 2 == 0) throw ConfigError("engine: l_max must be odd (odd-L sum)");
    levels_ = morse_levels(params_, grid_);
    lcao_w_ = lcao_weight(grid_);
    support_.reserve(levels_.size());
    for (const auto& lvl : levels_) support_.push_back(support_window(lvl.wavefunction));
}

void CrossSectionEngine::ensure_continuum(int l_upto) {
    if (override_) return;  // injected amplitudes need no continuum states
    std::vector<double> vu(grid_.n);
    bool have_vu = false;
    for (int l = 1; l <= l_upto; l += 2) {
        if (continuum_.count(l)) continue;
        if (!have_vu) {
            for (std::size_t i = 0; i < grid_.n; ++i) {
                vu[i] = sigma_u_potential(grid_.r(i), params_);
            }
            have_vu = true;
        }
        auto potential = [this, &vu](double r) { return vu[grid_.index_at(r)]; };
        std::vector<ContinuumState> column(config_.e_grid.size());
        parallel_for(config_.e_grid.size(), config_.threads, [&](std::size_t ie) {
            column[ie] = solve_continuum(config_.e_grid[ie], l, potential, params_, grid_);
        });
        continuum_.emplace(l, std::move(column));
    }
}

void CrossSectionEngine::ensure_tables(const std::vector<int>& nus, int l_upto, double kt_lo,
                                       double kt_hi) {
    if (override_) return;
    // widen the span so nearby sweep points reuse the cached tables
    kt_lo *= 0.7;
    kt_hi *= 1.15;
    for (int nu : nus) {
        for (int l = 1; l <= l_upto; l += 2) {
            auto key = std::make_pair(nu, l);
            auto it = tables_.find(key);
            if (it != tables_.end()) {
                const KtTable& t = it->second;
                if (t.ln_lo <= std::log(kt_lo) &&
                    t.ln_lo + t.dln * (t.n - 1) >= std::log(kt_hi)) {
                    continue;
                }
                kt_lo = std::min(kt_lo, std::exp(t.ln_lo));
                kt_hi = std::max(kt_hi, std::exp(t.ln_lo + t.dln * (t.n - 1)));
                tables_.erase(it);  // rebuild over the union range
            }
            KtTable table;
            table.n = config_.kt_nodes;
            table.ln_lo = std::log(kt_lo);
            table.dln = (std::log(kt_hi) - table.ln_lo) / (table.n - 1);
            table.rows.assign(config_.e_grid.size(), std::vector<double>(table.n, 0.0));

            const auto& bound = levels_.at(nu).wavefunction;
            auto [i0, i1] = support_[nu];
            const auto& column = continuum_.at(l);
            parallel_for(config_.e_grid.size(), config_.threads, [&](std::size_t ie) {
                const auto& cont = column[ie].wavefunction;
                std::vector<double> prod(i1 - i0 + 1);
                for (std::size_t i = i0; i <= i1; ++i) {
                    prod[i - i0] = lcao_w_[i] * cont.values[i] * bound.values[i];
                }
                std::vector<double> integrand(prod.size());
                for (int ik = 0; ik < table.n; ++ik) {
                    double kt = std::exp(table.ln_lo + ik * table.dln);
                    for (std::size_t i = 0; i < prod.size(); ++i) {
                        integrand[i] =
                            prod[i] * spherical_bessel(l, 0.5 * kt * grid_.r(i0 + i));
                    }
                    table.rows[ie][ik] = integrate(integrand, grid_.dr);
                }
            });
            tables_.emplace(key, std::move(table));
        }
    }
}

double CrossSectionEngine::amplitude(int nu, int l, std::size_t ie, double kt,
                                     bool use_table) const {
    if (override_) return override_(nu, l, config_.e_grid[ie], kt);
    if (use_table) {
        auto it = tables_.find(std::make_pair(nu, l));
        if (it != tables_.end()) {
            const KtTable& t = it->second;
            double x = (std::log(kt) - t.ln_lo) / t.dln;
            if (x >= 1.0 && x <= t.n - 2.0) {
                // 4-point Lagrange in ln(k~)
                int j = std::min(static_cast<int>(x), t.n - 3);
                double u = x - j;
                const auto& row = t.rows[ie];
                double um1 = u + 1.0, up1 = u - 1.0, up2 = u - 2.0;
                double integral = -row[j - 1] * u * up1 * up2 / 6.0 +
                                  row[j] * um1 * up1 * up2 / 2.0 -
                                  row[j + 1] * um1 * u * up2 / 2.0 +
                                  row[j + 2] * um1 * u * up1 / 6.0;
                double kt2 = kt * kt;
                return 16.0 / (kPi * kPi) / (kt2 * (4.0 + kt2) * (4.0 + kt2)) * integral;
            }
        }
        // outside the table: fall through to the direct evaluation
    }
    const auto& bound = levels_.at(nu).wavefunction;
    auto [i0, i1] = support_[nu];
    return radial_integral(l, bound, continuum_.at(l)[ie].wavefunction, kt, lcao_w_, i0, i1);
}

CrossSectionEngine::Layout CrossSectionEngine::layout_discrete(
    const SuperpositionState& state) const {
    Layout layout;
    auto shells = enumerate_shells(state.components, params_);
    const double m_tot = params_.m_ion() + 1.0;
    for (const auto& shell : shells) {
        LayoutShell ls;
        ls.weight = shell.weight;
        ls.e_rel = shell.e_total - shell.K * shell.K / (2.0 * m_tot);
        for (const auto& m : shell.members) ls.members.push_back({m.nu, m.k, m.coeff});
        layout.shells.push_back(std::move(ls));
    }
    return layout;
}

CrossSectionEngine::Layout CrossSectionEngine::layout_packet(const PacketSpec& spec) const {
    Layout layout;
    const double m_ion = params_.m_ion();
    const double m_tot = m_ion + 1.0;
    const double m_rel = params_.m_rel();

    // anchor on the lowest populated level
    int nu0 = spec.nu_coeffs.front().first;
    for (const auto& [nu, c] : spec.nu_coeffs) nu0 = std::min(nu0, nu);
    const double e0 = levels_.at(nu0).energy;

    const double k_star = (m_ion * spec.p0 - spec.P0) / m_tot;
    double d_max = 0.0;
    for (const auto& [nu, c] : spec.nu_coeffs) {
        double arg = k_star * k_star - 2.0 * m_rel * (levels_.at(nu).energy - e0);
        if (arg > 0.0) d_max = std::max(d_max, k_star - std::sqrt(arg));
    }

    // GH node widths: the k width follows the product of the two Gaussian
    // amplitudes, inflated by the component displacement d_max
    const double s_base =
        1.0 / std::sqrt(2.0 * (1.0 / (spec.dp * spec.dp) + 1.0 / (spec.dP * spec.dP)));
    const double s_k = std::hypot(s_base, 0.5 * d_max);
    const double s_kk =
        1.0 / std::sqrt(2.0 * (1.0 / (m_tot * m_tot) / (spec.dp * spec.dp) +
                               (m_ion / m_tot) * (m_ion / m_tot) / (spec.dP * spec.dP)));
    const double k_center = k_star + 0.5 * d_max;
    const double k_cm_center = spec.p0 + spec.P0;

    int n_k = config_.hermite_nodes;
    if (d_max > 2.0 * s_base) {
        n_k = std::min(128, config_.hermite_nodes *
                                static_cast<int>(std::ceil(d_max / (2.0 * s_base))));
    }
    QuadratureRule hk = gauss_hermite(n_k);
    QuadratureRule hK = gauss_hermite(config_.hermite_nodes);

    const double x_d = spec.p0 * spec.tau_d;
    const double norm_pref = 1.0 / std::sqrt(spec.dp * std::sqrt(kPi)) /
                             std::sqrt(spec.dP * std::sqrt(kPi));

    for (int a = 0; a < n_k; ++a) {
        double k0 = k_center + std::sqrt(2.0) * s_k * hk.nodes[a];
        if (k0 <= 0.0) {
            ++layout.dropped;
            continue;
        }
        double e_rel = k0 * k0 / (2.0 * m_rel) + e0;
        for (int b = 0; b < config_.hermite_nodes; ++b) {
            double kk = k_cm_center + std::sqrt(2.0) * s_kk * hK.nodes[b];
            LayoutShell shell;
            shell.e_rel = e_rel;
            shell.weight = hk.weights[a] * hK.weights[b] * 2.0 * s_k * s_kk * (k0 / m_rel);
            double exp_lift = 0.5 * (hk.nodes[a] * hk.nodes[a] + hK.nodes[b] * hK.nodes[b]);
            for (const auto& [nu, c] : spec.nu_coeffs) {
                double arg = k0 * k0 - 2.0 * m_rel * (levels_.at(nu).energy - e0);
                if (arg <= 0.0) {
                    ++layout.dropped;
                    continue;
                }
                double kn = std::sqrt(arg);
                LabMomenta lab = cm_to_lab(kn, kk, m_ion);
                double dpp = (lab.p - spec.p0) / spec.dp;
                double dPP = (lab.P - spec.P0) / spec.dP;
                double lg = -0.5 * dpp * dpp - 0.5 * dPP * dPP + exp_lift;
                double phase = lab.p * x_d - 0.5 * lab.p * lab.p * spec.tau_d;
                LayoutMember member;
                member.nu = nu;
                member.k = kn;
                member.base = c * norm_pref * std::exp(lg) * std::polar(1.0, phase);
                shell.members.push_back(member);
            }
            if (!shell.members.empty()) layout.shells.push_back(std::move(shell));
        }
    }
    if (layout.dropped > 0) {
        layout.warnings.push_back("packet quadrature dropped " +
                                  std::to_string(layout.dropped) + " closed nodes");
    }
    if (layout.shells.empty()) {
        throw InfeasibleStateError("packet state: no open quadrature node");
    }
    return layout;
}

CrossSectionEngine::Layout CrossSectionEngine::make_layout(
    const SuperpositionState& state) const {
    if (state.kind == StateKind::ProductPacket) return layout_packet(*state.packet);
    return layout_discrete(state);
}

SpectrumCurve CrossSectionEngine::assemble(
    const Layout& layout, const std::string& scenario,
    const std::vector<std::vector<std::complex<double>>>* coeff_override, int forced_l) {
    const std::size_t ne = config_.e_grid.size();
    const double m_rel = params_.m_rel();
    const bool multi_shell = layout.shells.size() > 4;
    const bool use_table = config_.interpolate && multi_shell && !override_;

    std::vector<int> nus;
    double k_min = 1e300, k_max = 0.0;
    for (const auto& shell : layout.shells) {
        for (const auto& m : shell.members) {
            if (std::find(nus.begin(), nus.end(), m.nu) == nus.end()) nus.push_back(m.nu);
            k_min = std::min(k_min, m.k);
            k_max = std::max(k_max, m.k);
        }
    }
    std::sort(nus.begin(), nus.end());

    // k~ span over all shells and fragment energies
    double kf_hi = 0.0, kt_lo = 1e300;
    for (const auto& shell : layout.shells) {
        double kf2_top = 2.0 * m_rel * (shell.e_rel - config_.e_grid.front());
        if (kf2_top > 0.0) kf_hi = std::max(kf_hi, std::sqrt(kf2_top));
        for (const auto& m : shell.members) {
            for (double e : {config_.e_grid.front(), config_.e_grid.back()}) {
                double kf2 = 2.0 * m_rel * (shell.e_rel - e);
                if (kf2 <= 0.0) continue;
                kt_lo = std::min(kt_lo, std::abs(m.k - std::sqrt(kf2)));
            }
        }
    }
    double kt_hi = (k_max + kf_hi) * 1.02;
    kt_lo = std::max(kt_lo * 0.8, 1e-4);

    SpectrumCurve curve;
    curve.grid = config_.e_grid;
    curve.values.assign(ne, 0.0);
    curve.meta.scenario = scenario;
    curve.meta.shell_count = static_cast<int>(layout.shells.size());
    curve.meta.dropped_components = layout.dropped;
    curve.meta.warnings = layout.warnings;

    QuadratureRule gl = gauss_legendre(config_.theta_nodes);

    int l = 1;
    double total = 0.0;
    while (true) {
        ensure_continuum(l);
        if (use_table) ensure_tables(nus, l, kt_lo, kt_hi);
        requested_l_.push_back(l);

        std::vector<double> curve_l(ne, 0.0);
        parallel_for(ne, config_.threads, [&](std::size_t ie) {
            double e_frag = config_.e_grid[ie];
            double acc = 0.0;
            for (std::size_t is = 0; is < layout.shells.size(); ++is) {
                const auto& shell = layout.shells[is];
                double kf2 = 2.0 * m_rel * (shell.e_rel - e_frag);
                if (kf2 <= 1e-12) continue;
                double kf = std::sqrt(kf2);
                double kbar = 0.0;
                for (const auto& m : shell.members) kbar += m.k;
                kbar /= static_cast<double>(shell.members.size());

                double shell_acc = 0.0;
                for (int q = 0; q < config_.theta_nodes; ++q) {
                    double cth, wq;
                    if (config_.angular_mode == AngularMode::LogKtilde) {
                        double lo = std::log(std::max((kbar - kf) * (kbar - kf), 1e-28));
                        double hi = std::log((kbar + kf) * (kbar + kf));
                        double g = 0.5 * (hi + lo) + 0.5 * (hi - lo) * gl.nodes[q];
                        double kt2_bar = std::exp(g);
                        cth = (kbar * kbar + kf * kf - kt2_bar) / (2.0 * kbar * kf);
                        cth = std::clamp(cth, -1.0, 1.0);
                        wq = gl.weights[q] * 0.5 * (hi - lo) * kt2_bar / (2.0 * kbar * kf);
                    } else {
                        cth = gl.nodes[q];
                        wq = gl.weights[q];
                    }
                    std::complex<double> sum{0.0, 0.0};
                    for (std::size_t n = 0; n < shell.members.size(); ++n) {
                        const auto& m = shell.members[n];
                        double kt2 = m.k * m.k + kf2 - 2.0 * m.k * kf * cth;
                        double kt = std::sqrt(std::max(kt2, 1e-28));
                        double a = amplitude(m.nu, l, ie, kt, use_table) / m.k;
                        std::complex<double> c =
                            coeff_override ? (*coeff_override)[is][n] : m.base;
                        sum += c * a;
                    }
                    shell_acc += wq * std::norm(sum);
                }
                // energy-conservation Jacobian dE = (kf/m_rel) d|kf|
                acc += shell.weight * shell_acc * m_rel / kf;
            }
            curve_l[ie] = acc * (2.0 * l + 1.0) * kFluxPrefactor;
        });

        for (std::size_t ie = 0; ie < ne; ++ie) curve.values[ie] += curve_l[ie];
        double sigma_l = trapezoid(curve.grid, curve_l);
        curve.meta.l_values.push_back(l);
        curve.meta.sigma_per_l.push_back(sigma_l);
        total += sigma_l;

        if (forced_l > 0) {
            if (l >= forced_l) break;
            l += 2;
            continue;
        }
        bool tail_ok = total <= 0.0 || sigma_l <= config_.l_tail_fraction * total;
        if (l >= config_.l_max) {
            if (tail_ok) {
                curve.meta.l_converged = true;
                break;
            }
            if (!config_.l_auto_extend || l >= config_.l_hard_cap) {
                curve.meta.l_converged = false;
                curve.meta.warnings.push_back("last-L contribution above threshold");
                break;
            }
        }
        l += 2;
    }
    curve.meta.l_max_used = curve.meta.l_values.back();
    curve.meta.last_l_fraction = total > 0.0 ? curve.meta.sigma_per_l.back() / total : 0.0;
    curve.total = trapezoid(curve.grid, curve.values);
    return curve;
}

SpectrumCurve CrossSectionEngine::single_state_spectrum(int nu, double k_incident) {
    if (nu < 0 || static_cast<std::size_t>(nu) >= levels_.size()) {
        throw ConfigError("single_state_spectrum: nu outside bound spectrum");
    }
    Layout layout;
    LayoutShell shell;
    shell.e_rel = k_incident * k_incident / (2.0 * params_.m_rel()) + levels_[nu].energy;
    shell.members.push_back({nu, k_incident, {1.0, 0.0}});
    layout.shells.push_back(std::move(shell));
    return assemble(layout, "single nu=" + std::to_string(nu));
}

double CrossSectionEngine::single_state_sigma(int nu, double k_incident) {
    return single_state_spectrum(nu, k_incident).total;
}

double CrossSectionEngine::incoherent_sigma(const std::vector<IncoherentTerm>& terms) {
    if (terms.empty()) throw ConfigError("incoherent_sigma: empty weight list");
    double wsum = 0.0, acc = 0.0;
    for (const auto& t : terms) {
        if (t.weight < 0.0) throw ConfigError("incoherent_sigma: negative weight");
        if (t.weight == 0.0) continue;
        acc += t.weight * single_state_sigma(t.nu, t.k);
        wsum += t.weight;
    }
    if (wsum <= 0.0) throw ConfigError("incoherent_sigma: all weights zero");
    return acc / wsum;
}

SpectrumCurve CrossSectionEngine::superposition_spectrum(const SuperpositionState& state) {
    Layout layout = make_layout(state);
    return assemble(layout, state.kind == StateKind::ProductPacket ? "packet" : "discrete");
}

PhiScanResult CrossSectionEngine::phi_scan(
    const std::function<SuperpositionState(double)>& builder,
    const std::vector<double>& phi_grid) {
    if (phi_grid.size() < 4) throw ConfigError("phi_scan: need at least 4 phase nodes");

    SuperpositionState first = builder(phi_grid.front());
    Layout layout = make_layout(first);

    // Coefficient-only scans reuse the layout; a builder that moves the
    // kinematics falls back to full recomputation.
    bool coeff_only = true;
    std::vector<std::vector<std::vector<std::complex<double>>>> coeffs(phi_grid.size());
    for (std::size_t ip = 0; ip < phi_grid.size() && coeff_only; ++ip) {
        SuperpositionState st = builder(phi_grid[ip]);
        if (st.kind != first.kind) {
            coeff_only = false;
            break;
        }
        if (st.kind == StateKind::ProductPacket) {
            const PacketSpec& aa = *st.packet;
            const PacketSpec& bb = *first.packet;
            if (aa.p0 != bb.p0 || aa.dp != bb.dp || aa.P0 != bb.P0 || aa.dP != bb.dP ||
                aa.tau_d != bb.tau_d || aa.nu_coeffs.size() != bb.nu_coeffs.size()) {
                coeff_only = false;
                break;
            }
            // per-shell coefficients: base packet factor times the nu coefficient
            Layout lp = layout_packet(aa);
            if (lp.shells.size() != layout.shells.size()) {
                coeff_only = false;
                break;
            }
            coeffs[ip].resize(lp.shells.size());
            for (std::size_t is = 0; is < lp.shells.size(); ++is) {
                if (lp.shells[is].members.size() != layout.shells[is].members.size()) {
                    coeff_only = false;
                    break;
                }
                for (const auto& m : lp.shells[is].members) coeffs[ip][is].push_back(m.base);
            }
        } else {
            Layout lp = layout_discrete(st);
            if (lp.shells.size() != layout.shells.size()) {
                coeff_only = false;
                break;
            }
            coeffs[ip].resize(lp.shells.size());
            for (std::size_t is = 0; is < lp.shells.size(); ++is) {
                const auto& ms = lp.shells[is].members;
                const auto& m0 = layout.shells[is].members;
                if (ms.size() != m0.size()) {
                    coeff_only = false;
                    break;
                }
                for (std::size_t n = 0; n < ms.size(); ++n) {
                    if (ms[n].nu != m0[n].nu || std::abs(ms[n].k - m0[n].k) > 1e-12) {
                        coeff_only = false;
                        break;
                    }
                    coeffs[ip][is].push_back(ms[n].base);
                }
            }
        }
    }

    PhiScanResult result;
    result.curve.grid = phi_grid;
    result.curve.values.resize(phi_grid.size());

    if (coeff_only) {
        // assemble per phi against the shared layout (amplitude tables and
        // continuum states are engine-cached, so repeats are cheap); the
        // first pass fixes the partial-wave set for the whole scan
        int l_used = 0;
        for (std::size_t ip = 0; ip < phi_grid.size(); ++ip) {
            SpectrumCurve sc = assemble(layout, "phi scan", &coeffs[ip], l_used);
            result.curve.values[ip] = sc.total;
            if (ip == 0) {
                result.curve.meta = sc.meta;
                l_used = sc.meta.l_max_used;
            }
        }
    } else {
        for (std::size_t ip = 0; ip < phi_grid.size(); ++ip) {
            SpectrumCurve sc = superposition_spectrum(builder(phi_grid[ip]));
            result.curve.values[ip] = sc.total;
            if (ip == 0) result.curve.meta = sc.meta;
        }
    }
    result.curve.meta.scenario = "phi_scan";
    result.curve.total =
        *std::max_element(result.curve.values.begin(), result.curve.values.end());
    result.fit = fit_cosine(phi_grid, result.curve.values);
    return result;
}

double CrossSectionEngine::control_depth(const SpectrumCurve& sigma_vs_phi) {
    auto [mn, mx] =
        std::minmax_element(sigma_vs_phi.values.begin(), sigma_vs_phi.values.end());
    double lo = *mn, hi = *mx;
    if (!(hi + lo > 0.0)) throw ConvergenceError("control_depth: degenerate zero curve");
    return (hi - lo) / (hi + lo);
}

CosineFit fit_cosine(const std::vector<double>& phi, const std::vector<double>& sigma) {
    const std::size_t n = phi.size();
    CosineFit fit;
    double mean = 0.0, c1 = 0.0, s1 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += sigma[i];
        c1 += sigma[i] * std::cos(phi[i]);
        s1 += sigma[i] * std::sin(phi[i]);
    }
    mean /= static_cast<double>(n);
    c1 *= 2.0 / static_cast<double>(n);
    s1 *= 2.0 / static_cast<double>(n);
    fit.mean = mean;
    fit.amplitude = std::hypot(c1, s1);
    fit.phase = std::atan2(-s1, c1);
    double rms = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double model = mean + fit.amplitude * std::cos(phi[i] + fit.phase);
        rms += (sigma[i] - model) * (sigma[i] - model);
    }
    rms = std::sqrt(rms / static_cast<double>(n));
    fit.residual = fit.amplitude > 0.0 ? rms / fit.amplitude : rms;
    return fit;
}

}  // namespace scatter
