#include "scatter/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>

#include "scatter/constants.hpp"
#include "scatter/cross_sections.hpp"
#include "scatter/errors.hpp"
#include "scatter/output.hpp"
#include "scatter/timing.hpp"

namespace scatter {

namespace {

PotentialParams params_from(const Config& c) {
    PotentialParams p;
    p.d = c.get_double("morse.D");
    p.alpha = c.get_double("morse.alpha");
    p.r_e = c.get_double("morse.Re");
    p.m_p = c.get_double("masses.mp");
    p.validate();
    return p;
}

RadialGrid grid_from(const Config& c) {
    return RadialGrid(c.get_double("grid.Rmin"), c.get_double("grid.Rmax"),
                      c.get_double("grid.dR"));
}

std::vector<double> e_grid_from(const Config& c) {
    double lo = c.get_double("spectrum.Emin");
    double hi = c.get_double("spectrum.Emax");
    int n = c.get_int("spectrum.nE");
    std::vector<double> grid(n);
    if (c.get_string("spectrum.grid") == "log") {
        double llo = std::log(lo), lhi = std::log(hi);
        for (int i = 0; i < n; ++i) grid[i] = std::exp(llo + (lhi - llo) * i / (n - 1.0));
    } else {
        for (int i = 0; i < n; ++i) grid[i] = lo + (hi - lo) * i / (n - 1.0);
    }
    return grid;
}

EngineConfig engine_config_from(const Config& c, int threads) {
    EngineConfig ec;
    ec.e_grid = e_grid_from(c);
    ec.l_max = c.get_int("quad.Lmax");
    ec.l_auto_extend = c.get_bool("quad.L_auto_extend");
    ec.theta_nodes = c.get_int("quad.theta_nodes");
    ec.angular_mode = c.get_string("quad.theta_mode") == "cos" ? AngularMode::CosTheta
                                                               : AngularMode::LogKtilde;
    ec.hermite_nodes = c.get_int("quad.hermite_nodes");
    ec.interpolate = c.get_bool("engine.interpolate");
    ec.kt_nodes = c.get_int("engine.kt_nodes");
    ec.threads = threads;
    return ec;
}

std::vector<double> phi_grid_from(const Config& c) {
    int n = c.get_int("scan.phi_nodes");
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = 2.0 * kPi * i / n;
    return grid;
}

PacketSpec packet_from(const Config& c, double phi) {
    PacketSpec ps;
    ps.nu_coeffs = {{0, {std::sqrt(0.5), 0.0}}, {1, std::polar(std::sqrt(0.5), phi)}};
    ps.p0 = c.get_double("packet.p0");
    ps.dp = c.get_double("packet.dp");
    ps.P0 = c.get_double("packet.P0");
    ps.dP = c.get_double("packet.dP");
    ps.tau_d = c.get_double("packet.tau_d");
    return ps;
}

std::string join_path(const std::string& dir, const std::string& file) {
    return (std::filesystem::path(dir) / file).string();
}

void maybe_write_json(const Config& c, const std::string& format, Manifest& manifest,
                      const std::string& dir, const std::string& stem,
                      const std::string& x_name, const SpectrumCurve& curve) {
    (void)c;
    if (format == "json") {
        std::string path = join_path(dir, stem + ".json");
        write_curve_json(path, x_name, "values", curve);
        manifest.record(path);
    }
}

void run_bound(const Config& c, const std::string& dir, const std::string& format,
               Manifest& manifest) {
    auto params = params_from(c);
    auto levels = morse_levels(params, grid_from(c));
    std::vector<std::vector<double>> rows;
    for (const auto& lvl : levels) {
        rows.push_back({static_cast<double>(lvl.nu), lvl.energy, bound_expectation_R(lvl)});
    }
    std::string path = join_path(dir, "bound_levels.csv");
    write_csv(path, "nu,E,expect_R", rows);
    manifest.record(path);
    double tau = 2.0 * kPi / (levels[1].energy - levels[0].energy) * kAuTimeFs;
    manifest.note("levels", std::to_string(levels.size()));
    manifest.note("tau_vib_fs", format_number(tau));
    (void)format;
}

void run_continuum(const Config& c, const std::string& dir, const std::string& format,
                   Manifest& manifest, int threads) {
    auto params = params_from(c);
    auto grid = grid_from(c);
    auto e_grid = e_grid_from(c);
    int l_max = c.get_int("quad.Lmax");
    std::vector<std::vector<double>> rows;
    for (int l = 1; l <= l_max; l += 2) {
        for (double e : e_grid) {
            ContinuumState st = solve_continuum(e, l, params, grid);
            rows.push_back({e, static_cast<double>(l), st.phase_shift, st.asymptotic_k,
                            st.matching_radius});
        }
    }
    std::string path = join_path(dir, "continuum_phase_shifts.csv");
    write_csv(path, "E,L,delta,k,match_R", rows);
    manifest.record(path);
    (void)format;
    (void)threads;
}

void run_fig1(const Config& c, const std::string& dir, const std::string& format,
              Manifest& manifest, int threads) {
    auto params = params_from(c);
    auto grid = grid_from(c);
    CrossSectionEngine engine(params, grid, engine_config_from(c, threads));
    const auto& levels = engine.levels();

    int nu1 = c.get_int("state.nu1");
    int nu2 = c.get_int("state.nu2");
    double p1 = c.get_double("state.p1");
    double P1 = c.get_double("state.P1");
    double c1 = c.get_double("state.C1");
    double c2 = c.get_double("state.C2");

    CmMomenta cm1 = lab_to_cm(p1, P1, params.m_ion());
    LabState partner = solve_entangled_partner({p1, P1, nu1, levels.at(nu1).energy}, nu2,
                                               levels.at(nu2).energy, params.m_ion());
    CmMomenta cm2 = lab_to_cm(partner.p, partner.P, params.m_ion());

    SpectrumCurve s1 = engine.single_state_spectrum(nu1, cm1.k);
    SpectrumCurve s2 = engine.single_state_spectrum(nu2, cm2.k);

    auto builder = [&](double phi) {
        return build_two_state(levels, nu1, nu2, p1, P1, phi, c1, c2, params);
    };
    PhiScanResult scan = engine.phi_scan(builder, phi_grid_from(c));

    SpectrumCurve sp0 = engine.superposition_spectrum(builder(0.0));
    SpectrumCurve sppi = engine.superposition_spectrum(builder(kPi));

    std::vector<std::vector<double>> scan_rows;
    for (std::size_t i = 0; i < scan.curve.grid.size(); ++i) {
        scan_rows.push_back({scan.curve.grid[i], scan.curve.values[i]});
    }
    std::string scan_path = join_path(dir, "fig1a_phi_scan.csv");
    write_csv(scan_path, "phi,sigma", scan_rows);
    manifest.record(scan_path);

    std::vector<std::vector<double>> spec_rows;
    for (std::size_t i = 0; i < s1.grid.size(); ++i) {
        spec_rows.push_back(
            {s1.grid[i], s1.values[i], s2.values[i], sp0.values[i], sppi.values[i]});
    }
    std::string spec_path = join_path(dir, "fig1bc_spectra.csv");
    write_csv(spec_path,
              "E,dsigma_dE_nu" + std::to_string(nu1) + ",dsigma_dE_nu" + std::to_string(nu2) +
                  ",dsigma_dE_phi0,dsigma_dE_phi_pi",
              spec_rows);
    manifest.record(spec_path);

    manifest.note_curve("single_nu" + std::to_string(nu1), s1);
    manifest.note_curve("single_nu" + std::to_string(nu2), s2);
    manifest.note_curve("phi0", sp0);
    manifest.note_curve("phi_pi", sppi);
    manifest.note("fit.mean", format_number(scan.fit.mean));
    manifest.note("fit.amplitude", format_number(scan.fit.amplitude));
    manifest.note("fit.phase", format_number(scan.fit.phase));
    manifest.note("fit.residual_rel", format_number(scan.fit.residual));
    manifest.note("control_depth", format_number(CrossSectionEngine::control_depth(scan.curve)));
    maybe_write_json(c, format, manifest, dir, "fig1a_phi_scan", "phi", scan.curve);
    maybe_write_json(c, format, manifest, dir, "fig1b_single_nu" + std::to_string(nu1), "E", s1);
    maybe_write_json(c, format, manifest, dir, "fig1b_single_nu" + std::to_string(nu2), "E", s2);
    maybe_write_json(c, format, manifest, dir, "fig1c_phi0", "E", sp0);
    maybe_write_json(c, format, manifest, dir, "fig1c_phi_pi", "E", sppi);
}

void run_fig2(const Config& c, const std::string& dir, const std::string& format,
              Manifest& manifest) {
    auto params = params_from(c);
    auto grid = grid_from(c);
    auto levels = morse_levels(params, grid);

    int nu1 = c.get_int("state.nu1");
    int nu2 = c.get_int("state.nu2");
    double p1 = c.get_double("state.p1");
    double P1 = c.get_double("state.P1");
    double c1 = c.get_double("state.C1");
    double c2 = c.get_double("state.C2");

    double r_lo = c.get_double("map.Rmin"), r_hi = c.get_double("map.Rmax");
    auto nr = static_cast<std::size_t>(c.get_int("map.nR"));
    double x_max = c.get_double("map.xmax");
    auto nx = static_cast<std::size_t>(c.get_int("map.nx"));

    struct Case {
        std::string name;
        SuperpositionState state;
    };
    std::vector<Case> cases;
    cases.push_back({"phi0", build_two_state(levels, nu1, nu2, p1, P1, 0.0, c1, c2, params)});
    cases.push_back({"phi_pi", build_two_state(levels, nu1, nu2, p1, P1, kPi, c1, c2, params)});
    cases.push_back({"psi_max",
                     build_envelope_state(levels, c.get_int("envelope.max_center"),
                                          c.get_double("envelope.max_width"), true,
                                          c.get_double("envelope.k0"), params)});
    cases.push_back({"psi_min",
                     build_envelope_state(levels, c.get_int("envelope.min_center"),
                                          c.get_double("envelope.min_width"), false,
                                          c.get_double("envelope.k0"), params)});

    std::vector<std::vector<double>> slice_rows(levels.front().wavefunction.grid.n);
    for (std::size_t i = 0; i < slice_rows.size(); ++i) {
        slice_rows[i].push_back(levels.front().wavefunction.grid.r(i));
    }
    for (const auto& cs : cases) {
        DensityMap map =
            density_map(cs.state, levels, r_lo, r_hi, nr, -x_max, x_max, nx, params);
        std::string path = join_path(dir, "fig2_map_" + cs.name + ".csv");
        if (format == "json") {
            path = join_path(dir, "fig2_map_" + cs.name + ".json");
            write_density_map_json(path, map);
        } else {
            write_density_map_csv(path, map);
        }
        manifest.record(path);

        ContactSlice slice = contact_slice(cs.state, levels);
        manifest.note("expect_R." + cs.name, format_number(slice.expectation_r));
        for (std::size_t i = 0; i < slice_rows.size(); ++i) {
            slice_rows[i].push_back(std::norm(slice.psi[i]));
        }
    }
    std::string slice_path = join_path(dir, "fig2_slices.csv");
    write_csv(slice_path, "R,psi2_phi0,psi2_phi_pi,psi2_max,psi2_min", slice_rows);
    manifest.record(slice_path);

    manifest.note("expect_R.nu0", format_number(bound_expectation_R(levels.front())));
    manifest.note("expect_R.top", format_number(bound_expectation_R(levels.back())));
}

void run_fig3b(const Config& c, const std::string& dir, const std::string& format,
               Manifest& manifest, int threads) {
    auto params = params_from(c);
    auto grid = grid_from(c);
    CrossSectionEngine engine(params, grid, engine_config_from(c, threads));

    PacketSpec ps = packet_from(c, 0.0);
    GaussianPacket1D electron{1.0, ps.p0, ps.dp, ps.tau_d, 0.0};
    GaussianPacket1D ion{params.m_ion(), ps.P0, ps.dP, 0.0, 0.0};
    TimeGridSpec tspec{static_cast<std::size_t>(c.get_int("timing.points")),
                       c.get_double("timing.width_factor")};
    CollisionProfile profile = collision_probability(electron, ion, tspec);

    std::vector<std::vector<double>> wc_rows(profile.t_grid.size());
    for (std::size_t i = 0; i < profile.t_grid.size(); ++i) {
        wc_rows[i] = {profile.t_grid[i], profile.wc[i]};
    }
    std::string wc_path = join_path(dir, "fig3b_wc_profile.csv");
    write_csv(wc_path, "t,Wc", wc_rows);
    manifest.record(wc_path);
    manifest.note("dWc_fs", format_number(profile.dwc_fs));

    auto builder = [&](double phi) {
        PacketSpec spec = packet_from(c, phi);
        return build_packet_state(spec.nu_coeffs, spec.p0, spec.dp, spec.P0, spec.dP,
                                  spec.tau_d);
    };
    PhiScanResult scan = engine.phi_scan(builder, phi_grid_from(c));
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < scan.curve.grid.size(); ++i) {
        rows.push_back({scan.curve.grid[i], scan.curve.values[i]});
    }
    std::string scan_path = join_path(dir, "fig3b_phi_scan.csv");
    write_csv(scan_path, "phi,sigma", rows);
    manifest.record(scan_path);
    manifest.note("control_depth", format_number(CrossSectionEngine::control_depth(scan.curve)));
    manifest.note("fit.residual_rel", format_number(scan.fit.residual));
    maybe_write_json(c, format, manifest, dir, "fig3b_phi_scan", "phi", scan.curve);
}

void run_fig3c(const Config& c, const std::string& dir, const std::string& format,
               Manifest& manifest, int threads) {
    auto params = params_from(c);
    auto grid = grid_from(c);
    CrossSectionEngine engine(params, grid, engine_config_from(c, threads));
    auto phi_grid = phi_grid_from(c);

    PacketSpec base = packet_from(c, 0.0);
    GaussianPacket1D electron{1.0, base.p0, base.dp, base.tau_d, 0.0};
    GaussianPacket1D ion{params.m_ion(), base.P0, base.dP, 0.0, 0.0};

    auto depth_for = [&](const GaussianPacket1D& e_packet) {
        auto builder = [&](double phi) {
            PacketSpec spec = packet_from(c, phi);
            spec.dp = e_packet.dp;
            spec.tau_d = e_packet.tau_d;
            return build_packet_state(spec.nu_coeffs, spec.p0, spec.dp, spec.P0, spec.dP,
                                      spec.tau_d);
        };
        return CrossSectionEngine::control_depth(engine.phi_scan(builder, phi_grid).curve);
    };

    std::vector<double> targets = c.get_list("sweep.targets_fs");
    std::string methods = c.get_string("sweep.methods");
    std::vector<SweepPoint> points;
    if (methods == "both" || methods == "shrink_dp") {
        auto pts = duration_sweep(SweepMethod::ShrinkDp, targets, electron, ion, depth_for);
        points.insert(points.end(), pts.begin(), pts.end());
    }
    if (methods == "both" || methods == "offset_focus") {
        auto pts = duration_sweep(SweepMethod::OffsetFocus, targets, electron, ion, depth_for);
        points.insert(points.end(), pts.begin(), pts.end());
    }

    std::string path = join_path(dir, "fig3c_sweep.csv");
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    out << "dWc,depth,method\n";
    for (const auto& pt : points) {
        out << format_number(pt.achieved_dwc_fs) << ',' << format_number(pt.depth) << ','
            << (pt.method == SweepMethod::ShrinkDp ? "shrink_dp" : "offset_focus") << '\n';
    }
    out.close();
    manifest.record(path);
    for (const auto& pt : points) {
        manifest.note(std::string("sweep.") +
                          (pt.method == SweepMethod::ShrinkDp ? "shrink_dp" : "offset_focus") +
                          "." + format_number(pt.target_dwc_fs),
                      "dWc=" + format_number(pt.achieved_dwc_fs) +
                          " depth=" + format_number(pt.depth) +
                          " param=" + format_number(pt.parameter));
    }
    (void)format;
}

void run_thermal(const Config& c, const std::string& dir, const std::string& format,
                 Manifest& manifest, int threads) {
    auto params = params_from(c);
    auto grid = grid_from(c);
    CrossSectionEngine engine(params, grid, engine_config_from(c, threads));
    const auto& levels = engine.levels();
    CmMomenta cm = lab_to_cm(c.get_double("state.p1"), c.get_double("state.P1"),
                             params.m_ion());

    std::vector<std::vector<double>> rows;
    for (double kt : c.get_list("thermal.kT")) {
        if (!(kt > 0.0)) throw ConfigError("thermal.kT entries must be > 0");
        std::vector<IncoherentTerm> terms;
        for (const auto& lvl : levels) {
            terms.push_back({lvl.nu, cm.k, std::exp(-(lvl.energy - levels[0].energy) / kt)});
        }
        rows.push_back({kt, engine.incoherent_sigma(terms)});
    }
    std::string path = join_path(dir, "thermal.csv");
    write_csv(path, "kT,sigma", rows);
    manifest.record(path);
    (void)format;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
    static const std::vector<std::string> names = {"bound",  "continuum", "fig1",    "fig2",
                                                   "fig3b",  "fig3c",     "thermal", "custom"};
    return names;
}

void run_scenario(const std::string& name, const Config& config, const std::string& outdir,
                  int threads, const std::string& format) {
    if (std::find(scenario_names().begin(), scenario_names().end(), name) ==
        scenario_names().end()) {
        throw ConfigError("unknown scenario: " + name);
    }
    auto issues = config.validate();
    if (!issues.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& s : issues) msg += "\n  " + s;
        throw ConfigError(msg);
    }
    if (format != "csv" && format != "json") {
        throw ConfigError("format must be csv or json");
    }
    std::error_code ec;
    std::filesystem::create_directories(outdir, ec);
    if (ec) throw IoError("cannot create output directory " + outdir);

    Manifest manifest;
    manifest.note("scenario", name);
    if (name == "bound") {
        run_bound(config, outdir, format, manifest);
    } else if (name == "continuum") {
        run_continuum(config, outdir, format, manifest, threads);
    } else if (name == "fig1" || name == "custom") {
        run_fig1(config, outdir, format, manifest, threads);
    } else if (name == "fig2") {
        run_fig2(config, outdir, format, manifest);
    } else if (name == "fig3b") {
        run_fig3b(config, outdir, format, manifest, threads);
    } else if (name == "fig3c") {
        run_fig3c(config, outdir, format, manifest, threads);
    } else if (name == "thermal") {
        run_thermal(config, outdir, format, manifest, threads);
    }
    manifest.write(join_path(outdir, "manifest.json"), config);
}

std::vector<std::string> validate_scenario(const std::string& name, const Config& config) {
    std::vector<std::string> issues = config.validate();
    if (std::find(scenario_names().begin(), scenario_names().end(), name) ==
        scenario_names().end()) {
        issues.push_back("unknown scenario: " + name);
        return issues;
    }
    if (!issues.empty()) return issues;

    // kinematic pre-flight, no heavy computation
    try {
        auto params = params_from(config);
        if (morse_level_count(params) < 1) {
            issues.push_back("Morse parameters support no bound level");
        }
        auto grid = grid_from(config);
        (void)grid;
        if (name == "fig1" || name == "fig2" || name == "custom") {
            auto levels_needed = std::max(config.get_int("state.nu1"), config.get_int("state.nu2"));
            if (levels_needed >= morse_level_count(params)) {
                issues.push_back("state.nu1/nu2 outside the bound spectrum");
            } else {
                double e1 = morse_level_energy(params, config.get_int("state.nu1"));
                double e2 = morse_level_energy(params, config.get_int("state.nu2"));
                LabState c1{config.get_double("state.p1"), config.get_double("state.P1"),
                            config.get_int("state.nu1"), e1};
                try {
                    solve_entangled_partner(c1, config.get_int("state.nu2"), e2,
                                            params.m_ion());
                } catch (const InfeasibleStateError& e) {
                    issues.push_back(e.what());
                }
                double w1 = config.get_double("state.C1");
                double w2 = config.get_double("state.C2");
                if (std::abs(w1 * w1 + w2 * w2 - 1.0) > 1e-9) {
                    issues.push_back("state.C1^2 + state.C2^2 must equal 1");
                }
            }
        }
        if (name == "fig2") {
            double k0 = config.get_double("envelope.k0");
            double e0 = morse_level_energy(params, 0);
            int closed = 0;
            for (int nu = 0; nu < morse_level_count(params); ++nu) {
                if (!outgoing_momentum(k0, e0, morse_level_energy(params, nu), params.m_rel())) {
                    ++closed;
                }
            }
            if (closed == morse_level_count(params)) {
                issues.push_back("envelope.k0 leaves every component closed");
            }
        }
        if (name == "fig1" || name == "fig3b" || name == "fig3c" || name == "thermal" ||
            name == "custom") {
            double e_rel_min = 0.0;
            if (name == "fig3b" || name == "fig3c") {
                CmMomenta cm = lab_to_cm(config.get_double("packet.p0"),
                                         config.get_double("packet.P0"), params.m_ion());
                e_rel_min = cm.k * cm.k / (2.0 * params.m_rel()) + morse_level_energy(params, 0);
            } else {
                CmMomenta cm = lab_to_cm(config.get_double("state.p1"),
                                         config.get_double("state.P1"), params.m_ion());
                e_rel_min = cm.k * cm.k / (2.0 * params.m_rel()) + morse_level_energy(params, 0);
            }
            if (config.get_double("spectrum.Emin") >= e_rel_min) {
                issues.push_back("spectrum grid lies entirely above the open channel");
            }
        }
    } catch (const std::exception& e) {
        issues.push_back(e.what());
    }
    return issues;
}

}  // namespace scatter
