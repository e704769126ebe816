#pragma once

#include <string>
#include <vector>

#include "scatter/config.hpp"

namespace scatter {

/// Named computations dispatched by the CLI.
///   bound      bound spectrum table
///   continuum  phase shifts / normalization diagnostics over (E, L)
///   fig1       two-state entangled control: phi scan + proton spectra
///   fig2       configuration density maps P(R, x) and x = 0 slices
///   fig3b      wave-packet scenario: collision profile + phi scan
///   fig3c      control depth vs collision duration sweep
///   thermal    Boltzmann-averaged cross section vs temperature
///   custom     two-state scenario fully driven by state.* keys
const std::vector<std::string>& scenario_names();

/// Runs one scenario, writing datasets plus manifest.json into `outdir`.
/// `format` is "csv" or "json" (json adds per-curve JSON datasets with
/// convergence metadata alongside the CSVs).
void run_scenario(const std::string& name, const Config& config, const std::string& outdir,
                  int threads, const std::string& format);

/// Schema check plus kinematic feasibility pre-flight; returns
/// diagnostics, empty when the scenario can run.  No heavy computation.
std::vector<std::string> validate_scenario(const std::string& name, const Config& config);

}  // namespace scatter
