#pragma once

#include <complex>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "scatter/continuum.hpp"
#include "scatter/morse.hpp"
#include "scatter/states.hpp"

namespace scatter {

enum class AngularMode {
    CosTheta,   // Gauss-Legendre nodes directly in cos(theta)
    LogKtilde,  // same integral, nodes log-spaced in k~^2 (resolves the
                // forward 1/k~^2 peak of the L = 1 amplitude)
};

struct EngineConfig {
    std::vector<double> e_grid;  // fragment energies (hartree), increasing
    int l_max = 9;
    bool l_auto_extend = true;
    double l_tail_fraction = 0.01;  // warn/extend threshold on the last L
    int l_hard_cap = 25;
    int theta_nodes = 32;
    AngularMode angular_mode = AngularMode::LogKtilde;
    int hermite_nodes = 16;   // per Gaussian dimension (k and K)
    bool interpolate = true;  // k~ tables for multi-shell (packet) states
    int kt_nodes = 360;
    int threads = 1;
};

struct SpectrumMetadata {
    std::string scenario;
    int l_max_used = 0;
    double last_l_fraction = 0.0;
    bool l_converged = true;
    std::vector<int> l_values;
    std::vector<double> sigma_per_l;
    int shell_count = 0;
    int dropped_components = 0;
    std::vector<std::string> warnings;
};

/// Tabulated dsigma/dE (grid = E) or sigma(phi) (grid = phi), plus the
/// integrated/extremal summary and convergence metadata.
struct SpectrumCurve {
    std::vector<double> grid;
    std::vector<double> values;
    double total = 0.0;
    SpectrumMetadata meta;
};

struct CosineFit {
    double mean = 0.0;       // A
    double amplitude = 0.0;  // B >= 0
    double phase = 0.0;      // phi0 in A + B cos(phi + phi0)
    double residual = 0.0;   // rms misfit relative to B
};

struct PhiScanResult {
    SpectrumCurve curve;  // sigma vs phi
    CosineFit fit;
};

struct IncoherentTerm {
    int nu = 0;
    double k = 0.0;      // incident relative momentum
    double weight = 0.0;  // F >= 0
};

/// First-Born dissociation cross-section engine.  Geometry: incident
/// momenta collinear, outgoing electron direction integrated with the
/// configured angular rule; only odd L couples g -> u from J = 0.
/// Spectra carry the (2pi)^4 flux convention and the energy-conservation
/// Jacobian m_rel/|k_f|; absolute units are conventional, ratios and
/// modulation depths are the physical outputs.
class CrossSectionEngine {
  public:
    /// Overrides the Born radial amplitude R(L, nu, E, k~); used by tests
    /// to inject analytically known couplings.
    using AmplitudeFn = std::function<double(int nu, int l, double e_frag, double kt)>;

    CrossSectionEngine(const PotentialParams& params, const RadialGrid& grid,
                       EngineConfig config);
    CrossSectionEngine(const PotentialParams& params, const RadialGrid& grid,
                       EngineConfig config, AmplitudeFn override_amplitude);

    const std::vector<BoundLevel>& levels() const { return levels_; }
    const EngineConfig& config() const { return config_; }

    SpectrumCurve single_state_spectrum(int nu, double k_incident);
    double single_state_sigma(int nu, double k_incident);

    /// Weighted average of single-state totals (F >= 0, not all zero).
    double incoherent_sigma(const std::vector<IncoherentTerm>& terms);

    SpectrumCurve superposition_spectrum(const SuperpositionState& state);

    /// sigma(phi) for states produced by `builder`.  When the builder only
    /// changes coefficients (the usual case) amplitudes are assembled once
    /// and contracted per phi; otherwise each phi is recomputed in full.
    PhiScanResult phi_scan(const std::function<SuperpositionState(double)>& builder,
                           const std::vector<double>& phi_grid);

    /// (max - min)/(max + min); throws on a non-positive curve.
    static double control_depth(const SpectrumCurve& sigma_vs_phi);

    /// Every L requested from the amplitude layer so far (test hook for
    /// the odd-L-only invariant).
    const std::vector<int>& requested_l() const { return requested_l_; }

  private:
    struct LayoutMember {
        int nu = 0;
        double k = 0.0;
        std::complex<double> base;  // phi-independent amplitude factor
    };
    struct LayoutShell {
        double e_rel = 0.0;  // total relative energy (CM term removed)
        double weight = 1.0;
        std::vector<LayoutMember> members;
    };
    struct Layout {
        std::vector<LayoutShell> shells;
        int dropped = 0;
        std::vector<std::string> warnings;
    };

    Layout layout_discrete(const SuperpositionState& state) const;
    Layout layout_packet(const PacketSpec& spec) const;
    Layout make_layout(const SuperpositionState& state) const;

    /// sigma(E) assembly; fills per-L totals and metadata.  forced_l > 0
    /// pins the partial-wave set (phi scans must share one L set so the
    /// cosine structure is exact).
    SpectrumCurve assemble(const Layout& layout, const std::string& scenario,
                           const std::vector<std::vector<std::complex<double>>>* coeff_override =
                               nullptr,
                           int forced_l = 0);

    void ensure_continuum(int l_upto);
    void ensure_tables(const std::vector<int>& nus, int l_upto, double kt_lo, double kt_hi);
    double amplitude(int nu, int l, std::size_t ie, double kt, bool use_table) const;

    PotentialParams params_;
    RadialGrid grid_;
    EngineConfig config_;
    AmplitudeFn override_;
    std::vector<BoundLevel> levels_;
    std::vector<double> lcao_w_;
    std::vector<std::pair<std::size_t, std::size_t>> support_;

    // continuum states indexed [l][iE]; odd l only, lazily extended
    std::map<int, std::vector<ContinuumState>> continuum_;

    // log-k~ amplitude tables indexed by (nu, l) -> [iE][ikt]
    struct KtTable {
        double ln_lo = 0.0, dln = 0.0;
        int n = 0;
        std::vector<std::vector<double>> rows;  // rows[iE][ikt]
    };
    std::map<std::pair<int, int>, KtTable> tables_;

    std::vector<int> requested_l_;
};

/// Least-squares A + B cos(phi + phi0) on a uniform full-period grid.
CosineFit fit_cosine(const std::vector<double>& phi, const std::vector<double>& sigma);

}  // namespace scatter
