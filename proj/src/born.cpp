#include "scatter/born.hpp"

#include <cmath>
#include <stdexcept>

#include "scatter/constants.hpp"
#include "scatter/errors.hpp"
#include "scatter/special.hpp"

namespace scatter {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

MomentumTransfer MomentumTransfer::collinear_incident(double ki, double kf, double theta,
                                                      double phi) {
    MomentumTransfer mt;
    mt.k_i = {0.0, 0.0, ki};
    mt.k_f = {kf * std::sin(theta) * std::cos(phi), kf * std::sin(theta) * std::sin(phi),
              kf * std::cos(theta)};
    return mt;
}

std::pair<double, double> lcao_norms(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::domain_error("lcao_norms: require finite R > 0");
    }
    double b = 2.0 * std::exp(-r) * (1.0 + r + r * r / 3.0);
    return {1.0 / std::sqrt(2.0 + b), 1.0 / std::sqrt(2.0 - b)};
}

std::vector<double> lcao_weight(const RadialGrid& grid) {
    std::vector<double> w(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        auto [np, nm] = lcao_norms(grid.r(i));
        w[i] = np * nm;
    }
    return w;
}

std::pair<std::size_t, std::size_t> support_window(const RadialFunction& f) {
    double peak = 0.0;
    for (double v : f.values) peak = std::max(peak, std::abs(v));
    double cut = 1e-15 * peak;
    std::size_t i0 = 0, i1 = f.values.size() - 1;
    while (i0 < i1 && std::abs(f.values[i0]) < cut) ++i0;
    while (i1 > i0 && std::abs(f.values[i1]) < cut) --i1;
    i0 = (i0 >= 2) ? i0 - 2 : 0;
    i1 = std::min(i1 + 2, f.values.size() - 1);
    if ((i1 - i0) % 2 == 1) i1 = (i1 + 1 < f.values.size()) ? i1 + 1 : i1 - 1;
    return {i0, i1};
}

double radial_integral(int l, const RadialFunction& bound, const RadialFunction& continuum,
                       double k_tilde, const std::vector<double>& lcao_w, std::size_t i0,
                       std::size_t i1) {
    if (!(k_tilde > 0.0) || !std::isfinite(k_tilde)) {
        throw std::domain_error(
            "radial_integral: k~ = 0 is kinematically degenerate (prefactor singular)");
    }
    if (!(bound.grid == continuum.grid)) {
        throw InvariantError("radial_integral: wavefunctions on different grids");
    }
    const RadialGrid& grid = bound.grid;
    std::vector<double> integrand(i1 - i0 + 1);
    for (std::size_t i = i0; i <= i1; ++i) {
        integrand[i - i0] = lcao_w[i] * continuum.values[i] *
                            spherical_bessel(l, 0.5 * k_tilde * grid.r(i)) * bound.values[i];
    }
    double kt2 = k_tilde * k_tilde;
    double prefactor = 16.0 / (kPi * kPi) / (kt2 * (4.0 + kt2) * (4.0 + kt2));
    return prefactor * integrate(integrand, grid.dr);
}

double radial_integral(int l, const RadialFunction& bound, const RadialFunction& continuum,
                       double k_tilde) {
    auto w = lcao_weight(bound.grid);
    auto [i0, i1] = support_window(bound);
    return radial_integral(l, bound, continuum, k_tilde, w, i0, i1);
}

TMatrixElement t_element(int nu, double energy, int l, const RadialFunction& bound,
                         const RadialFunction& continuum, const MomentumTransfer& kin) {
    double r_val = radial_integral(l, bound, continuum, kin.magnitude());
    static const std::complex<double> i_pow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    TMatrixElement t;
    t.nu = nu;
    t.energy = energy;
    t.l = l;
    t.value = i_pow[l & 3] * std::sqrt(2.0 * l + 1.0) * r_val;
    return t;
}

}  // namespace scatter
