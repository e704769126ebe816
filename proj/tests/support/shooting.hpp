#pragma once

// Numerov shooting oracle for bound states, independent of the analytic
// Morse construction.  A node enters the outward-shot solution from
// R = infinity exactly when E crosses an eigenvalue, so bisecting on the
// node count converges to E_nu; accuracy is set by the Numerov
// discretization (~h^4), far below the 1e-5 hartree comparisons here.

#include <cmath>
#include <functional>
#include <vector>

#include "scatter/grid.hpp"
#include "scatter/numerov.hpp"

namespace scatter::testing {

inline std::vector<double> shoot_outward(const std::function<double(double)>& v,
                                         const RadialGrid& grid, double mu, double e) {
    std::vector<double> w(grid.n), chi(grid.n, 0.0);
    for (std::size_t i = 0; i < grid.n; ++i) w[i] = 2.0 * mu * (v(grid.r(i)) - e);
    chi[0] = 0.0;
    chi[1] = 1e-12;
    numerov_outward(w, grid.dr, chi);
    return chi;
}

inline int shoot_node_count(const std::function<double(double)>& v, const RadialGrid& grid,
                            double mu, double e) {
    std::vector<double> chi = shoot_outward(v, grid, mu, e);
    int nodes = 0;
    for (std::size_t i = 2; i < grid.n; ++i) {
        if (chi[i] * chi[i - 1] < 0.0) ++nodes;
    }
    return nodes;
}

/// Eigenvalue of the level with `nu` nodes by bisection on the node count.
inline double solve_bound_shooting(const std::function<double(double)>& v,
                                   const RadialGrid& grid, double mu, int nu, double e_lo,
                                   double e_hi) {
    double lo = e_lo, hi = e_hi;
    for (int it = 0; it < 120 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        if (shoot_node_count(v, grid, mu, mid) >= nu + 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace scatter::testing
