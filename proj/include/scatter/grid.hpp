#pragma once

#include <cstddef>
#include <vector>

#include "scatter/errors.hpp"

namespace scatter {

/// Uniform radial grid R_i = rmin + i*dr, i = 0..n-1.
struct RadialGrid {
    double rmin = 0.0;
    double dr = 0.0;
    std::size_t n = 0;

    RadialGrid() = default;
    RadialGrid(double rmin_, double rmax_, double dr_);

    double r(std::size_t i) const { return rmin + static_cast<double>(i) * dr; }
    double rmax() const { return r(n - 1); }
    std::size_t index_at(double r_value) const;

    bool operator==(const RadialGrid&) const = default;
};

/// Sampled radial function with its defining metadata.
struct RadialFunction {
    enum class Norm { Unit, EnergyDelta };

    RadialGrid grid;
    std::vector<double> values;
    double energy = 0.0;   // hartree
    int l = 0;             // angular momentum
    Norm norm = Norm::Unit;
};

/// Composite Simpson on a uniform grid; 3/8 rule absorbs an odd interval
/// count.  Requires at least 2 points.
double integrate(const std::vector<double>& f, double dr);
double integrate(const std::vector<double>& f, double dr, std::size_t i0, std::size_t i1);

/// Trapezoid on an arbitrary strictly increasing grid.
double trapezoid(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace scatter
