#include "scatter/grid.hpp"

#include <cmath>
#include <cstdio>

namespace scatter {

RadialGrid::RadialGrid(double rmin_, double rmax_, double dr_) {
    if (!(rmin_ > 0.0) || !(dr_ > 0.0) || !(rmax_ > rmin_)) {
        throw ConfigError("radial grid requires 0 < Rmin < Rmax and dR > 0");
    }
    rmin = rmin_;
    dr = dr_;
    n = static_cast<std::size_t>(std::floor((rmax_ - rmin_) / dr_ + 0.5)) + 1;
    if (n < 8) throw ConfigError("radial grid has fewer than 8 points");
}

std::size_t RadialGrid::index_at(double r_value) const {
    double x = (r_value - rmin) / dr;
    if (x <= 0.0) return 0;
    auto i = static_cast<std::size_t>(std::floor(x + 0.5));
    return i >= n ? n - 1 : i;
}

double integrate(const std::vector<double>& f, double dr, std::size_t i0, std::size_t i1) {
    if (i1 >= f.size()) i1 = f.size() - 1;
    if (i1 <= i0) return 0.0;
    std::size_t m = i1 - i0;  // interval count
    double sum = 0.0;
    if (m % 2 == 1) {
        if (m >= 3) {
            // Simpson 3/8 on the last three intervals
            sum += dr * 3.0 / 8.0 *
                   (f[i1 - 3] + 3.0 * f[i1 - 2] + 3.0 * f[i1 - 1] + f[i1]);
            i1 -= 3;
            m -= 3;
        } else {
            return 0.5 * dr * (f[i0] + f[i1]);
        }
    }
    if (m >= 2) {
        double s = f[i0] + f[i1];
        for (std::size_t i = i0 + 1; i < i1; i += 2) s += 4.0 * f[i];
        for (std::size_t i = i0 + 2; i < i1; i += 2) s += 2.0 * f[i];
        sum += dr / 3.0 * s;
    }
    return sum;
}

double integrate(const std::vector<double>& f, double dr) {
    return integrate(f, dr, 0, f.size() - 1);
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t i = 1; i < x.size(); ++i) {
        s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
    }
    return s;
}

}  // namespace scatter
