#include "scatter/potentials.hpp"

#include <cmath>
#include <stdexcept>

#include "scatter/errors.hpp"

namespace scatter {

double PotentialParams::lambda() const {
    return std::sqrt(2.0 * mu() * d) / alpha;
}

void PotentialParams::validate() const {
    if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("morse.D must be > 0");
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("morse.alpha must be > 0");
    if (!(r_e > 0.0) || !std::isfinite(r_e)) throw ConfigError("morse.Re must be > 0");
    if (!(m_p > 0.0) || !std::isfinite(m_p)) throw ConfigError("masses.mp must be > 0");
}

namespace {
void check_r(double r) {
    if (!(r > 0.0) || !std::isfinite(r)) {
        throw std::domain_error("potential requires finite R > 0");
    }
}
}  // namespace

double sigma_g_potential(double r, const PotentialParams& p) {
    check_r(r);
    double e = std::exp(-p.alpha * (r - p.r_e));
    return p.d * (e * e - 2.0 * e);
}

double sigma_u_potential(double r, const PotentialParams& p) {
    check_r(r);
    double e = std::exp(-p.alpha * (r - p.r_e));
    return 0.5 * p.d * (e * e + 2.0 * e);
}

}  // namespace scatter
