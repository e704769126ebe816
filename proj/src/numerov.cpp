#include "scatter/numerov.hpp"

#include <cmath>

namespace scatter {

void numerov_outward(const std::vector<double>& w, double dr, std::vector<double>& chi) {
    const double t = dr * dr / 12.0;
    const std::size_t n = w.size();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        chi[i + 1] = (2.0 * chi[i] * (1.0 + 5.0 * t * w[i]) -
                      chi[i - 1] * (1.0 - t * w[i - 1])) /
                     (1.0 - t * w[i + 1]);
        if (std::abs(chi[i + 1]) > 1e250) {
            for (std::size_t j = 0; j <= i + 1; ++j) chi[j] *= 1e-250;
        }
    }
}

}  // namespace scatter
