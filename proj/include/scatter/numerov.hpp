#pragma once

#include <functional>
#include <vector>

namespace scatter {

/// Propagates chi'' = w(R) chi outward on a uniform grid with the
/// three-point Numerov scheme.  `w` holds w(R_i) for the whole grid;
/// chi[0], chi[1] must be seeded by the caller.  Rescales in place when
/// the solution grows past 1e250 (classically forbidden regions).
void numerov_outward(const std::vector<double>& w, double dr, std::vector<double>& chi);

}  // namespace scatter
