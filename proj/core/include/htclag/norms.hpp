#pragma once

#include <functional>
#include <vector>

#include "htclag/state.hpp"

namespace htclag {

struct L2Errors {
    double rho = 0.0;
    double u = 0.0;
    double E = 0.0;
};

/// Cell-wise L2 errors sqrt(sum |omega_c| (phi_c - phi_exact(x_bc))^2) for
/// density, horizontal velocity and specific total energy.
L2Errors l2_error(const Mesh& mesh, const CornerGeometry& geom, const Fields& f,
                  const IdealGas& gas, const std::function<double(Vec2)>& rho_exact,
                  const std::function<double(Vec2)>& u_exact,
                  const std::function<double(Vec2)>& E_exact);

/// Observed order between two meshes from the L2 errors and mesh sizes.
inline double convergence_order(double e_coarse, double e_fine, double h_coarse, double h_fine) {
    return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}

enum class ProfileAxis { X, Radial };

struct ScatterRow {
    double coord, rho, u, p, S, eps;
};

/// Per-cell scatter (barycenter coordinate, values), sorted by coordinate.
/// For the radial axis, u is the radial velocity component.
std::vector<ScatterRow> scatter_profile(const Mesh& mesh, const CornerGeometry& geom,
                                        const Fields& f, const IdealGas& gas, ProfileAxis axis);

} // namespace htclag
