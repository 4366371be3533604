#include "htclag/norms.hpp"

#include <algorithm>
#include <cmath>

namespace htclag {

L2Errors l2_error(const Mesh& mesh, const CornerGeometry& geom, const Fields& f,
                  const IdealGas& gas, const std::function<double(Vec2)>& rho_exact,
                  const std::function<double(Vec2)>& u_exact,
                  const std::function<double(Vec2)>& E_exact) {
    NeumaierSum er, eu, ee;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const Vec2 xb = geom.barycenter[c];
        const double w = geom.area[c];
        const double drho = 1.0 / f.tau[c] - rho_exact(xb);
        const double du = f.vx[c] - u_exact(xb);
        const double dE = total_specific_energy(gas, f.tau[c], f.vel(c), f.S[c]) - E_exact(xb);
        er.add(w * drho * drho);
        eu.add(w * du * du);
        ee.add(w * dE * dE);
    }
    return {std::sqrt(er.value()), std::sqrt(eu.value()), std::sqrt(ee.value())};
}

std::vector<ScatterRow> scatter_profile(const Mesh& mesh, const CornerGeometry& geom,
                                        const Fields& f, const IdealGas& gas, ProfileAxis axis) {
    std::vector<ScatterRow> rows(mesh.n_cells());
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const Vec2 xb = geom.barycenter[c];
        ScatterRow& r = rows[c];
        const Vec2 v = f.vel(c);
        if (axis == ProfileAxis::X) {
            r.coord = xb.x;
            r.u = v.x;
        } else {
            r.coord = xb.norm();
            r.u = r.coord > 0.0 ? dot(v, xb) / r.coord : 0.0;
        }
        r.rho = 1.0 / f.tau[c];
        const Thermo th = evaluate(gas, f.tau[c], f.S[c]);
        r.p = th.p;
        r.S = f.S[c];
        r.eps = th.eps;
    }
    std::sort(rows.begin(), rows.end(),
              [](const ScatterRow& a, const ScatterRow& b) { return a.coord < b.coord; });
    return rows;
}

} // namespace htclag
