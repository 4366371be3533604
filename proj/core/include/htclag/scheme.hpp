#pragma once

#include <vector>

#include "htclag/geometry.hpp"
#include "htclag/mesh.hpp"
#include "htclag/nodal.hpp"
#include "htclag/parallel.hpp"
#include "htclag/state.hpp"

namespace htclag {

struct EvalOptions {
    double ecl_guard = 1e-20; // vanishing-denominator threshold for alpha_p
};

/// Nodal fluxes of both schemes, per dof.
struct NodeData {
    std::vector<double> vpx, vpy, pp, alpha; // ECL
    std::vector<double> vsx, vsy;            // ESL
    std::vector<std::uint8_t> fallback;
    int fallback_count = 0;

    void resize(int n) {
        vpx.resize(n);
        vpy.resize(n);
        pp.resize(n);
        alpha.resize(n);
        vsx.resize(n);
        vsy.resize(n);
        fallback.assign(n, 0);
        fallback_count = 0;
    }
};

/// Time derivatives: per-cell d(tau, v, S)/dt and per-dof node velocities.
struct Rates {
    std::vector<double> dtau, dvx, dvy, dS;
    std::vector<double> ux, uy;

    void resize(int cells, int dofs) {
        dtau.resize(cells);
        dvx.resize(cells);
        dvy.resize(cells);
        dS.resize(cells);
        ux.resize(dofs);
        uy.resize(dofs);
    }
};

struct EvalDiag {
    std::vector<int> bad_cells; // tangled or invalid tau; evaluation aborted
    int fallback_count = 0;
    double min_dS_rate = 0.0;
};

/// One semi-discrete evaluation of the blended scheme.
///
/// beta is the per-node convex weight: 0 gives the entropy-conservative
/// fluctuations, 1 the entropy-stable ones. The continuity fluctuation and
/// the returned node velocity use the same blended value, which is what keeps
/// the evolved specific volume consistent with the mesh displacement.
///
/// Returns false (with diag.bad_cells filled) when the geometry is tangled or
/// a specific volume is not positive; no rates are produced then.
bool eval_rates(const Mesh& mesh, CornerGeometry& geom, const Fields& f, const MassField& masses,
                const IdealGas& gas, const std::vector<double>& beta, ThermoCache& thermo,
                NodeData& nodes, Rates& rates, EvalDiag& diag, const EvalOptions& opt,
                ThreadPool& pool);

/// Energy contraction sum_c m_c w_c . dq_c/dt with w = (-p, v, theta);
/// the executable form of the semi-discrete energy statements.
double energy_rate(const Fields& f, const MassField& masses, const ThermoCache& thermo,
                   const Rates& rates);

/// sum_c m_c dv_c/dt, for the momentum-conservation audits.
Vec2 momentum_rate(const MassField& masses, const Rates& rates);

/// Boundary work rate sum over pressure half-edges of p_b (l n . u_node) with
/// the blended node velocities; closes the energy budget on open domains.
double boundary_work_rate(const Mesh& mesh, const CornerGeometry& geom, const Rates& rates);

} // namespace htclag
