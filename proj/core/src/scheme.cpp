#include "htclag/scheme.hpp"

#include <cmath>
#include <stdexcept>

namespace htclag {

bool eval_rates(const Mesh& mesh, CornerGeometry& geom, const Fields& f, const MassField& masses,
                const IdealGas& gas, const std::vector<double>& beta, ThermoCache& thermo,
                NodeData& nodes, Rates& rates, EvalDiag& diag, const EvalOptions& opt,
                ThreadPool& pool) {
    const int nc = mesh.n_cells();
    const int nd = mesh.n_dofs();
    if (static_cast<int>(beta.size()) != nd)
        throw std::invalid_argument("eval_rates: blend field size mismatch");
    for (const double b : beta)
        if (!(b >= 0.0 && b <= 1.0))
            throw std::invalid_argument("eval_rates: blend factor outside [0,1]");
    diag.bad_cells.clear();
    diag.fallback_count = 0;
    diag.min_dS_rate = 0.0;

    for (int c = 0; c < nc; ++c) {
        if (!(f.tau[c] > 0.0) || !std::isfinite(f.tau[c]) || !std::isfinite(f.vx[c]) ||
            !std::isfinite(f.vy[c]) || !std::isfinite(f.S[c]))
            diag.bad_cells.push_back(c);
    }
    if (!diag.bad_cells.empty()) return false;

    if (!geom.update(mesh)) {
        diag.bad_cells = geom.bad_cells;
        return false;
    }

    thermo.update(f, gas);
    nodes.resize(nd);
    rates.resize(nc, nd);

    // Phase 1: nodal gather. Each dof reads its surrounding cells and solves
    // for both schemes' fluxes; writes are disjoint per dof.
    pool.run(nd, [&](int begin, int end) {
        thread_local std::vector<CornerContrib> gathered;
        for (int d = begin; d < end; ++d) {
            const int i0 = mesh.corner_start[d];
            const int i1 = mesh.corner_start[d + 1];
            gathered.resize(i1 - i0);
            for (int i = i0; i < i1; ++i) {
                const int c = mesh.corner_cell[i];
                const Corner& cr = geom.at(c, mesh.corner_local[i]);
                CornerContrib& cc = gathered[i - i0];
                cc.ln = cr.ln;
                cc.lnorm = cr.lnorm;
                cc.G = cr.G;
                cc.p = thermo.p[c];
                cc.v = {f.vx[c], f.vy[c]};
                cc.rho_a = thermo.rho_a[c];
            }
            const NodeConstraint& nb = mesh.node_bc[d];
            NodeBcView bc;
            bc.kind = nb.kind;
            bc.wall_normal = nb.wall_normal;
            bc.pb = nb.pb;
            bc.has_pressure = nb.has_pressure;
            if (nb.has_pressure) bc.lpres_pb = geom.lpres_pb[d];

            const EclNode ec = ecl_node(gathered, bc, opt.ecl_guard);
            const EslNode es = esl_node(gathered, bc, ec.vp);
            nodes.vpx[d] = ec.vp.x;
            nodes.vpy[d] = ec.vp.y;
            nodes.pp[d] = ec.pp;
            nodes.alpha[d] = ec.alpha;
            nodes.vsx[d] = es.vstar.x;
            nodes.vsy[d] = es.vstar.y;
            nodes.fallback[d] = es.fallback ? 1 : 0;
        }
    });
    for (int d = 0; d < nd; ++d) nodes.fallback_count += nodes.fallback[d];
    diag.fallback_count = nodes.fallback_count;

    // Phase 2: cell scatter. Each cell accumulates its three corners' blended
    // fluctuations; writes are disjoint per cell.
    pool.run(nc, [&](int begin, int end) {
        for (int c = begin; c < end; ++c) {
            const double pc = thermo.p[c];
            const double ra = thermo.rho_a[c];
            const double inv_theta = 1.0 / thermo.theta[c];
            const Vec2 vc{f.vx[c], f.vy[c]};
            double dtau = 0.0, dS = 0.0;
            Vec2 dv{};
            for (int k = 0; k < 3; ++k) {
                const Corner& cr = geom.at(c, k);
                const int d = mesh.dof_index[mesh.cells[c][k]];
                const double b = beta[d];
                const Vec2 vp{nodes.vpx[d], nodes.vpy[d]};
                const Vec2 vs{nodes.vsx[d], nodes.vsy[d]};

                const Vec2 vmix = vp * (1.0 - b) + vs * b;
                dtau += dot(cr.ln, vmix - vc);

                const NodeConstraint& nb = mesh.node_bc[d];
                NodeBcView bcv;
                bcv.kind = nb.kind;
                bcv.wall_normal = nb.wall_normal;
                const Vec2 jc = ecl_jump(bcv, vc, vp);
                const Vec2 conservative =
                    -(cr.ln * (nodes.pp[d] - pc) + jc * (cr.lnorm * nodes.alpha[d]));

                const Vec2 us = vs - vc;
                const Vec2 visc = cr.G.apply(us) * ra;
                dv += conservative * (1.0 - b) + visc * b;

                const double qm = dot(cr.nminus, us);
                const double qp = dot(cr.nplus, us);
                dS += b * ra * (cr.lminus * qm * qm + cr.lplus * qp * qp) * inv_theta;
            }
            const double inv_m = 1.0 / masses.m[c];
            rates.dtau[c] = dtau * inv_m;
            rates.dvx[c] = dv.x * inv_m;
            rates.dvy[c] = dv.y * inv_m;
            rates.dS[c] = dS * inv_m;
        }
    });

    double min_ds = 0.0;
    for (int c = 0; c < nc; ++c) min_ds = std::min(min_ds, rates.dS[c]);
    diag.min_dS_rate = min_ds;

    // Node motion: same blended velocity as the continuity fluctuation.
    for (int d = 0; d < nd; ++d) {
        const NodeConstraint& nb = mesh.node_bc[d];
        if (nb.kind == NodeKind::Pinned) {
            rates.ux[d] = 0.0;
            rates.uy[d] = 0.0;
            continue;
        }
        const double b = beta[d];
        Vec2 u{(1.0 - b) * nodes.vpx[d] + b * nodes.vsx[d],
               (1.0 - b) * nodes.vpy[d] + b * nodes.vsy[d]};
        if (nb.kind == NodeKind::Wall) u -= nb.wall_normal * dot(u, nb.wall_normal);
        rates.ux[d] = u.x;
        rates.uy[d] = u.y;
    }

    return true;
}

double energy_rate(const Fields& f, const MassField& masses, const ThermoCache& thermo,
                   const Rates& rates) {
    NeumaierSum s;
    for (int c = 0; c < f.size(); ++c) {
        const double w = -thermo.p[c] * rates.dtau[c] + f.vx[c] * rates.dvx[c] +
                         f.vy[c] * rates.dvy[c] + thermo.theta[c] * rates.dS[c];
        s.add(masses.m[c] * w);
    }
    return s.value();
}

Vec2 momentum_rate(const MassField& masses, const Rates& rates) {
    NeumaierSum sx, sy;
    for (std::size_t c = 0; c < masses.m.size(); ++c) {
        sx.add(masses.m[c] * rates.dvx[c]);
        sy.add(masses.m[c] * rates.dvy[c]);
    }
    return {sx.value(), sy.value()};
}

double boundary_work_rate(const Mesh& mesh, const CornerGeometry& geom, const Rates& rates) {
    NeumaierSum s;
    for (const int d : mesh.boundary_dofs)
        s.add(dot(geom.lpres_pb[d], Vec2{rates.ux[d], rates.uy[d]}));
    return s.value();
}

} // namespace htclag
