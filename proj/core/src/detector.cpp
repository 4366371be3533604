#include "htclag/detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace htclag {

std::vector<double> a_priori_detect(const Mesh& mesh, const CornerGeometry& geom,
                                    const Fields& f, const ThermoCache& thermo, double kappa) {
    const int nd = mesh.n_dofs();
    std::vector<double> beta(nd, 0.0);
    const std::vector<double> omega_p = dual_volumes(mesh, geom);

    for (int d = 0; d < nd; ++d) {
        // The dual cell's outward corner vectors are -l_pc; boundary duals
        // additionally close through the boundary face with the averaged
        // node velocity, so uniform streams never register as compression.
        double flux = 0.0;
        double a_min = std::numeric_limits<double>::max();
        double rho_min = std::numeric_limits<double>::max();
        double rho_max = 0.0;
        double wsum = 0.0;
        Vec2 vavg{};
        for (int i = mesh.corner_start[d]; i < mesh.corner_start[d + 1]; ++i) {
            const int c = mesh.corner_cell[i];
            const Corner& cr = geom.at(c, mesh.corner_local[i]);
            flux += cr.ln.x * f.vx[c] + cr.ln.y * f.vy[c];
            a_min = std::min(a_min, thermo.a[c]);
            const double rho = 1.0 / f.tau[c];
            rho_min = std::min(rho_min, rho);
            rho_max = std::max(rho_max, rho);
            wsum += cr.lnorm;
            vavg += Vec2{f.vx[c], f.vy[c]} * cr.lnorm;
        }
        if (wsum > 0.0) vavg *= 1.0 / wsum;
        const double div = (-flux + dot(geom.lpb[d], vavg)) / omega_p[d];
        const double h = std::sqrt(omega_p[d]);
        if (div * h < -kappa * a_min) beta[d] = 1.0;
        // order-one density jumps across the node flag as well: undissipated
        // corners at such fronts ring, and smooth per-node variation vanishes
        // with h so this switch never fires on resolved fields
        if (rho_max - rho_min > 0.8 * rho_min) beta[d] = 1.0;
    }

    // Dilate the flag band by one cell ring: conservative corners poking
    // into a strong front feed oscillations that the stable corners then
    // rectify into spurious, irreversible entropy.
    std::vector<double> wide = beta;
    for (int c = 0; c < mesh.n_cells(); ++c) {
        bool touched = false;
        for (int k = 0; k < 3 && !touched; ++k)
            touched = beta[mesh.dof_index[mesh.cells[c][k]]] > 0.0;
        if (touched)
            for (int k = 0; k < 3; ++k) wide[mesh.dof_index[mesh.cells[c][k]]] = 1.0;
    }
    return wide;
}

std::vector<int> mood_detect(const Mesh& mesh, const Fields& candidate, const Fields& previous,
                             const IdealGas& gas, double delta, const std::vector<double>& cell_h) {
    const int nc = mesh.n_cells();
    std::vector<int> flagged;

    for (int c = 0; c < nc; ++c) {
        const double tau = candidate.tau[c];
        const bool finite = std::isfinite(tau) && std::isfinite(candidate.vx[c]) &&
                            std::isfinite(candidate.vy[c]) && std::isfinite(candidate.S[c]);
        if (!finite || !(tau > 0.0)) {
            flagged.push_back(c);
            continue;
        }
        const double p = (gas.gamma - 1.0) * internal_energy(gas, tau, candidate.S[c]) / tau;
        if (!(p >= 0.0) || !std::isfinite(p)) {
            flagged.push_back(c);
            continue;
        }
        // relaxed discrete maximum principle on density over the previous
        // state's node-sharing neighborhood
        double lo = 1.0 / previous.tau[c];
        double hi = lo;
        for (int i = mesh.nbr_start[c]; i < mesh.nbr_start[c + 1]; ++i) {
            const double r = 1.0 / previous.tau[mesh.nbr_cell[i]];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        // plateau allowance: deviations below the h^3 scale of the local
        // data carry no extremum information and must not flag
        const double h3 = cell_h[c] * cell_h[c] * cell_h[c];
        const double slack =
            delta * (hi - lo) + 1e-12 + h3 * std::max(std::abs(hi), std::abs(lo));
        const double rho = 1.0 / tau;
        if (rho < lo - slack || rho > hi + slack) flagged.push_back(c);
    }
    return flagged;
}

void beta_from_cell_flags(const Mesh& mesh, const std::vector<int>& flagged,
                          std::vector<double>& beta) {
    beta.assign(mesh.n_dofs(), 0.0);
    for (const int c : flagged)
        for (int k = 0; k < 3; ++k) beta[mesh.dof_index[mesh.cells[c][k]]] = 1.0;
}

} // namespace htclag
