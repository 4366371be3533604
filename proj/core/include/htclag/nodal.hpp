#pragma once

#include <span>

#include "htclag/mesh.hpp"
#include "htclag/vec2.hpp"

namespace htclag {

/// Everything one corner contributes to its node: current corner geometry and
/// the owning cell's state.
struct CornerContrib {
    Vec2 ln;       // corner vector l_pc n_pc
    double lnorm;  // ||l_pc n_pc||
    Sym2 G;        // geometric part of M_pc
    double p;      // cell pressure
    Vec2 v;        // cell velocity
    double rho_a;  // a_c / tau_c, scale of M_pc
};

/// Boundary context of a node, with geometry evaluated at the current stage.
struct NodeBcView {
    NodeKind kind = NodeKind::Interior;
    Vec2 wall_normal;  // unit (Wall)
    double pb = 0.0;   // prescribed pressure (Pressure)
    Vec2 lpres_pb;     // sum of pressure half-edge vectors scaled by their p_b
    bool has_pressure = false;
};

/// Entropy-conservative nodal fluxes: averaged velocity and pressure plus the
/// thermodynamic correction factor alpha_p.
struct EclNode {
    Vec2 vp;
    double pp = 0.0;
    double alpha = 0.0;
};

/// Entropy-stable nodal velocity from the corner-matrix solve.
struct EslNode {
    Vec2 vstar;
    bool fallback = false; // singular nodal matrix, ECL average used instead
};

/// Velocity jump entering the alpha_p momentum term for one corner; walls use
/// the tangential projection of the cell velocity, pinned nodes the full one.
inline Vec2 ecl_jump(const NodeBcView& bc, Vec2 v_cell, Vec2 vp) {
    switch (bc.kind) {
        case NodeKind::Wall: {
            const Vec2 vpar = v_cell - bc.wall_normal * dot(v_cell, bc.wall_normal);
            return vpar - vp;
        }
        case NodeKind::Pinned:
            return v_cell;
        default:
            return v_cell - vp;
    }
}

/// Weighted nodal averages and the correction factor chosen so the node's
/// fluctuations contract against the dual variables to the dual-cell energy
/// flux. `denom_guard` is the vanishing-denominator threshold.
EclNode ecl_node(std::span<const CornerContrib> corners, const NodeBcView& bc,
                 double denom_guard);

/// 2x2 nodal solver M_p v* = sum(l_pc n_pc p_c + M_pc v_c) with boundary
/// closures: pressure edges augment the right-hand side, walls reduce the
/// system to the tangential direction, pinned nodes do not move.
EslNode esl_node(std::span<const CornerContrib> corners, const NodeBcView& bc,
                 Vec2 fallback_velocity);

} // namespace htclag
