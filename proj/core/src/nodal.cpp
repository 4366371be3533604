#include "htclag/nodal.hpp"

#include <stdexcept>

namespace htclag {

EclNode ecl_node(std::span<const CornerContrib> corners, const NodeBcView& bc,
                 double denom_guard) {
    // Averages are anchored at the first corner value so that a locally
    // constant state reproduces itself exactly.
    auto project = [&](Vec2 v) {
        if (bc.kind == NodeKind::Wall) v -= bc.wall_normal * dot(v, bc.wall_normal);
        return v;
    };
    const Vec2 v_anchor = project(corners[0].v);
    const double p_anchor = corners[0].p;

    double wsum = 0.0;
    Vec2 vnum{};
    double pnum = 0.0;
    for (const CornerContrib& cc : corners) {
        const double w = cc.lnorm;
        wsum += w;
        pnum += w * (cc.p - p_anchor);
        vnum += (project(cc.v) - v_anchor) * w;
    }
    if (!(wsum > 0.0)) throw std::runtime_error("ecl_node: degenerate corner weights");

    EclNode out;
    out.vp = (bc.kind == NodeKind::Pinned) ? Vec2{} : v_anchor + vnum * (1.0 / wsum);
    out.pp = (bc.kind == NodeKind::Pressure) ? bc.pb : p_anchor + pnum / wsum;

    // alpha_p: numerator is the defect of the central fluxes against the
    // dual-cell energy flux (plus prescribed boundary work), denominator the
    // quadratic form of the velocity jumps actually used in the momentum
    // fluctuation.
    double num = 0.0;
    double den = 0.0;
    for (const CornerContrib& cc : corners) {
        const Vec2 j = ecl_jump(bc, cc.v, out.vp);
        den += cc.lnorm * j.norm2();
        num += dot(cc.ln, cc.v * cc.p - out.vp * cc.p - cc.v * out.pp);
    }
    if (bc.has_pressure) num += dot(bc.lpres_pb, out.vp);
    out.alpha = (den < denom_guard) ? 0.0 : num / den;
    return out;
}

EslNode esl_node(std::span<const CornerContrib> corners, const NodeBcView& bc,
                 Vec2 fallback_velocity) {
    EslNode out;
    if (bc.kind == NodeKind::Pinned) return out; // vstar = 0

    // Solve for the deviation from the first corner velocity; a uniform
    // neighborhood then yields vstar = v exactly.
    const Vec2 v0 = corners[0].v;
    Sym2 Mp{};
    Vec2 rhs{};
    for (const CornerContrib& cc : corners) {
        const Sym2 M = cc.G * cc.rho_a;
        Mp += M;
        rhs += cc.ln * cc.p + M.apply(cc.v - v0);
    }
    if (bc.has_pressure) rhs -= bc.lpres_pb;

    if (bc.kind == NodeKind::Wall) {
        const Vec2 t{-bc.wall_normal.y, bc.wall_normal.x};
        const double att = Mp.quad(t);
        const double tr = Mp.trace();
        if (!(att > 1e-14 * tr)) {
            out.vstar = fallback_velocity;
            out.fallback = true;
            return out;
        }
        out.vstar = t * ((dot(t, rhs) + dot(t, Mp.apply(v0))) / att);
        return out;
    }

    const double det = Mp.det();
    const double tr = Mp.trace();
    if (!(det > 0.0) || det < 1e-14 * tr * tr) {
        out.vstar = fallback_velocity;
        out.fallback = true;
        return out;
    }
    const double inv = 1.0 / det;
    const Vec2 dv{inv * (Mp.yy * rhs.x - Mp.xy * rhs.y), inv * (Mp.xx * rhs.y - Mp.xy * rhs.x)};
    out.vstar = v0 + dv;
    return out;
}

} // namespace htclag
