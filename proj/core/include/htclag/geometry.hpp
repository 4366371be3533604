#pragma once

#include <vector>

#include "htclag/mesh.hpp"
#include "htclag/vec2.hpp"

namespace htclag {

/// Geometry attached to one cell corner (cell c, vertex p). The corner vector
/// is the sum of the two outward half-edge contributions,
///   l_pc n_pc = l+ n+ + l- n-,
/// and G = l-(n- (x) n-) + l+(n+ (x) n+) is the geometric part of the corner
/// viscosity matrix M_pc = (a_c / tau_c) G.
struct Corner {
    Vec2 ln;
    double lnorm = 0.0;
    Sym2 G;
    double lminus = 0.0, lplus = 0.0;
    Vec2 nminus, nplus;
};

/// Per-stage geometric quantities, recomputed from node positions on demand.
class CornerGeometry {
public:
    std::vector<double> area;      // per cell, signed (positive when valid)
    std::vector<Vec2> barycenter;  // per cell
    std::vector<Corner> corner;    // 3 per cell, index 3*c + k
    std::vector<Vec2> lpb;         // per dof: total boundary corner vector
    std::vector<Vec2> lpres_pb;    // per dof: sum of pressure half-edges scaled by p_b
    std::vector<int> bad_cells;    // cells with nonpositive area in last update

    /// Recompute all geometry from mesh.pos. Returns false when any cell
    /// area is nonpositive; bad_cells then lists the offenders.
    bool update(const Mesh& mesh);

    const Corner& at(int c, int k) const { return corner[3 * c + k]; }
};

/// Shoelace areas from vertex coordinates. Throws std::runtime_error on a
/// tangled (nonpositive-area) cell.
std::vector<double> geometric_volumes(const Mesh& mesh);

/// Dual cell volume per dof: sum of the corner sub-cell quadrilaterals
/// (vertex, next edge midpoint, barycenter, previous edge midpoint).
std::vector<double> dual_volumes(const Mesh& mesh, const CornerGeometry& geom);

/// Sub-cell volume of a single corner.
double subcell_volume(const Mesh& mesh, const CornerGeometry& geom, int cell, int k);

} // namespace htclag
