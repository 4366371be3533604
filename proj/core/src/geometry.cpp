#include "htclag/geometry.hpp"

#include <stdexcept>
#include <string>

namespace htclag {

bool CornerGeometry::update(const Mesh& mesh) {
    const int nc = mesh.n_cells();
    const int nd = mesh.n_dofs();
    area.resize(nc);
    barycenter.resize(nc);
    corner.resize(static_cast<std::size_t>(nc) * 3);
    lpb.assign(nd, Vec2{});
    lpres_pb.assign(nd, Vec2{});
    bad_cells.clear();

    for (int c = 0; c < nc; ++c) {
        const Vec2 x0 = mesh.vertex(c, 0);
        const Vec2 x1 = mesh.vertex(c, 1);
        const Vec2 x2 = mesh.vertex(c, 2);
        const double A = 0.5 * cross(x1 - x0, x2 - x0);
        area[c] = A;
        if (!(A > 0.0)) bad_cells.push_back(c);
        barycenter[c] = (x0 + x1 + x2) * (1.0 / 3.0);

        const Vec2 x[3] = {x0, x1, x2};
        for (int k = 0; k < 3; ++k) {
            const Vec2 xp = x[k];
            const Vec2 xn = x[(k + 1) % 3];
            const Vec2 xm = x[(k + 2) % 3];

            Corner& cr = corner[3 * c + k];
            const Vec2 eplus = xn - xp;  // edge p -> next, ccw
            const Vec2 eminus = xp - xm; // edge prev -> p, ccw
            const double len_p = eplus.norm();
            const double len_m = eminus.norm();
            cr.lplus = 0.5 * len_p;
            cr.lminus = 0.5 * len_m;
            cr.nplus = outward_normal_dir(eplus) * (1.0 / len_p);
            cr.nminus = outward_normal_dir(eminus) * (1.0 / len_m);
            // half rotations directly: the two sides of an interior edge then
            // contribute exactly opposite vectors
            cr.ln = (outward_normal_dir(eplus) + outward_normal_dir(eminus)) * 0.5;
            cr.lnorm = cr.ln.norm();
            cr.G = outer(cr.nminus, cr.lminus);
            cr.G += outer(cr.nplus, cr.lplus);
        }
    }

    for (const int d : mesh.boundary_dofs) {
        const Vec2 xp = mesh.pos[mesh.dof_nodes[d]];
        Vec2 sum{}, psum{};
        for (int i = mesh.bhe_start[d]; i < mesh.bhe_start[d + 1]; ++i) {
            const BoundaryHalfEdge& h = mesh.bhe[i];
            Vec2 e = (mesh.pos[h.other] - xp) * static_cast<double>(h.sign);
            const Vec2 contrib = outward_normal_dir(e) * 0.5; // half length times unit normal
            sum += contrib;
            if (h.kind == BcKind::Pressure) psum += contrib * h.pb;
        }
        lpb[d] = sum;
        lpres_pb[d] = psum;
    }

    return bad_cells.empty();
}

std::vector<double> geometric_volumes(const Mesh& mesh) {
    std::vector<double> vol(mesh.n_cells());
    for (int c = 0; c < mesh.n_cells(); ++c) {
        const Vec2 x0 = mesh.vertex(c, 0);
        const Vec2 x1 = mesh.vertex(c, 1);
        const Vec2 x2 = mesh.vertex(c, 2);
        const double A = 0.5 * cross(x1 - x0, x2 - x0);
        if (!(A > 0.0))
            throw std::runtime_error("geometric_volumes: tangled mesh, cell " + std::to_string(c) +
                                     " has nonpositive area");
        vol[c] = A;
    }
    return vol;
}

double subcell_volume(const Mesh& mesh, const CornerGeometry& geom, int cell, int k) {
    const Vec2 xp = mesh.vertex(cell, k);
    const Vec2 xn = mesh.vertex(cell, (k + 1) % 3);
    const Vec2 xm = mesh.vertex(cell, (k + 2) % 3);
    const Vec2 mp = (xp + xn) * 0.5;
    const Vec2 mm = (xm + xp) * 0.5;
    const Vec2 bc = geom.barycenter[cell];
    // shoelace of the quadrilateral (x_p, m+, bc, m-)
    return 0.5 * (cross(xp, mp) + cross(mp, bc) + cross(bc, mm) + cross(mm, xp));
}

std::vector<double> dual_volumes(const Mesh& mesh, const CornerGeometry& geom) {
    std::vector<double> vol(mesh.n_dofs(), 0.0);
    for (int c = 0; c < mesh.n_cells(); ++c)
        for (int k = 0; k < 3; ++k)
            vol[mesh.dof_index[mesh.cells[c][k]]] += subcell_volume(mesh, geom, c, k);
    return vol;
}

} // namespace htclag
