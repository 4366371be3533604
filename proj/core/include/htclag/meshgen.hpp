#pragma once

#include <string>

#include "htclag/mesh.hpp"

namespace htclag {

struct SideBc {
    BcKind kind = BcKind::Wall;
    double pb = 0.0;
};

/// Rectangle paved with quads split into triangles along alternating
/// diagonals. `h` targets the characteristic size sqrt(|omega_c|); explicit
/// nx/ny override it. Periodic sides are glued by node identification.
struct RectMeshSpec {
    double x0 = 0.0, x1 = 1.0, y0 = 0.0, y1 = 1.0;
    double h = 0.0;
    int nx = 0, ny = 0;
    bool periodic_x = false, periodic_y = false;
    SideBc left, right, bottom, top;
};
MeshInput generate_rect_mesh(const RectMeshSpec& spec);

/// Shell sector in polar coordinates, triangulated the same way. Angular
/// extremes are walls (radial lines), radial extremes carry the given tags.
struct ShellMeshSpec {
    double r0 = 0.1, r1 = 1.0;
    double phi0 = 0.0, phi1 = 1.5707963267948966;
    int nr = 90, nphi = 15;
    SideBc inner{BcKind::Pressure, 0.0}, outer{BcKind::Pressure, 0.0};
};
MeshInput generate_shell_mesh(const ShellMeshSpec& spec);

/// Plain-text mesh exchange format: node, cell, boundary tag and periodic
/// pair sections with 1-based indices.
void write_mesh_file(const std::string& path, const MeshInput& mesh);
MeshInput read_mesh_file(const std::string& path);

} // namespace htclag
