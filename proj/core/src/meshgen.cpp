#include "htclag/meshgen.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace htclag {

namespace {

int side_count(double len, double h) {
    // quads of side s = h*sqrt(2) give triangles with sqrt(area) = h;
    // rounding up keeps the mesh at least as fine as requested
    const double s = h * std::sqrt(2.0);
    const int n = static_cast<int>(std::ceil(len / s - 1e-9));
    return n < 1 ? 1 : n;
}

} // namespace

MeshInput generate_rect_mesh(const RectMeshSpec& spec) {
    if (!(spec.x1 > spec.x0) || !(spec.y1 > spec.y0))
        throw std::invalid_argument("generate_rect_mesh: degenerate extents");
    int nx = spec.nx, ny = spec.ny;
    if (nx <= 0 || ny <= 0) {
        if (!(spec.h > 0.0)) throw std::invalid_argument("generate_rect_mesh: need h or nx/ny");
        if (spec.h > spec.x1 - spec.x0 || spec.h > spec.y1 - spec.y0)
            throw std::invalid_argument("generate_rect_mesh: h larger than the domain");
        nx = side_count(spec.x1 - spec.x0, spec.h);
        ny = side_count(spec.y1 - spec.y0, spec.h);
    }
    // gluing needs three rows so the alternating diagonals stay manifold
    if (spec.periodic_x) nx = std::max(nx, 3);
    if (spec.periodic_y) ny = std::max(ny, 3);

    MeshInput out;
    const int nnx = nx + 1, nny = ny + 1;
    out.nodes.reserve(static_cast<std::size_t>(nnx) * nny);
    for (int j = 0; j < nny; ++j)
        for (int i = 0; i < nnx; ++i)
            out.nodes.push_back({spec.x0 + (spec.x1 - spec.x0) * i / nx,
                                 spec.y0 + (spec.y1 - spec.y0) * j / ny});
    auto id = [nnx](int i, int j) { return j * nnx + i; };

    out.cells.reserve(static_cast<std::size_t>(nx) * ny * 2);
    for (int j = 0; j < ny; ++j) {
        for (int i = 0; i < nx; ++i) {
            const int n00 = id(i, j), n10 = id(i + 1, j);
            const int n11 = id(i + 1, j + 1), n01 = id(i, j + 1);
            if ((i + j) % 2 == 0) {
                out.cells.push_back({n00, n10, n11});
                out.cells.push_back({n00, n11, n01});
            } else {
                out.cells.push_back({n00, n10, n01});
                out.cells.push_back({n10, n11, n01});
            }
        }
    }

    if (!spec.periodic_y) {
        for (int i = 0; i < nx; ++i) {
            out.boundary.push_back({id(i, 0), id(i + 1, 0), spec.bottom.kind, spec.bottom.pb});
            out.boundary.push_back({id(i, ny), id(i + 1, ny), spec.top.kind, spec.top.pb});
        }
    } else {
        for (int i = 0; i < nnx; ++i) out.periodic.push_back({id(i, ny), id(i, 0)});
    }
    if (!spec.periodic_x) {
        for (int j = 0; j < ny; ++j) {
            out.boundary.push_back({id(0, j), id(0, j + 1), spec.left.kind, spec.left.pb});
            out.boundary.push_back({id(nx, j), id(nx, j + 1), spec.right.kind, spec.right.pb});
        }
    } else {
        for (int j = 0; j < nny; ++j) out.periodic.push_back({id(nx, j), id(0, j)});
    }
    return out;
}

MeshInput generate_shell_mesh(const ShellMeshSpec& spec) {
    if (!(spec.r0 > 0.0) || !(spec.r1 > spec.r0))
        throw std::invalid_argument("generate_shell_mesh: need 0 < r0 < r1");
    const double dphi = spec.phi1 - spec.phi0;
    if (!(dphi > 0.0) || dphi > 2.0 * 3.1415926535897932 + 1e-12)
        throw std::invalid_argument("generate_shell_mesh: invalid angular range");
    if (spec.nr < 1 || spec.nphi < 1)
        throw std::invalid_argument("generate_shell_mesh: invalid resolution");

    MeshInput out;
    const int nnr = spec.nr + 1, nnp = spec.nphi + 1;
    for (int j = 0; j < nnp; ++j) {
        const double phi = spec.phi0 + dphi * j / spec.nphi;
        for (int i = 0; i < nnr; ++i) {
            const double r = spec.r0 + (spec.r1 - spec.r0) * i / spec.nr;
            out.nodes.push_back({r * std::cos(phi), r * std::sin(phi)});
        }
    }
    auto id = [nnr](int i, int j) { return j * nnr + i; };

    for (int j = 0; j < spec.nphi; ++j) {
        for (int i = 0; i < spec.nr; ++i) {
            const int n00 = id(i, j), n10 = id(i + 1, j);
            const int n11 = id(i + 1, j + 1), n01 = id(i, j + 1);
            if ((i + j) % 2 == 0) {
                out.cells.push_back({n00, n10, n11});
                out.cells.push_back({n00, n11, n01});
            } else {
                out.cells.push_back({n00, n10, n01});
                out.cells.push_back({n10, n11, n01});
            }
        }
    }

    for (int i = 0; i < spec.nr; ++i) {
        out.boundary.push_back({id(i, 0), id(i + 1, 0), BcKind::Wall, 0.0});
        out.boundary.push_back({id(i, spec.nphi), id(i + 1, spec.nphi), BcKind::Wall, 0.0});
    }
    for (int j = 0; j < spec.nphi; ++j) {
        out.boundary.push_back({id(0, j), id(0, j + 1), spec.inner.kind, spec.inner.pb});
        out.boundary.push_back({id(spec.nr, j), id(spec.nr, j + 1), spec.outer.kind, spec.outer.pb});
    }
    return out;
}

void write_mesh_file(const std::string& path, const MeshInput& mesh) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("write_mesh_file: cannot open " + path);
    f.precision(17);
    f << "htclag-mesh 1\n";
    f << "nodes " << mesh.nodes.size() << "\n";
    for (const Vec2& x : mesh.nodes) f << x.x << " " << x.y << "\n";
    f << "cells " << mesh.cells.size() << "\n";
    for (const auto& c : mesh.cells) f << c[0] + 1 << " " << c[1] + 1 << " " << c[2] + 1 << "\n";
    f << "boundary " << mesh.boundary.size() << "\n";
    for (const auto& b : mesh.boundary) {
        f << b.a + 1 << " " << b.b + 1 << " "
          << (b.kind == BcKind::Wall ? "wall" : "pressure");
        if (b.kind == BcKind::Pressure) f << " " << b.pb;
        f << "\n";
    }
    f << "periodic " << mesh.periodic.size() << "\n";
    for (const auto& p : mesh.periodic) f << p[0] + 1 << " " << p[1] + 1 << "\n";
}

MeshInput read_mesh_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("read_mesh_file: cannot open " + path);
    std::string magic;
    int version = 0;
    f >> magic >> version;
    if (magic != "htclag-mesh" || version != 1)
        throw std::runtime_error("read_mesh_file: not a htclag mesh file: " + path);

    MeshInput out;
    std::string section;
    std::size_t n = 0;
    f >> section >> n;
    if (section != "nodes") throw std::runtime_error("read_mesh_file: expected nodes section");
    out.nodes.resize(n);
    for (auto& x : out.nodes) f >> x.x >> x.y;

    f >> section >> n;
    if (section != "cells") throw std::runtime_error("read_mesh_file: expected cells section");
    out.cells.resize(n);
    for (auto& c : out.cells) {
        f >> c[0] >> c[1] >> c[2];
        --c[0], --c[1], --c[2];
    }

    f >> section >> n;
    if (section != "boundary") throw std::runtime_error("read_mesh_file: expected boundary section");
    out.boundary.resize(n);
    for (auto& b : out.boundary) {
        std::string kind;
        f >> b.a >> b.b >> kind;
        --b.a, --b.b;
        if (kind == "wall") {
            b.kind = BcKind::Wall;
        } else if (kind == "pressure") {
            b.kind = BcKind::Pressure;
            f >> b.pb;
        } else {
            throw std::runtime_error("read_mesh_file: unknown boundary kind " + kind);
        }
    }

    if (f >> section >> n) {
        if (section != "periodic")
            throw std::runtime_error("read_mesh_file: expected periodic section");
        out.periodic.resize(n);
        for (auto& p : out.periodic) {
            f >> p[0] >> p[1];
            --p[0], --p[1];
        }
    }
    if (!f && !f.eof()) throw std::runtime_error("read_mesh_file: parse error in " + path);
    return out;
}

} // namespace htclag
