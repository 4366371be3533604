#include "htclag/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace htclag {

namespace {

double signed_area(Vec2 a, Vec2 b, Vec2 c) {
    return 0.5 * cross(b - a, c - a);
}

int uf_find(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

std::uint64_t edge_key(int a, int b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

} // namespace

void Mesh::sync_images() {
    for (int n = 0; n < n_nodes(); ++n) {
        const int d = dof_of_node[n];
        if (d != n) pos[n] = pos[d] + image_offset[n];
    }
}

Mesh build_mesh(const MeshInput& input) {
    const int nn = static_cast<int>(input.nodes.size());
    const int nc = static_cast<int>(input.cells.size());
    if (nc < 1) throw std::invalid_argument("build_mesh: mesh needs at least one cell");

    Mesh m;
    m.pos = input.nodes;
    m.cells = input.cells;

    std::vector<char> referenced(nn, 0);
    for (int c = 0; c < nc; ++c) {
        for (int k = 0; k < 3; ++k) {
            const int n = m.cells[c][k];
            if (n < 0 || n >= nn)
                throw std::invalid_argument("build_mesh: cell " + std::to_string(c) +
                                            " references node " + std::to_string(n) +
                                            " out of range");
            referenced[n] = 1;
        }
    }

    // Periodic identification via union-find; the smallest node id in each
    // class becomes the representative so builds are deterministic.
    std::vector<int> parent(nn);
    for (int i = 0; i < nn; ++i) parent[i] = i;
    for (const auto& pr : input.periodic) {
        if (pr[0] < 0 || pr[0] >= nn || pr[1] < 0 || pr[1] >= nn)
            throw std::invalid_argument("build_mesh: periodic pair references node out of range");
        int ra = uf_find(parent, pr[0]);
        int rb = uf_find(parent, pr[1]);
        if (ra == rb) continue;
        if (ra > rb) std::swap(ra, rb);
        parent[rb] = ra;
        referenced[pr[0]] |= referenced[pr[1]];
    }
    m.dof_of_node.resize(nn);
    for (int i = 0; i < nn; ++i) m.dof_of_node[i] = uf_find(parent, i);
    for (const auto& pr : input.periodic) {
        referenced[pr[0]] = referenced[m.dof_of_node[pr[0]]];
        referenced[pr[1]] = referenced[m.dof_of_node[pr[1]]];
    }
    for (int n = 0; n < nn; ++n)
        if (!referenced[m.dof_of_node[n]])
            throw std::invalid_argument("build_mesh: dangling node " + std::to_string(n));

    m.image_offset.assign(nn, Vec2{});
    for (int n = 0; n < nn; ++n)
        m.image_offset[n] = m.pos[n] - m.pos[m.dof_of_node[n]];

    m.dof_index.assign(nn, -1);
    for (int n = 0; n < nn; ++n) {
        if (m.dof_of_node[n] == n) {
            m.dof_index[n] = static_cast<int>(m.dof_nodes.size());
            m.dof_nodes.push_back(n);
        }
    }
    for (int n = 0; n < nn; ++n) m.dof_index[n] = m.dof_index[m.dof_of_node[n]];
    const int nd = m.n_dofs();

    // Orientation: normalize every cell to counterclockwise once.
    for (int c = 0; c < nc; ++c) {
        auto& cell = m.cells[c];
        const double A = signed_area(m.pos[cell[0]], m.pos[cell[1]], m.pos[cell[2]]);
        if (A == 0.0)
            throw std::invalid_argument("build_mesh: degenerate cell " + std::to_string(c) +
                                        " (zero area)");
        if (A < 0.0) std::swap(cell[1], cell[2]);
    }

    // Edge census on dof pairs: periodic seam edges pair up into interior
    // edges, anything present more than twice is non-manifold.
    struct EdgeUse {
        int count = 0;
        int cell = -1;
        int from = -1, to = -1; // physical nodes in ccw traversal order
    };
    std::unordered_map<std::uint64_t, EdgeUse> edges;
    edges.reserve(static_cast<std::size_t>(nc) * 2);
    for (int c = 0; c < nc; ++c) {
        for (int k = 0; k < 3; ++k) {
            const int a = m.cells[c][k];
            const int b = m.cells[c][(k + 1) % 3];
            const int da = m.dof_index[a];
            const int db = m.dof_index[b];
            if (da == db)
                throw std::invalid_argument("build_mesh: degenerate cell " + std::to_string(c) +
                                            " (repeated node)");
            auto& e = edges[edge_key(da, db)];
            if (++e.count > 2)
                throw std::invalid_argument("build_mesh: non-manifold edge in cell " +
                                            std::to_string(c));
            e.cell = c;
            e.from = a;
            e.to = b;
        }
    }

    // Boundary tags, keyed by dof pair.
    struct Tag {
        BcKind kind;
        double pb;
    };
    std::unordered_map<std::uint64_t, Tag> tags;
    for (const auto& t : input.boundary) {
        if (t.a < 0 || t.a >= nn || t.b < 0 || t.b >= nn)
            throw std::invalid_argument("build_mesh: boundary tag references node out of range");
        const std::uint64_t key = edge_key(m.dof_index[t.a], m.dof_index[t.b]);
        auto it = edges.find(key);
        if (it == edges.end() || it->second.count != 1)
            throw std::invalid_argument("build_mesh: boundary tag on a non-boundary edge");
        tags[key] = Tag{t.kind, t.pb};
    }

    // Boundary half-edges per dof. Untagged boundary edges default to walls.
    std::vector<std::vector<BoundaryHalfEdge>> bhe_of(nd);
    for (const auto& [key, e] : edges) {
        if (e.count != 1) continue;
        BcKind kind = BcKind::Wall;
        double pb = 0.0;
        if (auto it = tags.find(key); it != tags.end()) {
            kind = it->second.kind;
            pb = it->second.pb;
        }
        bhe_of[m.dof_index[e.from]].push_back({e.to, +1, kind, pb});
        bhe_of[m.dof_index[e.to]].push_back({e.from, -1, kind, pb});
    }
    // Deterministic order within each dof.
    for (auto& v : bhe_of)
        std::sort(v.begin(), v.end(), [](const BoundaryHalfEdge& x, const BoundaryHalfEdge& y) {
            return x.other != y.other ? x.other < y.other : x.sign < y.sign;
        });

    m.bhe_start.assign(nd + 1, 0);
    for (int d = 0; d < nd; ++d) m.bhe_start[d + 1] = m.bhe_start[d] + static_cast<int>(bhe_of[d].size());
    m.bhe.reserve(m.bhe_start[nd]);
    for (int d = 0; d < nd; ++d)
        m.bhe.insert(m.bhe.end(), bhe_of[d].begin(), bhe_of[d].end());

    // Resolve the kinematic constraint of every boundary dof from its wall
    // edge directions at t = 0.
    m.node_bc.assign(nd, NodeConstraint{});
    for (int d = 0; d < nd; ++d) {
        if (bhe_of[d].empty()) continue;
        m.boundary_dofs.push_back(d);
        NodeConstraint& nb = m.node_bc[d];
        const Vec2 xp = m.pos[m.dof_nodes[d]];

        Vec2 wall_dir{};
        bool have_wall = false, pinned = false;
        double pb_len = 0.0, pb_sum = 0.0;
        for (const auto& h : bhe_of[d]) {
            if (h.kind == BcKind::Pressure) {
                nb.has_pressure = true;
                const double len = (m.pos[h.other] - xp).norm();
                pb_len += len;
                pb_sum += len * h.pb;
                continue;
            }
            Vec2 dir = m.pos[h.other] - xp;
            const double len = dir.norm();
            if (len <= 0.0) throw std::invalid_argument("build_mesh: zero-length boundary edge");
            dir *= 1.0 / len;
            if (!have_wall) {
                wall_dir = dir;
                have_wall = true;
            } else if (std::abs(cross(wall_dir, dir)) > 1e-12) {
                pinned = true;
            }
        }
        if (pinned) {
            nb.kind = NodeKind::Pinned;
        } else if (have_wall) {
            nb.kind = NodeKind::Wall;
            Vec2 n = outward_normal_dir(wall_dir);
            n *= 1.0 / n.norm();
            nb.wall_normal = n;
            nb.wall_point = xp;
        } else {
            nb.kind = NodeKind::Pressure;
        }
        if (nb.has_pressure && pb_len > 0.0) nb.pb = pb_sum / pb_len;
    }

    // dof -> corner CSR.
    m.corner_start.assign(nd + 1, 0);
    for (int c = 0; c < nc; ++c)
        for (int k = 0; k < 3; ++k) ++m.corner_start[m.dof_index[m.cells[c][k]] + 1];
    for (int d = 0; d < nd; ++d) m.corner_start[d + 1] += m.corner_start[d];
    m.corner_cell.resize(m.corner_start[nd]);
    m.corner_local.resize(m.corner_start[nd]);
    {
        std::vector<int> fill(m.corner_start.begin(), m.corner_start.end() - 1);
        for (int c = 0; c < nc; ++c) {
            for (int k = 0; k < 3; ++k) {
                const int d = m.dof_index[m.cells[c][k]];
                const int slot = fill[d]++;
                m.corner_cell[slot] = c;
                m.corner_local[slot] = static_cast<std::uint8_t>(k);
            }
        }
    }

    // cell -> node-sharing neighbors CSR (for the a posteriori detector).
    {
        std::vector<int> scratch;
        std::vector<std::vector<int>> nbrs(nc);
        for (int c = 0; c < nc; ++c) {
            scratch.clear();
            for (int k = 0; k < 3; ++k) {
                const int d = m.dof_index[m.cells[c][k]];
                for (int i = m.corner_start[d]; i < m.corner_start[d + 1]; ++i) {
                    const int oc = m.corner_cell[i];
                    if (oc != c) scratch.push_back(oc);
                }
            }
            std::sort(scratch.begin(), scratch.end());
            scratch.erase(std::unique(scratch.begin(), scratch.end()), scratch.end());
            nbrs[c] = scratch;
        }
        m.nbr_start.assign(nc + 1, 0);
        for (int c = 0; c < nc; ++c) m.nbr_start[c + 1] = m.nbr_start[c] + static_cast<int>(nbrs[c].size());
        m.nbr_cell.reserve(m.nbr_start[nc]);
        for (int c = 0; c < nc; ++c) m.nbr_cell.insert(m.nbr_cell.end(), nbrs[c].begin(), nbrs[c].end());
    }

    return m;
}

} // namespace htclag
