#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "htclag/vec2.hpp"

namespace htclag {

enum class BcKind : std::uint8_t { Wall, Pressure };

/// Boundary condition tag for one boundary edge, given by its end nodes.
struct BoundaryEdgeTag {
    int a = -1;
    int b = -1;
    BcKind kind = BcKind::Wall;
    double pb = 0.0;
};

/// Raw mesh description, as produced by the generators or the mesh file reader.
struct MeshInput {
    std::vector<Vec2> nodes;
    std::vector<std::array<int, 3>> cells;
    std::vector<BoundaryEdgeTag> boundary;
    std::vector<std::array<int, 2>> periodic; // node identifications across periodic seams
};

/// Kinematic constraint resolved per mesh node.
enum class NodeKind : std::uint8_t {
    Interior, // no boundary edges
    Pressure, // only pressure-tagged boundary edges
    Wall,     // wall edges along a single fixed line (possibly plus pressure edges)
    Pinned    // wall edges along two independent lines; node never moves
};

/// One half of a boundary edge, attached to a node. `sign` encodes the ccw
/// traversal direction of the owning cell so the outward normal can be
/// recomputed from current positions.
struct BoundaryHalfEdge {
    int other = -1;
    std::int8_t sign = 1; // +1: cell traverses this->other, -1: other->this
    BcKind kind = BcKind::Wall;
    double pb = 0.0;
};

/// Static boundary data for one node degree of freedom.
struct NodeConstraint {
    NodeKind kind = NodeKind::Interior;
    Vec2 wall_normal;  // unit normal of the wall line (Wall)
    Vec2 wall_point;   // point on the wall line, frozen at t = 0
    double pb = 0.0;   // representative prescribed pressure (Pressure)
    bool has_pressure = false;
};

/// Unstructured triangular mesh with moving nodes and fixed topology.
///
/// Periodic boundaries are realized by node identification: every physical
/// node maps to a representative degree of freedom (dof); image nodes follow
/// their dof at a constant offset. Cells keep referencing physical nodes so
/// all geometry is computed without wraparound logic.
class Mesh {
public:
    // geometry (mutable) and topology (fixed after build)
    std::vector<Vec2> pos;
    std::vector<std::array<int, 3>> cells;

    // periodic identification
    std::vector<int> dof_of_node;   // node -> representative node id
    std::vector<Vec2> image_offset; // pos[n] - pos[dof_of_node[n]], constant
    std::vector<int> dof_nodes;     // representative node ids in dense dof order
    std::vector<int> dof_index;     // node -> dense dof index

    // dof -> incident corners (cell, local vertex), CSR
    std::vector<int> corner_start;
    std::vector<int> corner_cell;
    std::vector<std::uint8_t> corner_local;

    // cell -> cells sharing at least one dof (self excluded), CSR
    std::vector<int> nbr_start;
    std::vector<int> nbr_cell;

    // boundary
    std::vector<NodeConstraint> node_bc; // per dense dof
    std::vector<int> bhe_start;          // per dense dof, CSR into bhe
    std::vector<BoundaryHalfEdge> bhe;
    std::vector<int> boundary_dofs;

    int n_nodes() const { return static_cast<int>(pos.size()); }
    int n_cells() const { return static_cast<int>(cells.size()); }
    int n_dofs() const { return static_cast<int>(dof_nodes.size()); }

    /// Update image node positions from their dof positions.
    void sync_images();

    /// Position of the vertex `k` of cell `c`.
    Vec2 vertex(int c, int k) const { return pos[cells[c][k]]; }
};

/// Validate, orient and index a raw mesh. Throws std::invalid_argument on
/// degenerate cells, non-manifold edges, dangling nodes or bad tags.
Mesh build_mesh(const MeshInput& input);

} // namespace htclag
