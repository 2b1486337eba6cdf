#pragma once

#include <vector>

#include "incdet/types.hpp"

namespace incdet {

/** One node on the boundary traversal of the rectangle. */
struct BoundaryNode {
    int ix;    ///< node index in x, 0..nx
    int iy;    ///< node index in y, 0..ny
    double s;  ///< arc-length coordinate in [0, perimeter)
};

/**
 * Axis-aligned rectangular grid over the domain [0,Lx] x [0,Ly].
 *
 * nx, ny count cells; nodes are (nx+1) x (ny+1) with spacing h, so
 * nx*h = Lx and ny*h = Ly. Cells are indexed by their lower-left node.
 * boundary_nodes traverses the perimeter once, counterclockwise from
 * (0,0), and boundary_weights holds the quadrature weight per node for
 * the boundary measure (h / c0 for a conformal background; defaults to
 * the unit background c0 = 1).
 */
class DiscreteDomain {
  public:
    int nx = 0, ny = 0;
    double h = 0.0, Lx = 0.0, Ly = 0.0;
    std::vector<BoundaryNode> boundary_nodes;
    VectorXd boundary_weights;

    DiscreteDomain() = default;
    DiscreteDomain(int nx_, int ny_, double Lx_, double Ly_);

    int n_nodes_x() const { return nx + 1; }
    int n_nodes_y() const { return ny + 1; }
    int n_boundary() const { return static_cast<int>(boundary_nodes.size()); }
    double perimeter() const { return 2.0 * (Lx + Ly); }

    double node_x(int ix) const { return ix * h; }
    double node_y(int iy) const { return iy * h; }
    double cell_cx(int ix) const { return (ix + 0.5) * h; }
    double cell_cy(int iy) const { return (iy + 0.5) * h; }

    bool is_boundary_node(int ix, int iy) const {
        return ix == 0 || iy == 0 || ix == nx || iy == ny;
    }

    /// Index into boundary_nodes for a perimeter node, -1 for interior.
    int boundary_index(int ix, int iy) const;

    /// Boundary node nearest to arc coordinate s (wraps around).
    int boundary_index_at_arc(double s) const;

    FieldXd node_field(double value = 0.0) const {
        return FieldXd::Constant(n_nodes_x(), n_nodes_y(), value);
    }
    FieldXd cell_field(double value = 0.0) const {
        return FieldXd::Constant(nx, ny, value);
    }

    /// Interpolate a node field at cell centers (mean of the 4 corners).
    FieldXd at_cell_centers(const FieldXd& node_field) const;

  private:
    std::vector<int> boundary_lookup_;  // (nx+1)*(ny+1), -1 for interior
};

}  // namespace incdet
