#include "incdet/grid.hpp"

#include <cmath>

namespace incdet {

DiscreteDomain::DiscreteDomain(int nx_, int ny_, double Lx_, double Ly_)
    : nx(nx_), ny(ny_), Lx(Lx_), Ly(Ly_) {
    if (nx < 2 || ny < 2) throw config_error("grid: nx and ny must be >= 2");
    if (Lx <= 0 || Ly <= 0) throw config_error("grid: extents must be positive");
    h = Lx / nx;
    const double hy = Ly / ny;
    if (std::abs(hy - h) > 1e-12 * (h + hy))
        throw config_error("grid: cells must be square (Lx/nx == Ly/ny)");

    // Counterclockwise perimeter walk starting at node (0,0).
    boundary_nodes.reserve(2 * (nx + ny));
    double s = 0.0;
    for (int ix = 0; ix <= nx; ++ix) boundary_nodes.push_back({ix, 0, s}), s += h;
    for (int iy = 1; iy <= ny; ++iy) boundary_nodes.push_back({nx, iy, s}), s += h;
    for (int ix = nx - 1; ix >= 0; --ix) boundary_nodes.push_back({ix, ny, s}), s += h;
    for (int iy = ny - 1; iy >= 1; --iy) boundary_nodes.push_back({0, iy, s}), s += h;

    boundary_weights = VectorXd::Constant(n_boundary(), h);

    boundary_lookup_.assign(static_cast<size_t>(n_nodes_x()) * n_nodes_y(), -1);
    for (int b = 0; b < n_boundary(); ++b) {
        const auto& node = boundary_nodes[b];
        boundary_lookup_[static_cast<size_t>(node.ix) * n_nodes_y() + node.iy] = b;
    }
}

int DiscreteDomain::boundary_index(int ix, int iy) const {
    if (ix < 0 || iy < 0 || ix > nx || iy > ny) return -1;
    return boundary_lookup_[static_cast<size_t>(ix) * n_nodes_y() + iy];
}

int DiscreteDomain::boundary_index_at_arc(double s) const {
    const double per = perimeter();
    double u = std::fmod(s, per);
    if (u < 0) u += per;
    int b = static_cast<int>(std::lround(u / h)) % n_boundary();
    return b;
}

FieldXd DiscreteDomain::at_cell_centers(const FieldXd& f) const {
    return 0.25 * (f.block(0, 0, nx, ny) + f.block(1, 0, nx, ny) +
                   f.block(0, 1, nx, ny) + f.block(1, 1, nx, ny));
}

}  // namespace incdet
