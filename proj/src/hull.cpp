#include "incdet/hull.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace incdet {

namespace {

FieldXd clearance_exact_euclidean(const DiscreteDomain& dom, double c0,
                                  const VectorXd& r_sigma) {
    const int nxn = dom.n_nodes_x(), nyn = dom.n_nodes_y();
    FieldXd phi = FieldXd::Constant(nxn, nyn, std::numeric_limits<double>::infinity());
    VectorXd xs(nxn), ys(nyn);
    for (int i = 0; i < nxn; ++i) xs[i] = dom.node_x(i);
    for (int j = 0; j < nyn; ++j) ys[j] = dom.node_y(j);
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& node = dom.boundary_nodes[b];
        const double bx = dom.node_x(node.ix), by = dom.node_y(node.iy);
        const VectorXd dx2 = (xs.array() - bx).square();
        const VectorXd dy2 = (ys.array() - by).square();
        const FieldXd dist =
            (dx2.replicate(1, nyn) + dy2.transpose().replicate(nxn, 1)).array().sqrt() / c0;
        phi = phi.min(dist - r_sigma[b]);
    }
    return phi;
}

FieldXd clearance_marching(const DiscreteDomain& dom, const SpeedModel& speed,
                           const VectorXd& r_sigma, int collar) {
    const int nxn = dom.n_nodes_x() + 2 * collar;
    const int nyn = dom.n_nodes_y() + 2 * collar;
    FieldXd padded_speed(nxn, nyn);
    for (int ix = 0; ix < nxn; ++ix) {
        const int cx = std::clamp(ix - collar, 0, dom.nx);
        for (int iy = 0; iy < nyn; ++iy) {
            const int cy = std::clamp(iy - collar, 0, dom.ny);
            padded_speed(ix, iy) = speed.c0_nodes()(cx, cy);
        }
    }
    DiscreteDomain padded(dom.nx + 2 * collar, dom.ny + 2 * collar,
                          (dom.nx + 2 * collar) * dom.h, (dom.ny + 2 * collar) * dom.h);
    std::vector<EikonalSeed> seeds(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& node = dom.boundary_nodes[b];
        seeds[b] = {node.ix + collar, node.iy + collar, -r_sigma[b]};
    }
    FieldXd phi = fast_march(padded, padded_speed, seeds);
    return phi.block(collar, collar, dom.n_nodes_x(), dom.n_nodes_y());
}

}  // namespace

FieldXd clearance_field(const DiscreteDomain& dom, const SpeedModel& speed,
                        const VectorXd& r_sigma, int collar_cells) {
    if (r_sigma.size() != dom.n_boundary())
        throw config_error("hull: one radius per boundary node required");
    if ((r_sigma.array() < 0.0).any())
        throw config_error("hull: radii must be nonnegative");
    if (speed.c0_is_constant())
        return clearance_exact_euclidean(dom, speed.c0_constant_value(), r_sigma);
    int collar = collar_cells;
    if (collar <= 0) {
        const double reach = r_sigma.maxCoeff() * speed.c0_nodes().maxCoeff();
        collar = std::max(4, static_cast<int>(std::ceil(reach / dom.h)));
        collar = std::min(collar, 2 * std::max(dom.nx, dom.ny));
    }
    return clearance_marching(dom, speed, r_sigma, collar);
}

RegionMask boundary_distance_hull(const DiscreteDomain& dom, const SpeedModel& speed,
                                  const VectorXd& r_sigma) {
    const FieldXd phi = clearance_field(dom, speed, r_sigma);
    RegionMask mask;
    mask.cells = dom.at_cell_centers(phi) > 0.0;
    mask.density_cells = speed.background_density_cells();
    return mask;
}

std::vector<BoundarySegment> emit_segments(const DiscreteDomain& dom, const SpeedModel& speed,
                                           const VectorXd& r_sigma) {
    const FieldXd phi = clearance_field(dom, speed, r_sigma);
    std::vector<BoundarySegment> out(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& node = dom.boundary_nodes[b];
        BoundarySegment seg;
        seg.s = node.s;
        seg.x = dom.node_x(node.ix);
        seg.y = dom.node_y(node.iy);
        seg.length = r_sigma[b];
        // Probe the field one node inside; central differences are clean there.
        const int jx = std::clamp(node.ix + (node.ix == 0 ? 1 : node.ix == dom.nx ? -1 : 0), 1,
                                  dom.nx - 1);
        const int jy = std::clamp(node.iy + (node.iy == 0 ? 1 : node.iy == dom.ny ? -1 : 0), 1,
                                  dom.ny - 1);
        const double gx = (phi(jx + 1, jy) - phi(jx - 1, jy)) / (2.0 * dom.h);
        const double gy = (phi(jx, jy + 1) - phi(jx, jy - 1)) / (2.0 * dom.h);
        const double norm = std::hypot(gx, gy);
        if (norm > 1e-12 && r_sigma[b] > 0.0) {
            seg.dir_x = -gx / norm;
            seg.dir_y = -gy / norm;
        }
        out[b] = seg;
    }
    return out;
}

}  // namespace incdet
