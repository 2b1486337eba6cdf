#include "incdet/speed.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>

namespace incdet {

bool Inclusion::contains(double x, double y) const {
    switch (kind) {
        case Kind::Disk: {
            const double dx = x - cx, dy = y - cy;
            return dx * dx + dy * dy <= radius * radius;
        }
        case Kind::Triangle: {
            // Apex up at (cx, cy); base at cy - height.
            const double down = cy - y;
            if (down < 0 || down > height) return false;
            return std::abs(x - cx) <= down * std::tan(half_angle);
        }
        case Kind::HalfPlaneBelow:
            return y <= threshold;
    }
    return false;
}

SpeedModel::SpeedModel(const DiscreteDomain& dom, double c0_constant,
                       std::vector<Inclusion> inclusions)
    : c0_constant_(c0_constant), inclusions_(std::move(inclusions)) {
    if (c0_constant <= 0) throw config_error("speed: c0 must be positive");
    c0_nodes_ = dom.node_field(c0_constant);
    c0_cells_ = dom.cell_field(c0_constant);
    sample(dom);
}

SpeedModel::SpeedModel(const DiscreteDomain& dom, FieldXd c0_nodes,
                       std::vector<Inclusion> inclusions)
    : inclusions_(std::move(inclusions)), c0_nodes_(std::move(c0_nodes)) {
    if (c0_nodes_.rows() != dom.n_nodes_x() || c0_nodes_.cols() != dom.n_nodes_y())
        throw config_error("speed: c0 field does not match the grid");
    if ((c0_nodes_ <= 0.0).any()) throw config_error("speed: c0 must be positive");
    c0_cells_ = dom.at_cell_centers(c0_nodes_);
    sample(dom);
}

void SpeedModel::sample(const DiscreteDomain& dom) {
    for (const auto& inc : inclusions_) {
        if (inc.contrast <= 0) throw config_error("speed: contrast must be positive");
    }
    ctilde_nodes_ = c0_nodes_;
    for (int ix = 0; ix <= dom.nx; ++ix)
        for (int iy = 0; iy <= dom.ny; ++iy) {
            const double x = dom.node_x(ix), y = dom.node_y(iy);
            for (const auto& inc : inclusions_)
                if (inc.contains(x, y)) ctilde_nodes_(ix, iy) = c0_nodes_(ix, iy) * inc.contrast;
        }

    sigma_cells_ = FieldXb::Constant(dom.nx, dom.ny, false);
    contrast_cells_ = dom.cell_field(1.0);
    ctilde_cells_ = c0_cells_;
    for (int ix = 0; ix < dom.nx; ++ix)
        for (int iy = 0; iy < dom.ny; ++iy) {
            const double x = dom.cell_cx(ix), y = dom.cell_cy(iy);
            for (const auto& inc : inclusions_)
                if (inc.contains(x, y)) {
                    sigma_cells_(ix, iy) = true;
                    contrast_cells_(ix, iy) = inc.contrast;
                    ctilde_cells_(ix, iy) = c0_cells_(ix, iy) * inc.contrast;
                }
        }
}

double SpeedModel::min_contrast() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& inc : inclusions_) m = std::min(m, inc.contrast);
    return inclusions_.empty() ? 1.0 : m;
}

VectorXd SpeedModel::boundary_metric_weights(const DiscreteDomain& dom) const {
    VectorXd w(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& node = dom.boundary_nodes[b];
        w[b] = dom.h / c0_nodes_(node.ix, node.iy);
    }
    return w;
}

int SpeedModel::boundary_collar_cells(const DiscreteDomain& dom) const {
    int collar = std::min(dom.nx, dom.ny);
    for (int ix = 0; ix < dom.nx; ++ix)
        for (int iy = 0; iy < dom.ny; ++iy)
            if (sigma_cells_(ix, iy)) {
                const int d = std::min(std::min(ix, dom.nx - 1 - ix),
                                       std::min(iy, dom.ny - 1 - iy));
                collar = std::min(collar, d);
            }
    return collar;
}

void SpeedModel::require_interior_inclusion(const DiscreteDomain& dom, int min_collar) const {
    if (!has_inclusion()) return;
    if (boundary_collar_cells(dom) < min_collar)
        throw config_error("speed: inclusion must stay at least " +
                           std::to_string(min_collar) + " cells away from the boundary");
}

std::string SpeedModel::content_hash(const DiscreteDomain& dom) const {
    // FNV-1a over a canonical text rendering.
    char buf[256];
    uint64_t hash = 1469598103934665603ull;
    auto mix = [&hash](const char* s, int n) {
        for (int i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(s[i]);
            hash *= 1099511628211ull;
        }
    };
    int n = std::snprintf(buf, sizeof buf, "grid %d %d %.17g %.17g;", dom.nx, dom.ny, dom.Lx, dom.Ly);
    mix(buf, n);
    if (c0_constant_) {
        n = std::snprintf(buf, sizeof buf, "c0 %.17g;", *c0_constant_);
        mix(buf, n);
    } else {
        for (Index i = 0; i < c0_nodes_.size(); ++i) {
            n = std::snprintf(buf, sizeof buf, "%.17g,", c0_nodes_.data()[i]);
            mix(buf, n);
        }
    }
    for (const auto& inc : inclusions_) {
        n = std::snprintf(buf, sizeof buf, "inc %d %.17g %.17g %.17g %.17g %.17g %.17g %.17g;",
                          static_cast<int>(inc.kind), inc.cx, inc.cy, inc.radius, inc.height,
                          inc.half_angle, inc.threshold, inc.contrast);
        mix(buf, n);
    }
    n = std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return std::string(buf, buf + n);
}

}  // namespace incdet
