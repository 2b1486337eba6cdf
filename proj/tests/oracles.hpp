// Test-only reference computations, kept independent of the library's
// solvers: travel times come from an 8-connected Dijkstra sweep on a
// refined grid, geometry from closed forms.
#pragma once

#include <cmath>
#include <functional>
#include <queue>
#include <vector>

#include <Eigen/Dense>

namespace test_oracle {

using SpeedFn = std::function<double(double, double)>;

/// 8-connected Dijkstra travel time on a grid refined by `refine`,
/// restricted to the rectangle [0, nx*h] x [0, ny*h]. Edge cost is the
/// Euclidean step length times the mean slowness of its endpoints.
/// Returns arrival times on the coarse nodes.
inline Eigen::ArrayXXd dijkstra_travel_time(int nx, int ny, double h, const SpeedFn& speed,
                                            int seed_ix, int seed_iy, int refine = 4) {
    const int fx = refine * nx + 1, fy = refine * ny + 1;
    const double fh = h / refine;
    std::vector<double> dist(static_cast<size_t>(fx) * fy,
                             std::numeric_limits<double>::infinity());
    std::vector<double> slowness(dist.size());
    auto id = [fy](int i, int j) { return static_cast<size_t>(i) * fy + j; };
    for (int i = 0; i < fx; ++i)
        for (int j = 0; j < fy; ++j) slowness[id(i, j)] = 1.0 / speed(i * fh, j * fh);

    using Item = std::pair<double, size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    const size_t s0 = id(seed_ix * refine, seed_iy * refine);
    dist[s0] = 0.0;
    queue.push({0.0, s0});
    const int dxs[8] = {-1, -1, -1, 0, 0, 1, 1, 1};
    const int dys[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    while (!queue.empty()) {
        auto [d, u] = queue.top();
        queue.pop();
        if (d > dist[u]) continue;
        const int ui = static_cast<int>(u / fy), uj = static_cast<int>(u % fy);
        for (int k = 0; k < 8; ++k) {
            const int vi = ui + dxs[k], vj = uj + dys[k];
            if (vi < 0 || vi >= fx || vj < 0 || vj >= fy) continue;
            const size_t v = id(vi, vj);
            const double step = fh * std::hypot(static_cast<double>(dxs[k]),
                                                static_cast<double>(dys[k]));
            const double nd = d + step * 0.5 * (slowness[u] + slowness[v]);
            if (nd < dist[v]) {
                dist[v] = nd;
                queue.push({nd, v});
            }
        }
    }

    Eigen::ArrayXXd coarse(nx + 1, ny + 1);
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j) coarse(i, j) = dist[id(i * refine, j * refine)];
    return coarse;
}

inline double dist_point_to_disk(double px, double py, double cx, double cy, double radius) {
    return std::max(0.0, std::hypot(px - cx, py - cy) - radius);
}

}  // namespace test_oracle
