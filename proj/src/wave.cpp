#include "incdet/wave.hpp"

#include <cmath>
#include <string>

namespace incdet {

namespace {

/// Tangential trapezoid weights along one axis (1/2 at the two ends).
VectorXd edge_weights(int n_nodes) {
    VectorXd w = VectorXd::Ones(n_nodes);
    w[0] = w[n_nodes - 1] = 0.5;
    return w;
}

}  // namespace

FieldXd node_quadrature_weights(const DiscreteDomain& dom) {
    const VectorXd wx = edge_weights(dom.n_nodes_x());
    const VectorXd wy = edge_weights(dom.n_nodes_y());
    return (wx * wy.transpose()).array();
}

double snapshot_inner(const DiscreteDomain& dom, const SpeedModel& speed, const FieldXd& a,
                      const FieldXd& b) {
    const FieldXd w = node_quadrature_weights(dom);
    return dom.h * dom.h * (w * speed.ctilde_nodes().pow(-2) * a * b).sum();
}

double snapshot_norm(const DiscreteDomain& dom, const SpeedModel& speed, const FieldXd& a) {
    return std::sqrt(std::max(0.0, snapshot_inner(dom, speed, a, a)));
}

WaveResult solve_wave(const DiscreteDomain& dom, const SpeedModel& speed,
                      const SignalSpace& space, const MatrixXd& source,
                      const WaveRecord& record) {
    const int nxn = dom.n_nodes_x(), nyn = dom.n_nodes_y();
    const int nt = space.nt, nb = dom.n_boundary();
    if (source.rows() != nt || source.cols() != nb)
        throw config_error("wave: source does not match the signal space");

    const double cfl_bound = space.cfl * dom.h / speed.max_ctilde();
    if (space.dt > cfl_bound * (1.0 + 1e-12))
        throw numerical_error("wave: CFL violated, dt = " + std::to_string(space.dt) +
                              " exceeds " + std::to_string(cfl_bound));

    const double h2_inv = 1.0 / (dom.h * dom.h);
    const FieldXd c2dt2 = speed.ctilde_nodes().square() * (space.dt * space.dt);

    // Ghost-source coefficient per boundary node: each mirrored arm of the
    // stencil contributes 2 f / (c0 h); corners carry two arms.
    VectorXd src_coef(nb);
    for (int b = 0; b < nb; ++b) {
        const auto& n = dom.boundary_nodes[b];
        const int arms = (n.ix == 0) + (n.ix == dom.nx) + (n.iy == 0) + (n.iy == dom.ny);
        src_coef[b] = 2.0 * arms / (speed.c0_nodes()(n.ix, n.iy) * dom.h);
    }

    FieldXd u_prev = FieldXd::Zero(nxn, nyn);
    FieldXd u_curr = FieldXd::Zero(nxn, nyn);
    FieldXd u_next(nxn, nyn), lap(nxn, nyn);

    WaveResult result;
    if (record.trace) result.trace = MatrixXd::Zero(nt, nb);
    if (record.energy_series) result.energies.reserve(nt);
    const FieldXd w_nodes = node_quadrature_weights(dom);
    const FieldXd density = speed.ctilde_nodes().pow(-2);
    const VectorXd wtx = edge_weights(nxn), wty = edge_weights(nyn);

    for (int n = 0; n < nt; ++n) {
        if (record.trace)
            for (int b = 0; b < nb; ++b)
                result.trace(n, b) = u_curr(dom.boundary_nodes[b].ix, dom.boundary_nodes[b].iy);
        if (record.snapshot_at_T && n == space.snapshot_step()) result.snapshot = u_curr;

        // 5-point Laplacian with mirror ghosts at the four edges.
        lap.block(1, 0, nxn - 2, nyn) = u_curr.block(0, 0, nxn - 2, nyn) +
                                        u_curr.block(2, 0, nxn - 2, nyn) -
                                        2.0 * u_curr.block(1, 0, nxn - 2, nyn);
        lap.row(0) = 2.0 * (u_curr.row(1) - u_curr.row(0));
        lap.row(nxn - 1) = 2.0 * (u_curr.row(nxn - 2) - u_curr.row(nxn - 1));
        lap.block(0, 1, nxn, nyn - 2) += u_curr.block(0, 0, nxn, nyn - 2) +
                                         u_curr.block(0, 2, nxn, nyn - 2) -
                                         2.0 * u_curr.block(0, 1, nxn, nyn - 2);
        lap.col(0) += 2.0 * (u_curr.col(1) - u_curr.col(0));
        lap.col(nyn - 1) += 2.0 * (u_curr.col(nyn - 2) - u_curr.col(nyn - 1));
        lap *= h2_inv;
        for (int b = 0; b < nb; ++b)
            lap(dom.boundary_nodes[b].ix, dom.boundary_nodes[b].iy) +=
                src_coef[b] * source(n, b);

        u_next = 2.0 * u_curr - u_prev + c2dt2 * lap;

        if (record.energy_series) {
            const FieldXd du = (u_next - u_curr) / space.dt;
            double e = 0.5 * dom.h * dom.h * (w_nodes * density * du.square()).sum();
            const FieldXd dxa = (u_curr.block(1, 0, nxn - 1, nyn) -
                                 u_curr.block(0, 0, nxn - 1, nyn));
            const FieldXd dxb = (u_next.block(1, 0, nxn - 1, nyn) -
                                 u_next.block(0, 0, nxn - 1, nyn));
            const FieldXd dya = (u_curr.block(0, 1, nxn, nyn - 1) -
                                 u_curr.block(0, 0, nxn, nyn - 1));
            const FieldXd dyb = (u_next.block(0, 1, nxn, nyn - 1) -
                                 u_next.block(0, 0, nxn, nyn - 1));
            e += 0.5 * ((dxa * dxb).matrix() * wty).sum();
            e += 0.5 * (wtx.transpose() * (dya * dyb).matrix()).sum();
            result.energies.push_back(e);
        }

        if (n % 100 == 99 && !u_next.allFinite())
            throw numerical_error("wave: solution lost finiteness at step " + std::to_string(n));

        u_prev.swap(u_curr);
        u_curr.swap(u_next);
    }
    return result;
}

}  // namespace incdet
