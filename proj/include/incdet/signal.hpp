#pragma once

#include "incdet/grid.hpp"
#include "incdet/speed.hpp"
#include "incdet/types.hpp"

namespace incdet {

/**
 * Discretization of the measurement space L^2((0, 2T) x boundary).
 * A signal is a plain (nt x n_boundary) matrix sampled at t_k = k * dt,
 * k = 0 .. nt-1, with nt * dt = 2T exactly. The inner product combines
 * the flat time weight dt with the per-node boundary weights h / c0.
 *
 * nt is even, so the half-way snapshot time T falls on a step, and when
 * a source basis with n_bin time bins is requested nt is rounded up to a
 * multiple of 2 * n_bin so every bin holds a whole number of samples.
 */
struct SignalSpace {
    int nt = 0;
    double dt = 0.0;
    double T = 0.0;
    double cfl = 0.5;
    VectorXd boundary_weights;

    int n_b() const { return static_cast<int>(boundary_weights.size()); }
    int snapshot_step() const { return nt / 2; }
    int samples_to_T() const { return nt / 2; }

    MatrixXd zero_signal() const { return MatrixXd::Zero(nt, n_b()); }
};

/// Build the time grid for a run: dt <= cfl * h / max(ctilde), rounded so
/// that nt is a multiple of 2 * bin_granularity.
SignalSpace make_signal_space(const DiscreteDomain& dom, const SpeedModel& speed, double T,
                              double cfl, int bin_granularity = 1);

double signal_inner(const SignalSpace& space, const MatrixXd& f, const MatrixXd& g);
double signal_norm(const SignalSpace& space, const MatrixXd& f);

}  // namespace incdet
