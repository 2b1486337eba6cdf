#pragma once

#include <optional>
#include <vector>

#include "incdet/signal.hpp"

namespace incdet {

struct WaveRecord {
    bool trace = true;
    bool snapshot_at_T = false;
    bool energy_series = false;
};

struct WaveResult {
    MatrixXd trace;                  ///< boundary values per time step
    std::optional<FieldXd> snapshot;  ///< field at t = T
    std::vector<double> energies;     ///< staggered discrete energy per step
};

/**
 * Leapfrog scheme for u_tt = ctilde^2 lap(u) with zero initial data and
 * the Neumann source f injected through mirror ghost nodes:
 * u_ghost = u_inner + 2 h f / c0 (the boundary normal is metric
 * normalized, so the Euclidean normal derivative is f / c0).
 *
 * Refuses to run when dt exceeds the configured CFL bound; aborts with
 * the step index when the field stops being finite (checked every 100
 * steps).
 */
WaveResult solve_wave(const DiscreteDomain& dom, const SpeedModel& speed,
                      const SignalSpace& space, const MatrixXd& source,
                      const WaveRecord& record = {});

/// Trapezoid node weights (1 inside, 1/2 on edges, 1/4 at corners).
FieldXd node_quadrature_weights(const DiscreteDomain& dom);

/// Inner product sum(w * density * f * g) * h^2 over nodes, density ctilde^-2.
double snapshot_inner(const DiscreteDomain& dom, const SpeedModel& speed, const FieldXd& a,
                      const FieldXd& b);

double snapshot_norm(const DiscreteDomain& dom, const SpeedModel& speed, const FieldXd& a);

}  // namespace incdet
