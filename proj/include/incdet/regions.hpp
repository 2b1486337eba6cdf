#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incdet/eikonal.hpp"
#include "incdet/grid.hpp"
#include "incdet/speed.hpp"
#include "incdet/types.hpp"

namespace incdet {

/**
 * A time budget tau on the boundary, one value per boundary node,
 * clipped to [0, T] before use. The descriptor records how it was built.
 */
struct TauFunction {
    VectorXd values;
    std::string descriptor;

    static TauFunction constant(const DiscreteDomain& dom, double s);
    /// Cone tau_r(y) = max(0, r - dhat(x, y)) around boundary node x;
    /// dhat holds travel times from x to every boundary node.
    static TauFunction cone(const VectorXd& dhat_from_x, double r);
    /// Value r on one contiguous boundary window, floor elsewhere.
    static TauFunction window(const DiscreteDomain& dom, int b_first, int b_count, double r,
                              double floor_value);

    TauFunction clipped(double T) const;
    TauFunction operator+(double eps) const;
};

/** Boolean region over grid cells plus the density used for its volume. */
struct RegionMask {
    FieldXb cells;
    FieldXd density_cells;

    Index count() const { return cells.cast<Index>().sum(); }
    bool contains(const RegionMask& other) const {
        return (!other.cells || cells).all();
    }
};

/// Sum of density * h^2 over masked cells.
double region_volume(const RegionMask& mask, double h);

/**
 * Domain of influence field: phi(x) = min over boundary nodes y of
 * (d(x, y) - tau(y)), one multi-source sweep with seed offsets -tau(y).
 * The region {phi <= 0} collects every point reachable from some
 * boundary point within its budget.
 */
DistanceField influence_field(const DiscreteDomain& dom, const FieldXd& metric_speed_nodes,
                              const TauFunction& tau);

/// Cells whose center satisfies phi <= 0, with the given volume density.
RegionMask domain_of_influence(const DiscreteDomain& dom, const FieldXd& metric_speed_nodes,
                               const TauFunction& tau, const FieldXd& density_cells);

/// Node-level indicator of {phi <= 0}, for comparing against wave snapshots.
FieldXd influence_indicator_nodes(const DistanceField& field);

/// Volume of {phi <= 0} with linear sub-cell coverage across the front,
/// the smooth counterpart of domain_of_influence + region_volume.
double influence_volume(const DiscreteDomain& dom, const FieldXd& metric_speed_nodes,
                        const TauFunction& tau, const FieldXd& density_cells,
                        const FieldXd& slowness_cells);

/**
 * Radius-parametrized volume scans. The field psi holds, per cell center,
 * the critical radius at which the cell joins the region, so volumes at
 * every r come from one sweep. Partial cell coverage is modeled linearly
 * across the front (width h * slowness), giving a C0 curve in r that a
 * second-difference test can consume.
 */
struct RadialVolumeScan {
    FieldXd psi_cells;       ///< critical radius per cell
    FieldXd slowness_cells;  ///< local front width scale
    FieldXd density_cells;
    FieldXd base_coverage;   ///< r-independent coverage floor (window scans)
    double h = 0.0;

    double volume_at(double r) const;
    double sharp_volume_at(double r) const;  ///< plain cell-center counting
};

/// Scan for the cone family around x: psi = distance from x through the
/// extended background, so {psi <= r} is the metric ball of radius r.
RadialVolumeScan ball_volume_scan(const DiscreteDomain& dom, const SpeedModel& speed,
                                  bool with_inclusion, int src_ix, int src_iy,
                                  const VectorXd& dhat_from_x);

/// Scan for the window family tau = r on a window, floor elsewhere.
RadialVolumeScan window_volume_scan(const DiscreteDomain& dom, const SpeedModel& speed,
                                    bool with_inclusion, int b_first, int b_count,
                                    double floor_value);

/** Result of the tangency separation probe. */
struct ScalingProbeResult {
    std::vector<double> eps;
    std::vector<double> differences;  ///< background volume minus inclusion volume
    std::optional<double> fitted_exponent;
    bool separation_detected = false;
};

/**
 * Probes how m(M(tau + eps)) - mtilde(Mtilde(tau + eps)) scales in eps.
 * Differences below 10 h^2 are dropped from the log-log fit (quadrature
 * noise floor). No positive difference at all means the region never
 * bites into the inclusion, reported as separation_detected = false.
 */
ScalingProbeResult epsilon_scaling_probe(const DiscreteDomain& dom, const SpeedModel& speed,
                                         const TauFunction& tau,
                                         const std::vector<double>& eps_list);

}  // namespace incdet
