#pragma once

#include <functional>
#include <string>
#include <vector>

#include "incdet/control.hpp"
#include "incdet/hull.hpp"

namespace incdet {

/// Sampled volume map r -> value for one boundary point.
using VolumeFn = std::function<double(double)>;

/// Travel times from boundary node b to every boundary node through the
/// extended background (straight lines for a constant background).
VectorXd boundary_lead_times(const DiscreteDomain& dom, const SpeedModel& speed, int b,
                             int collar_cells = 0);

struct LocateOptions {
    double r_max = 0.5;
    double tol_vol = 1e-3;  ///< volume gap that counts as separation
    double tol_r = 1e-2;    ///< bisection stops at this bracket width
};

enum class LocateFlag { Separated, NoInclusionSeen, InconsistentData };

struct LocateResult {
    double r_estimate = 0.0;
    LocateFlag flag = LocateFlag::Separated;
    double gap = 0.0;  ///< background-minus-measured volume at the decision point
    int evaluations = 0;
};

/**
 * Distance to the inclusion from one boundary point, from volume data
 * alone: the background and measured volumes of the ball family agree
 * below the distance and separate above it, so a bisection on
 * "gap > tol_vol" brackets the transition. Never-firing predicates
 * report the scan ceiling; a measured volume exceeding the background
 * one beyond tolerance is flagged inconsistent (slow inclusions break
 * the monotonicity assumption and are rejected upstream).
 */
LocateResult locate_known_bg(const VolumeFn& background, const VolumeFn& measured,
                             const LocateOptions& opt);

struct ProfilePoint {
    int b = 0;          ///< boundary node index
    double s = 0.0;     ///< arc coordinate
    double r_est = 0.0;
    std::string method;  ///< bisection_known_bg | second_diff_unknown_bg
    double gap = 0.0;
    double q_slope = 0.0;
    std::string flags;
};

struct DistanceProfile {
    std::vector<ProfilePoint> points;

    /// Linear interpolation of r over every boundary node (periodic in s).
    VectorXd interpolate_all(const DiscreteDomain& dom) const;
};

/// Oracle-side scan: both volume maps come from travel-time geometry.
DistanceProfile scan_boundary_oracle(const DiscreteDomain& dom, const SpeedModel& speed,
                                     const std::vector<int>& sample_nodes,
                                     const LocateOptions& opt);

/** Measured-side volume source for the scan: the connecting operator of
 *  the measured medium plus the known background for the model side. */
struct ControlVolumeSource {
    const ConnectingOperator* K = nullptr;
    const DiscreteDomain* dom = nullptr;
    const SpeedModel* background = nullptr;  ///< inclusion-free model
    std::vector<double> alphas;
    double cg_tol = 1e-8;
    int max_iterations = -1;

    double measured(const TauFunction& tau) const;
    double model(const TauFunction& tau) const;
};

DistanceProfile scan_boundary_control(const ControlVolumeSource& source,
                                      const std::vector<int>& sample_nodes,
                                      const LocateOptions& opt);

struct SmoothnessOptions {
    std::vector<double> r_grid;
    std::vector<double> eps_list;   ///< at least 3 entries
    double q_breakdown = -0.25;     ///< divergence slope declaring breakdown
    double q_smooth = -0.1;         ///< slopes above this count as smooth
};

struct DivergenceSample {
    double r = 0.0;
    double q = 0.0;
    std::vector<double> second_diffs;
};

struct SmoothnessResult {
    bool found = false;
    double r_estimate = 0.0;
    std::vector<DivergenceSample> profile;
};

/**
 * Unknown-background test: second differences of the volume of the
 * spike family in r stay bounded while the ball misses the inclusion
 * and blow up like eps^(-1/2) at the touching radius. The slope q of
 * log |D2| against log eps is fitted per r; the smallest r with
 * q <= q_breakdown is reported.
 */
SmoothnessResult smoothness_test_unknown_bg(const VolumeFn& measured,
                                            const SmoothnessOptions& opt);

/// Oracle volume map for the spike family around boundary node b with
/// off-window budget h_offset.
VolumeFn spike_volume_fn_oracle(const DiscreteDomain& dom, const SpeedModel& speed, int b,
                                int window_nodes, double h_offset);

/// Runs the test for several off-window budgets and keeps the result
/// only when the breakdown radius is consistent across them.
SmoothnessResult smoothness_test_consistent(
    const std::function<VolumeFn(double)>& measured_for_offset,
    const std::vector<double>& h_offsets, const SmoothnessOptions& opt, double r_consistency);

/// Hull and direction segments from a (possibly sparse) distance profile,
/// through the given background model (pass an assumed background for the
/// distorted-image variant).
std::pair<RegionMask, std::vector<BoundarySegment>> reconstruct_hull_and_segments(
    const DiscreteDomain& dom, const SpeedModel& background, const DistanceProfile& profile);

}  // namespace incdet
