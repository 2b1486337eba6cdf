#pragma once

#include <vector>

#include "incdet/regions.hpp"
#include "incdet/speed.hpp"

namespace incdet {

/** Line segment emitted from a boundary point toward the inclusion. */
struct BoundarySegment {
    double s = 0;             ///< arc coordinate of the boundary point
    double x = 0, y = 0;      ///< boundary point position
    double dir_x = 0, dir_y = 0;  ///< unit direction (zero when degenerate)
    double length = 0;
};

/**
 * Clearance field phi(z) = min over boundary nodes y of
 * (dhat(z, y) - r_sigma(y)), where dhat runs through the background
 * extended past the domain. Positive phi means z is outside every
 * boundary-centered ball of radius r_sigma; the hull is {phi > 0}.
 * Constant backgrounds use exact straight-line distances, smooth ones a
 * fast-marching sweep on a padded grid.
 */
FieldXd clearance_field(const DiscreteDomain& dom, const SpeedModel& speed,
                        const VectorXd& r_sigma, int collar_cells = 0);

/// Hull mask over cells: the domain minus the union of boundary balls.
RegionMask boundary_distance_hull(const DiscreteDomain& dom, const SpeedModel& speed,
                                  const VectorXd& r_sigma);

/**
 * Per boundary node, a segment of length r_sigma(y) along the steepest
 * descent of the clearance field, i.e. toward the nearest reconstructed
 * inclusion point. Zero-radius nodes emit zero-length segments.
 */
std::vector<BoundarySegment> emit_segments(const DiscreteDomain& dom, const SpeedModel& speed,
                                           const VectorXd& r_sigma);

}  // namespace incdet
