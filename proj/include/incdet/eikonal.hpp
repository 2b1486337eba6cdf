#pragma once

#include <vector>

#include "incdet/grid.hpp"
#include "incdet/types.hpp"

namespace incdet {

/// Source node for a travel-time sweep, with its initial arrival value.
struct EikonalSeed {
    int ix = 0, iy = 0;
    double value = 0.0;
};

enum class MetricTag { Background, Total, Extended };

/** Travel-time field phi on grid nodes together with the metric it used. */
struct DistanceField {
    FieldXd phi;
    MetricTag metric = MetricTag::Background;
};

/**
 * First-order fast marching for |grad phi| = 1/speed with multi-source
 * seeding phi(seed) = value. Upwind Godunov update on the 4-neighbor
 * stencil, binary heap ordering; deterministic for fixed inputs. Seed
 * values may be negative (offset sources); a seed settles at the minimum
 * of its own value and arrivals from other seeds.
 */
FieldXd fast_march(const DiscreteDomain& dom, const FieldXd& speed_nodes,
                   const std::vector<EikonalSeed>& seeds);

/// fast_march seeded on every boundary node with values -tau (see regions.hpp).
std::vector<EikonalSeed> boundary_seeds(const DiscreteDomain& dom, const VectorXd& values);

/**
 * Travel time from the source node x through the plane extended past the
 * domain rectangle by `collar` cells (background speed replicated outward).
 * Returns the field restricted to the domain nodes. For a constant
 * background this equals straight-line travel time.
 */
FieldXd extended_travel_time(const DiscreteDomain& dom, const FieldXd& speed_nodes,
                             int src_ix, int src_iy, int collar);

}  // namespace incdet
