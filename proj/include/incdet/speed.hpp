#pragma once

#include <optional>
#include <string>
#include <vector>

#include "incdet/grid.hpp"
#include "incdet/types.hpp"

namespace incdet {

/**
 * One inclusion primitive. The contrast multiplies the background speed
 * inside the primitive: total speed = c0 * contrast there. Contrast > 1
 * means a fast inclusion; contrast in (0,1) slows waves down and is
 * accepted for forward simulation only.
 */
struct Inclusion {
    enum class Kind { Disk, Triangle, HalfPlaneBelow };
    Kind kind = Kind::Disk;
    // Disk: center + radius. Triangle: apex pointing up, spanning
    // [apex_y - height, apex_y] with half-opening angle at the apex.
    // HalfPlaneBelow: everything with y <= threshold.
    double cx = 0, cy = 0;
    double radius = 0;
    double height = 0, half_angle = 0;
    double threshold = 0;
    double contrast = 2.0;

    bool contains(double x, double y) const;
};

/**
 * Wave speed on the grid: smooth positive background c0 plus an optional
 * inclusion region with a speed contrast. Values are sampled both at
 * nodes (for the solver and eikonal sweeps) and at cell centers (for
 * masks and volume quadrature). The background induces the Riemannian
 * densities: background volume density c0^-2 and, with the inclusion,
 * total density ctilde^-2.
 */
class SpeedModel {
  public:
    SpeedModel() = default;
    SpeedModel(const DiscreteDomain& dom, double c0_constant,
               std::vector<Inclusion> inclusions = {});
    SpeedModel(const DiscreteDomain& dom, FieldXd c0_nodes,
               std::vector<Inclusion> inclusions = {});

    const FieldXd& c0_nodes() const { return c0_nodes_; }
    const FieldXd& c0_cells() const { return c0_cells_; }
    const FieldXd& ctilde_nodes() const { return ctilde_nodes_; }
    const FieldXd& ctilde_cells() const { return ctilde_cells_; }
    const FieldXb& sigma_cells() const { return sigma_cells_; }
    const FieldXd& contrast_cells() const { return contrast_cells_; }

    bool c0_is_constant() const { return c0_constant_.has_value(); }
    double c0_constant_value() const { return *c0_constant_; }
    bool has_inclusion() const { return !inclusions_.empty(); }
    const std::vector<Inclusion>& inclusions() const { return inclusions_; }

    double max_ctilde() const { return ctilde_nodes_.maxCoeff(); }
    double min_contrast() const;

    FieldXd background_density_cells() const { return c0_cells_.pow(-2); }
    FieldXd total_density_cells() const { return ctilde_cells_.pow(-2); }

    /// Boundary quadrature weights h / c0 for the conformal boundary measure.
    VectorXd boundary_metric_weights(const DiscreteDomain& dom) const;

    /// Width, in whole cells, of the inclusion-free collar inside the boundary.
    int boundary_collar_cells(const DiscreteDomain& dom) const;

    /// Measurement and detection paths need the inclusion strictly interior.
    void require_interior_inclusion(const DiscreteDomain& dom, int min_collar = 2) const;

    /// Stable fingerprint of grid + speed content, for operator files.
    std::string content_hash(const DiscreteDomain& dom) const;

  private:
    void sample(const DiscreteDomain& dom);

    std::optional<double> c0_constant_;
    std::vector<Inclusion> inclusions_;
    FieldXd c0_nodes_, c0_cells_;
    FieldXd ctilde_nodes_, ctilde_cells_;
    FieldXd contrast_cells_;
    FieldXb sigma_cells_;
};

}  // namespace incdet
