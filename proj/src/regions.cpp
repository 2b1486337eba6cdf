#include "incdet/regions.hpp"

#include <algorithm>
#include <cmath>

namespace incdet {

TauFunction TauFunction::constant(const DiscreteDomain& dom, double s) {
    return {VectorXd::Constant(dom.n_boundary(), s), "constant(" + std::to_string(s) + ")"};
}

TauFunction TauFunction::cone(const VectorXd& dhat_from_x, double r) {
    TauFunction tau;
    tau.values = (r - dhat_from_x.array()).max(0.0).matrix();
    tau.descriptor = "cone(r=" + std::to_string(r) + ")";
    return tau;
}

TauFunction TauFunction::window(const DiscreteDomain& dom, int b_first, int b_count, double r,
                                double floor_value) {
    TauFunction tau;
    tau.values = VectorXd::Constant(dom.n_boundary(), floor_value);
    for (int k = 0; k < b_count; ++k)
        tau.values[(b_first + k) % dom.n_boundary()] = r;
    tau.descriptor = "window(r=" + std::to_string(r) + ",floor=" + std::to_string(floor_value) + ")";
    return tau;
}

TauFunction TauFunction::clipped(double T) const {
    TauFunction out;
    out.values = values.array().max(0.0).min(T).matrix();
    out.descriptor = descriptor;
    return out;
}

TauFunction TauFunction::operator+(double eps) const {
    return {values.array() + eps, descriptor + "+" + std::to_string(eps)};
}

double region_volume(const RegionMask& mask, double h) {
    if (mask.cells.rows() != mask.density_cells.rows() ||
        mask.cells.cols() != mask.density_cells.cols())
        throw config_error("region_volume: mask and density live on different grids");
    return h * h * mask.cells.select(mask.density_cells, 0.0).sum();
}

DistanceField influence_field(const DiscreteDomain& dom, const FieldXd& metric_speed_nodes,
                              const TauFunction& tau) {
    DistanceField out;
    out.phi = fast_march(dom, metric_speed_nodes, boundary_seeds(dom, -tau.values));
    out.metric = MetricTag::Background;
    return out;
}

RegionMask domain_of_influence(const DiscreteDomain& dom, const FieldXd& metric_speed_nodes,
                               const TauFunction& tau, const FieldXd& density_cells) {
    const DistanceField field = influence_field(dom, metric_speed_nodes, tau);
    RegionMask mask;
    mask.cells = dom.at_cell_centers(field.phi) <= 0.0;
    mask.density_cells = density_cells;
    return mask;
}

FieldXd influence_indicator_nodes(const DistanceField& field) {
    return (field.phi <= 0.0).cast<double>();
}

double influence_volume(const DiscreteDomain& dom, const FieldXd& metric_speed_nodes,
                        const TauFunction& tau, const FieldXd& density_cells,
                        const FieldXd& slowness_cells) {
    const DistanceField field = influence_field(dom, metric_speed_nodes, tau);
    const FieldXd phi_c = dom.at_cell_centers(field.phi);
    const FieldXd frac =
        ((-phi_c) / (dom.h * slowness_cells) + 0.5).min(1.0).max(0.0);
    return dom.h * dom.h * (frac * density_cells).sum();
}

double RadialVolumeScan::volume_at(double r) const {
    const FieldXd frac =
        ((r - psi_cells) / (h * slowness_cells) + 0.5).min(1.0).max(0.0).max(base_coverage);
    return h * h * (frac * density_cells).sum();
}

double RadialVolumeScan::sharp_volume_at(double r) const {
    const FieldXd covered = (psi_cells <= r).select(FieldXd::Ones(psi_cells.rows(), psi_cells.cols()),
                                                    base_coverage.min(1.0).max(0.0));
    return h * h * (covered * density_cells).sum();
}

RadialVolumeScan ball_volume_scan(const DiscreteDomain& dom, const SpeedModel& speed,
                                  bool with_inclusion, int /*src_ix*/, int /*src_iy*/,
                                  const VectorXd& dhat_from_x) {
    const FieldXd& metric = with_inclusion ? speed.ctilde_nodes() : speed.c0_nodes();
    // Seeding every boundary node with its lead-in time dhat(x, y) turns
    // the swept field into the critical radius min_y (d(z,y) + dhat(x,y)).
    FieldXd psi = fast_march(dom, metric, boundary_seeds(dom, dhat_from_x));
    RadialVolumeScan scan;
    scan.h = dom.h;
    scan.psi_cells = dom.at_cell_centers(psi);
    scan.slowness_cells =
        (with_inclusion ? speed.ctilde_cells() : speed.c0_cells()).pow(-1);
    scan.density_cells =
        with_inclusion ? speed.total_density_cells() : speed.background_density_cells();
    scan.base_coverage = FieldXd::Zero(dom.nx, dom.ny);
    return scan;
}

RadialVolumeScan window_volume_scan(const DiscreteDomain& dom, const SpeedModel& speed,
                                    bool with_inclusion, int b_first, int b_count,
                                    double floor_value) {
    const FieldXd& metric = with_inclusion ? speed.ctilde_nodes() : speed.c0_nodes();
    const int nb = dom.n_boundary();
    std::vector<char> in_window(nb, 0);
    for (int k = 0; k < b_count; ++k) in_window[(b_first + k) % nb] = 1;

    std::vector<EikonalSeed> window_seeds, rest_seeds;
    for (int b = 0; b < nb; ++b) {
        const auto& n = dom.boundary_nodes[b];
        (in_window[b] ? window_seeds : rest_seeds).push_back({n.ix, n.iy, 0.0});
    }
    FieldXd from_window = fast_march(dom, metric, window_seeds);
    const FieldXd slowness =
        (with_inclusion ? speed.ctilde_cells() : speed.c0_cells()).pow(-1);

    RadialVolumeScan scan;
    scan.h = dom.h;
    scan.psi_cells = dom.at_cell_centers(from_window);
    scan.slowness_cells = slowness;
    scan.density_cells =
        with_inclusion ? speed.total_density_cells() : speed.background_density_cells();
    scan.base_coverage = FieldXd::Zero(dom.nx, dom.ny);
    if (!rest_seeds.empty() && floor_value > 0.0) {
        FieldXd from_rest = dom.at_cell_centers(fast_march(dom, metric, rest_seeds));
        scan.base_coverage =
            ((floor_value - from_rest) / (dom.h * slowness) + 0.5).min(1.0).max(0.0);
    }
    return scan;
}

ScalingProbeResult epsilon_scaling_probe(const DiscreteDomain& dom, const SpeedModel& speed,
                                         const TauFunction& tau,
                                         const std::vector<double>& eps_list) {
    if (eps_list.empty()) throw config_error("scaling probe: empty eps list");
    const DistanceField bg = influence_field(dom, speed.c0_nodes(), tau);
    DistanceField inc;
    inc.phi = fast_march(dom, speed.ctilde_nodes(), boundary_seeds(dom, -tau.values));
    inc.metric = MetricTag::Total;

    const FieldXd bg_centers = dom.at_cell_centers(bg.phi);
    const FieldXd inc_centers = dom.at_cell_centers(inc.phi);
    const FieldXd dens_bg = speed.background_density_cells();
    const FieldXd dens_inc = speed.total_density_cells();

    ScalingProbeResult res;
    res.eps = eps_list;
    res.differences.reserve(eps_list.size());
    for (double eps : eps_list) {
        // tau + eps shifts the whole influence field down by eps.
        const double v_bg = dom.h * dom.h * (bg_centers <= eps).select(dens_bg, 0.0).sum();
        const double v_inc = dom.h * dom.h * (inc_centers <= eps).select(dens_inc, 0.0).sum();
        res.differences.push_back(v_bg - v_inc);
    }

    const double noise_floor = 10.0 * dom.h * dom.h;
    std::vector<double> lx, ly;
    for (size_t i = 0; i < eps_list.size(); ++i) {
        if (res.differences[i] > 0.0) res.separation_detected = true;
        if (res.differences[i] >= noise_floor) {
            lx.push_back(std::log(eps_list[i]));
            ly.push_back(std::log(res.differences[i]));
        }
    }
    if (lx.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const double n = static_cast<double>(lx.size());
        for (size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        res.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    }
    return res;
}

}  // namespace incdet
