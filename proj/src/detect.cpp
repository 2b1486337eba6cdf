#include "incdet/detect.hpp"

#include <algorithm>
#include <cmath>
#include <memory>

namespace incdet {

VectorXd boundary_lead_times(const DiscreteDomain& dom, const SpeedModel& speed, int b,
                             int collar_cells) {
    const auto& src = dom.boundary_nodes.at(b);
    VectorXd out(dom.n_boundary());
    if (speed.c0_is_constant()) {
        const double c0 = speed.c0_constant_value();
        const double sx = dom.node_x(src.ix), sy = dom.node_y(src.iy);
        for (int k = 0; k < dom.n_boundary(); ++k) {
            const auto& n = dom.boundary_nodes[k];
            out[k] = std::hypot(dom.node_x(n.ix) - sx, dom.node_y(n.iy) - sy) / c0;
        }
        return out;
    }
    int collar = collar_cells > 0 ? collar_cells : std::max(dom.nx, dom.ny) / 2;
    const FieldXd phi = extended_travel_time(dom, speed.c0_nodes(), src.ix, src.iy, collar);
    for (int k = 0; k < dom.n_boundary(); ++k) {
        const auto& n = dom.boundary_nodes[k];
        out[k] = phi(n.ix, n.iy);
    }
    return out;
}

LocateResult locate_known_bg(const VolumeFn& background, const VolumeFn& measured,
                             const LocateOptions& opt) {
    if (opt.r_max <= 0 || opt.tol_r <= 0) throw config_error("locate: bad options");
    LocateResult res;
    auto gap_at = [&](double r) {
        ++res.evaluations;
        return background(r) - measured(r);
    };

    double g = gap_at(opt.r_max);
    if (g < -opt.tol_vol) {
        res.flag = LocateFlag::InconsistentData;
        res.r_estimate = opt.r_max;
        res.gap = g;
        return res;
    }
    if (g <= opt.tol_vol) {
        res.flag = LocateFlag::NoInclusionSeen;
        res.r_estimate = opt.r_max;
        res.gap = g;
        return res;
    }

    // Bracket: the gap vanishes at 0 and exceeds tol_vol at r_max.
    double lo = 0.0, hi = opt.r_max;
    res.gap = g;
    while (hi - lo > opt.tol_r) {
        const double mid = 0.5 * (lo + hi);
        g = gap_at(mid);
        if (g < -opt.tol_vol) {
            res.flag = LocateFlag::InconsistentData;
            res.r_estimate = mid;
            res.gap = g;
            return res;
        }
        if (g > opt.tol_vol) {
            hi = mid;
            res.gap = g;
        } else {
            lo = mid;
        }
    }
    res.r_estimate = 0.5 * (lo + hi);
    return res;
}

VectorXd DistanceProfile::interpolate_all(const DiscreteDomain& dom) const {
    if (points.empty()) throw config_error("profile: empty");
    VectorXd r = VectorXd::Zero(dom.n_boundary());
    const double per = dom.perimeter();
    const int np = static_cast<int>(points.size());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const double s = dom.boundary_nodes[b].s;
        // Neighbors in arc order; points are assumed sorted by s.
        int hi = 0;
        while (hi < np && points[hi].s < s) ++hi;
        const int i1 = hi % np;
        const int i0 = (i1 + np - 1) % np;
        double s0 = points[i0].s, s1 = points[i1].s;
        double span = s1 - s0, off = s - s0;
        if (span <= 0) span += per;
        if (off < 0) off += per;
        const double t = span > 0 ? off / span : 0.0;
        r[b] = (1 - t) * points[i0].r_est + t * points[i1].r_est;
    }
    return r;
}

DistanceProfile scan_boundary_oracle(const DiscreteDomain& dom, const SpeedModel& speed,
                                     const std::vector<int>& sample_nodes,
                                     const LocateOptions& opt) {
    DistanceProfile profile;
    profile.points.reserve(sample_nodes.size());
    for (int b : sample_nodes) {
        const VectorXd lead = boundary_lead_times(dom, speed, b);
        const auto& node = dom.boundary_nodes[b];
        const RadialVolumeScan bg = ball_volume_scan(dom, speed, false, node.ix, node.iy, lead);
        const RadialVolumeScan inc = ball_volume_scan(dom, speed, true, node.ix, node.iy, lead);
        const LocateResult loc = locate_known_bg([&](double r) { return bg.volume_at(r); },
                                                 [&](double r) { return inc.volume_at(r); }, opt);
        ProfilePoint pt;
        pt.b = b;
        pt.s = node.s;
        pt.r_est = loc.r_estimate;
        pt.method = "bisection_known_bg";
        pt.gap = loc.gap;
        if (loc.flag == LocateFlag::NoInclusionSeen) pt.flags = "no_inclusion_seen";
        if (loc.flag == LocateFlag::InconsistentData) pt.flags = "inconsistent_data";
        profile.points.push_back(pt);
    }
    return profile;
}

double ControlVolumeSource::measured(const TauFunction& tau) const {
    return estimate_volume(*K, tau, alphas, cg_tol, max_iterations).value;
}

double ControlVolumeSource::model(const TauFunction& tau) const {
    const TauFunction snapped = snapped_tau(*dom, K->basis, K->space, tau);
    return influence_volume(*dom, background->c0_nodes(), snapped,
                            background->background_density_cells(),
                            background->c0_cells().pow(-1));
}

DistanceProfile scan_boundary_control(const ControlVolumeSource& source,
                                      const std::vector<int>& sample_nodes,
                                      const LocateOptions& opt) {
    const DiscreteDomain& dom = *source.dom;
    DistanceProfile profile;
    profile.points.reserve(sample_nodes.size());
    for (int b : sample_nodes) {
        const VectorXd lead = boundary_lead_times(dom, *source.background, b);
        auto tau_of = [&](double r) {
            return TauFunction::cone(lead, r).clipped(source.K->space.T);
        };
        const LocateResult loc =
            locate_known_bg([&](double r) { return source.model(tau_of(r)); },
                            [&](double r) { return source.measured(tau_of(r)); }, opt);
        ProfilePoint pt;
        pt.b = b;
        pt.s = dom.boundary_nodes[b].s;
        pt.r_est = loc.r_estimate;
        pt.method = "bisection_known_bg";
        pt.gap = loc.gap;
        if (loc.flag == LocateFlag::NoInclusionSeen) pt.flags = "no_inclusion_seen";
        if (loc.flag == LocateFlag::InconsistentData) pt.flags = "inconsistent_data";
        profile.points.push_back(pt);
    }
    return profile;
}

SmoothnessResult smoothness_test_unknown_bg(const VolumeFn& measured,
                                            const SmoothnessOptions& opt) {
    if (opt.eps_list.size() < 3) throw config_error("insufficient epsilon samples");
    if (opt.r_grid.size() < 2) throw config_error("smoothness test: r grid too small");

    SmoothnessResult res;
    for (double r : opt.r_grid) {
        DivergenceSample sample;
        sample.r = r;
        std::vector<double> lx, ly;
        for (double eps : opt.eps_list) {
            const double d2 =
                (measured(r + eps) - 2.0 * measured(r) + measured(r - eps)) / (eps * eps);
            sample.second_diffs.push_back(d2);
            if (std::abs(d2) > 1e-12) {
                lx.push_back(std::log(eps));
                ly.push_back(std::log(std::abs(d2)));
            }
        }
        if (lx.size() >= 2) {
            const double n = static_cast<double>(lx.size());
            double sx = 0, sy = 0, sxx = 0, sxy = 0;
            for (size_t i = 0; i < lx.size(); ++i) {
                sx += lx[i];
                sy += ly[i];
                sxx += lx[i] * lx[i];
                sxy += lx[i] * ly[i];
            }
            sample.q = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        } else {
            sample.q = 0.0;  // volume flat to noise level: smooth
        }
        res.profile.push_back(sample);
        if (!res.found && sample.q <= opt.q_breakdown) {
            res.found = true;
            res.r_estimate = r;
        }
    }
    return res;
}

VolumeFn spike_volume_fn_oracle(const DiscreteDomain& dom, const SpeedModel& speed, int b,
                                int window_nodes, double h_offset) {
    const int first = (b - window_nodes / 2 + dom.n_boundary()) % dom.n_boundary();
    auto scan = std::make_shared<RadialVolumeScan>(
        window_volume_scan(dom, speed, true, first, window_nodes, h_offset));
    return [scan](double r) { return scan->volume_at(r); };
}

SmoothnessResult smoothness_test_consistent(
    const std::function<VolumeFn(double)>& measured_for_offset,
    const std::vector<double>& h_offsets, const SmoothnessOptions& opt, double r_consistency) {
    if (h_offsets.empty()) throw config_error("smoothness test: no offsets");
    std::vector<SmoothnessResult> runs;
    for (double h : h_offsets)
        runs.push_back(smoothness_test_unknown_bg(measured_for_offset(h), opt));
    SmoothnessResult combined = runs.front();
    for (const auto& run : runs) {
        if (!run.found) return run;  // any miss invalidates the detection
        if (std::abs(run.r_estimate - runs.front().r_estimate) > r_consistency) {
            combined.found = false;
            return combined;
        }
    }
    double mean = 0.0;
    for (const auto& run : runs) mean += run.r_estimate;
    combined.r_estimate = mean / runs.size();
    return combined;
}

std::pair<RegionMask, std::vector<BoundarySegment>> reconstruct_hull_and_segments(
    const DiscreteDomain& dom, const SpeedModel& background, const DistanceProfile& profile) {
    const VectorXd r_sigma = profile.interpolate_all(dom).array().max(0.0);
    RegionMask hull = boundary_distance_hull(dom, background, r_sigma);
    std::vector<BoundarySegment> segments = emit_segments(dom, background, r_sigma);
    return {std::move(hull), std::move(segments)};
}

}  // namespace incdet
