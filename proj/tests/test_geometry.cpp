#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "incdet/eikonal.hpp"
#include "incdet/grid.hpp"
#include "incdet/hull.hpp"
#include "incdet/regions.hpp"
#include "incdet/speed.hpp"
#include "oracles.hpp"

using namespace incdet;

namespace {

VectorXd euclid_from_boundary_point(const DiscreteDomain& dom, double px, double py,
                                    double c0 = 1.0) {
    VectorXd d(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& n = dom.boundary_nodes[b];
        d[b] = std::hypot(dom.node_x(n.ix) - px, dom.node_y(n.iy) - py) / c0;
    }
    return d;
}

Inclusion disk(double cx, double cy, double r, double contrast) {
    Inclusion inc;
    inc.kind = Inclusion::Kind::Disk;
    inc.cx = cx;
    inc.cy = cy;
    inc.radius = r;
    inc.contrast = contrast;
    return inc;
}

}  // namespace

TEST_CASE("grid: boundary traversal and weights") {
    DiscreteDomain dom(8, 6, 2.0, 1.5);
    CHECK(dom.h == doctest::Approx(0.25));
    CHECK(dom.n_boundary() == 2 * (8 + 6));
    // Consecutive nodes are h apart in arc length, all weights positive.
    for (int b = 0; b < dom.n_boundary(); ++b) {
        CHECK(dom.boundary_weights[b] > 0.0);
        const auto& a = dom.boundary_nodes[b];
        const auto& c = dom.boundary_nodes[(b + 1) % dom.n_boundary()];
        const double step = std::hypot(dom.node_x(a.ix) - dom.node_x(c.ix),
                                       dom.node_y(a.iy) - dom.node_y(c.iy));
        CHECK(step == doctest::Approx(dom.h));
        CHECK(dom.boundary_index(a.ix, a.iy) == b);
    }
    CHECK(dom.boundary_weights.sum() == doctest::Approx(dom.perimeter()));
    CHECK(dom.boundary_index(3, 3) == -1);
    CHECK_THROWS_AS(DiscreteDomain(10, 10, 1.0, 2.0), config_error);
}

TEST_CASE("speed model: sampling, densities, collar") {
    DiscreteDomain dom(64, 64, 1.0, 1.0);
    SpeedModel plain(dom, 1.0);
    CHECK_FALSE(plain.has_inclusion());
    CHECK(plain.max_ctilde() == doctest::Approx(1.0));

    SpeedModel with_disk(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});
    CHECK(with_disk.max_ctilde() == doctest::Approx(2.0));
    CHECK(with_disk.sigma_cells().cast<int>().sum() > 0);
    CHECK(with_disk.boundary_collar_cells(dom) >= 2);
    with_disk.require_interior_inclusion(dom);

    SpeedModel touching(dom, 1.0, {disk(0.5, 0.1, 0.12, 2.0)});
    CHECK_THROWS_AS(touching.require_interior_inclusion(dom), config_error);

    CHECK_THROWS_AS(SpeedModel(dom, -1.0), config_error);
    CHECK(with_disk.content_hash(dom) != plain.content_hash(dom));
    CHECK(with_disk.content_hash(dom) ==
          SpeedModel(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)}).content_hash(dom));
}

TEST_CASE("eikonal: constant speed equals euclidean distance") {
    DiscreteDomain dom(64, 64, 1.0, 1.0);
    SpeedModel speed(dom, 1.0);
    FieldXd phi = fast_march(dom, speed.c0_nodes(), {{0, 0, 0.0}});
    CHECK(phi(64, 64) == doctest::Approx(std::sqrt(2.0)).epsilon(0).margin(3 * dom.h));

    FieldXd phi2 = fast_march(dom, dom.node_field(2.0), {{0, 0, 0.0}});
    CHECK(phi2(64, 64) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(0).margin(3 * dom.h));
}

TEST_CASE("eikonal: error paths") {
    DiscreteDomain dom(16, 16, 1.0, 1.0);
    CHECK_THROWS_AS(fast_march(dom, dom.node_field(1.0), {}), config_error);
    CHECK_THROWS_AS(fast_march(dom, dom.node_field(0.0), {{0, 0, 0.0}}), config_error);
    CHECK_THROWS_AS(fast_march(dom, dom.node_field(-2.0), {{0, 0, 0.0}}), config_error);
}

TEST_CASE("eikonal: fast disk fixture against refined dijkstra") {
    const int n = 80;
    DiscreteDomain dom(n, n, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 5.0)});
    FieldXd phi = fast_march(dom, speed.ctilde_nodes(), {{n / 2, 0, 0.0}});

    auto oracle_speed = [](double x, double y) {
        return test_oracle::dist_point_to_disk(x, y, 0.5, 0.5, 0.15) == 0.0 ? 5.0 : 1.0;
    };
    Eigen::ArrayXXd dij =
        test_oracle::dijkstra_travel_time(n, n, dom.h, oracle_speed, n / 2, 0, 4);

    // The probe point sits on the near edge of the disk; the first arrival
    // is the straight ray that has not yet entered the fast region.
    const int jy = static_cast<int>(std::lround(0.35 / dom.h));
    CHECK(phi(n / 2, jy) == doctest::Approx(0.35).epsilon(0).margin(3 * dom.h));
    CHECK(std::abs(phi(n / 2, jy) - dij(n / 2, jy)) <= 3 * dom.h);
}

TEST_CASE("eikonal: grid convergence against oracle and exact distance") {
    auto run = [](int n) {
        DiscreteDomain dom(n, n, 1.0, 1.0);
        FieldXd phi = fast_march(dom, dom.node_field(1.0), {{0, 0, 0.0}});
        Eigen::ArrayXXd dij = test_oracle::dijkstra_travel_time(
            n, n, dom.h, [](double, double) { return 1.0; }, 0, 0, 4);
        double err_oracle = 0.0, err_exact = 0.0;
        for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= n; ++j) {
                err_oracle = std::max(err_oracle, std::abs(phi(i, j) - dij(i, j)));
                err_exact =
                    std::max(err_exact, std::abs(phi(i, j) - std::hypot(i * dom.h, j * dom.h)));
            }
        return std::pair{err_oracle, err_exact};
    };
    auto [o32, e32] = run(32);
    auto [o64, e64] = run(64);
    CHECK(o64 <= 1.25 * o32);
    CHECK(e64 <= 1.25 * e32);
    CHECK(e64 < e32);
}

TEST_CASE("eikonal: discrete lipschitz bound between neighbors") {
    const int n = 48;
    DiscreteDomain dom(n, n, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});
    TauFunction tau = TauFunction::window(dom, 0, 20, 0.4, 0.1);
    FieldXd phi = fast_march(dom, speed.ctilde_nodes(), boundary_seeds(dom, -tau.values));
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j < n; ++j) {
            const double bound =
                dom.h / std::min(speed.ctilde_nodes()(i, j), speed.ctilde_nodes()(i, j + 1));
            CHECK(std::abs(phi(i, j) - phi(i, j + 1)) <= bound + 1e-9);
        }
    // Seeds can only improve, never exceed their budget.
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& node = dom.boundary_nodes[b];
        CHECK(phi(node.ix, node.iy) <= -tau.values[b] + 1e-12);
    }
}

TEST_CASE("domain of influence: trivial and closed-form volumes") {
    DiscreteDomain dom(64, 64, 1.0, 1.0);
    SpeedModel speed(dom, 1.0);

    RegionMask zero = domain_of_influence(dom, speed.c0_nodes(), TauFunction::constant(dom, 0.0),
                                          speed.background_density_cells());
    // Only boundary-adjacent cells may appear, and the volume vanishes with h.
    for (int i = 0; i < dom.nx; ++i)
        for (int j = 0; j < dom.ny; ++j)
            if (zero.cells(i, j))
                CHECK((i == 0 || j == 0 || i == dom.nx - 1 || j == dom.ny - 1));
    CHECK(region_volume(zero, dom.h) <= 4 * dom.h);

    RegionMask band = domain_of_influence(dom, speed.c0_nodes(), TauFunction::constant(dom, 0.1),
                                          speed.background_density_cells());
    CHECK(region_volume(band, dom.h) == doctest::Approx(0.36).epsilon(0).margin(5 * dom.h));

    RegionMask full = domain_of_influence(dom, speed.c0_nodes(), TauFunction::constant(dom, 2.0),
                                          speed.background_density_cells());
    CHECK(full.count() == dom.nx * dom.ny);
    CHECK(region_volume(full, dom.h) == doctest::Approx(1.0).epsilon(0).margin(2 * dom.h));
}

TEST_CASE("domain of influence: monotone in tau and dominated by the fast metric") {
    DiscreteDomain dom(48, 48, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> uni(0.0, 0.4);
    VectorXd tau1(dom.n_boundary()), bump(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        tau1[b] = uni(rng);
        bump[b] = 0.5 * uni(rng);
    }
    TauFunction t1{tau1, "random"};
    TauFunction t2{tau1 + bump, "random+bump"};
    RegionMask m1 = domain_of_influence(dom, speed.c0_nodes(), t1, speed.background_density_cells());
    RegionMask m2 = domain_of_influence(dom, speed.c0_nodes(), t2, speed.background_density_cells());
    CHECK(m2.contains(m1));

    RegionMask slow = domain_of_influence(dom, speed.c0_nodes(), t1, speed.background_density_cells());
    RegionMask fast = domain_of_influence(dom, speed.ctilde_nodes(), t1, speed.total_density_cells());
    CHECK(fast.contains(slow));
}

TEST_CASE("region volume: closed forms and off-inclusion equality") {
    DiscreteDomain dom(64, 64, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});

    RegionMask full{FieldXb::Constant(dom.nx, dom.ny, true), speed.total_density_cells()};
    const double expected = 1.0 - std::numbers::pi * 0.15 * 0.15 * (1.0 - 0.25);
    CHECK(region_volume(full, dom.h) == doctest::Approx(expected).epsilon(0).margin(5 * dom.h));

    RegionMask empty{FieldXb::Constant(dom.nx, dom.ny, false), speed.total_density_cells()};
    CHECK(region_volume(empty, dom.h) == 0.0);

    // Any region clear of the inclusion has identical volume in both measures.
    FieldXb strip = FieldXb::Constant(dom.nx, dom.ny, false);
    for (int i = 0; i < dom.nx / 5; ++i)
        for (int j = 0; j < dom.ny; ++j) strip(i, j) = true;
    RegionMask m_bg{strip, speed.background_density_cells()};
    RegionMask m_tot{strip, speed.total_density_cells()};
    CHECK(region_volume(m_bg, dom.h) == region_volume(m_tot, dom.h));
}

TEST_CASE("scaling probe: tangent disk shows the three-halves separation") {
    const int n = 320;
    DiscreteDomain dom(n, n, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});
    TauFunction tau = TauFunction::cone(euclid_from_boundary_point(dom, 0.5, 0.0), 0.35);
    std::vector<double> eps;
    for (double e = 0.0125; e <= 0.1251; e *= std::pow(10.0, 1.0 / 7.0)) eps.push_back(e);
    REQUIRE(eps.size() >= 4);
    REQUIRE(eps.front() >= 4 * dom.h);

    ScalingProbeResult res = epsilon_scaling_probe(dom, speed, tau, eps);
    CHECK(res.separation_detected);
    REQUIRE(res.fitted_exponent.has_value());
    CHECK(*res.fitted_exponent >= 1.2);
    CHECK(*res.fitted_exponent <= 1.8);
}

TEST_CASE("scaling probe: disjoint region sees no separation") {
    const int n = 160;
    DiscreteDomain dom(n, n, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});
    TauFunction tau = TauFunction::cone(euclid_from_boundary_point(dom, 0.5, 0.0), 0.2);
    std::vector<double> eps = {0.025, 0.05, 0.075, 0.1};
    ScalingProbeResult res = epsilon_scaling_probe(dom, speed, tau, eps);
    CHECK_FALSE(res.separation_detected);
    for (double d : res.differences) CHECK(std::abs(d) <= 2 * dom.h * dom.perimeter());
}

TEST_CASE("scaling probe: thin wedge example flips the inequality") {
    // Lower half plane plus a thin spike of height 1 and half-angle 0.1,
    // all at double speed; the influence region of the top edge covers the
    // upper half. The fast channel lets the region spill far into the slow
    // half, and the quarter density cannot compensate.
    DiscreteDomain dom(256, 192, 4.0, 3.0);
    std::vector<Inclusion> incs;
    Inclusion half;
    half.kind = Inclusion::Kind::HalfPlaneBelow;
    half.threshold = 1.5;
    half.contrast = 2.0;
    incs.push_back(half);
    Inclusion tri;
    tri.kind = Inclusion::Kind::Triangle;
    tri.cx = 2.0;
    tri.cy = 2.5;
    tri.height = 1.0;
    tri.half_angle = 0.1;
    tri.contrast = 2.0;
    incs.push_back(tri);
    SpeedModel speed(dom, 1.0, incs);

    // Budget 1.5 on the top edge reaches exactly the upper half in the
    // background metric.
    const int nb = dom.n_boundary();
    VectorXd tau_values = VectorXd::Zero(nb);
    for (int b = 0; b < nb; ++b)
        if (dom.boundary_nodes[b].iy == dom.ny) tau_values[b] = 1.5;
    TauFunction tau{tau_values, "top-edge"};

    RegionMask bg = domain_of_influence(dom, speed.c0_nodes(), tau,
                                        speed.background_density_cells());
    RegionMask inc = domain_of_influence(dom, speed.ctilde_nodes(), tau,
                                         speed.total_density_cells());
    const double v_bg = region_volume(bg, dom.h);
    const double v_inc = region_volume(inc, dom.h);
    CHECK(v_bg == doctest::Approx(6.0).epsilon(0.02));
    CHECK(v_inc > v_bg);
}

TEST_CASE("hull: trivial, single disk, and error path") {
    DiscreteDomain dom(64, 64, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});

    RegionMask all = boundary_distance_hull(dom, speed, VectorXd::Zero(dom.n_boundary()));
    CHECK(all.count() == dom.nx * dom.ny);

    VectorXd r_sigma(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& n = dom.boundary_nodes[b];
        r_sigma[b] =
            test_oracle::dist_point_to_disk(dom.node_x(n.ix), dom.node_y(n.iy), 0.5, 0.5, 0.15);
    }
    RegionMask hull = boundary_distance_hull(dom, speed, r_sigma);
    for (int i = 0; i < dom.nx; ++i)
        for (int j = 0; j < dom.ny; ++j) {
            const double d_center = std::hypot(dom.cell_cx(i) - 0.5, dom.cell_cy(j) - 0.5);
            if (d_center <= 0.15 - dom.h) CHECK(hull.cells(i, j));
            if (hull.cells(i, j)) CHECK(d_center <= 0.15 + 3 * dom.h);
        }

    VectorXd negative = r_sigma;
    negative[0] = -0.1;
    CHECK_THROWS_AS(boundary_distance_hull(dom, speed, negative), config_error);
}

TEST_CASE("hull: two-disk fixture stays inside the joint convex hull") {
    DiscreteDomain dom(96, 96, 1.0, 1.0);
    const double ax = 0.30, ay = 0.55, ar = 0.12;
    const double bx = 0.72, by = 0.40, br = 0.10;
    SpeedModel speed(dom, 1.0, {disk(ax, ay, ar, 2.0), disk(bx, by, br, 2.0)});
    VectorXd r_sigma(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& n = dom.boundary_nodes[b];
        const double px = dom.node_x(n.ix), py = dom.node_y(n.iy);
        r_sigma[b] = std::min(test_oracle::dist_point_to_disk(px, py, ax, ay, ar),
                              test_oracle::dist_point_to_disk(px, py, bx, by, br));
    }
    RegionMask hull = boundary_distance_hull(dom, speed, r_sigma);

    auto in_convex_hull = [&](double x, double y, double slack) {
        for (int k = 0; k <= 256; ++k) {
            const double t = k / 256.0;
            const double cx = (1 - t) * ax + t * bx, cy = (1 - t) * ay + t * by;
            const double r = (1 - t) * ar + t * br;
            if (std::hypot(x - cx, y - cy) <= r + slack) return true;
        }
        return false;
    };
    int hull_cells = 0;
    for (int i = 0; i < dom.nx; ++i)
        for (int j = 0; j < dom.ny; ++j) {
            const double x = dom.cell_cx(i), y = dom.cell_cy(j);
            const bool in_a = std::hypot(x - ax, y - ay) <= ar - dom.h;
            const bool in_b = std::hypot(x - bx, y - by) <= br - dom.h;
            if (in_a || in_b) CHECK(hull.cells(i, j));
            if (hull.cells(i, j)) {
                ++hull_cells;
                CHECK(in_convex_hull(x, y, 3 * dom.h));
            }
        }
    // The hull is a single lens-like blob strictly larger than the disks.
    const double disk_area = std::numbers::pi * (ar * ar + br * br);
    CHECK(hull_cells * dom.h * dom.h > disk_area);
}

TEST_CASE("segments: directions point at the nearest inclusion point") {
    DiscreteDomain dom(64, 64, 1.0, 1.0);
    SpeedModel speed(dom, 1.0, {disk(0.5, 0.5, 0.15, 2.0)});
    VectorXd r_sigma(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& n = dom.boundary_nodes[b];
        r_sigma[b] =
            test_oracle::dist_point_to_disk(dom.node_x(n.ix), dom.node_y(n.iy), 0.5, 0.5, 0.15);
    }
    auto segments = emit_segments(dom, speed, r_sigma);
    const int b_mid = dom.boundary_index(32, 0);
    REQUIRE(b_mid >= 0);
    const auto& seg = segments[b_mid];
    CHECK(seg.length == doctest::Approx(0.35).epsilon(0).margin(3 * dom.h));
    CHECK(std::atan2(seg.dir_x, seg.dir_y) == doctest::Approx(0.0).epsilon(0).margin(0.1));

    auto zero = emit_segments(dom, speed, VectorXd::Zero(dom.n_boundary()));
    for (const auto& s : zero) CHECK(s.length == 0.0);
}

TEST_CASE("segments: two-disk fixture, bottom edge aims at the nearer disk") {
    DiscreteDomain dom(96, 96, 1.0, 1.0);
    const double ax = 0.30, ay = 0.55, ar = 0.12;
    const double bx = 0.72, by = 0.40, br = 0.10;
    SpeedModel speed(dom, 1.0, {disk(ax, ay, ar, 2.0), disk(bx, by, br, 2.0)});
    VectorXd r_sigma(dom.n_boundary());
    for (int b = 0; b < dom.n_boundary(); ++b) {
        const auto& n = dom.boundary_nodes[b];
        const double px = dom.node_x(n.ix), py = dom.node_y(n.iy);
        r_sigma[b] = std::min(test_oracle::dist_point_to_disk(px, py, ax, ay, ar),
                              test_oracle::dist_point_to_disk(px, py, bx, by, br));
    }
    auto segments = emit_segments(dom, speed, r_sigma);
    for (const auto& seg : segments) {
        if (seg.y != 0.0) continue;  // bottom edge only
        const double da = test_oracle::dist_point_to_disk(seg.x, seg.y, ax, ay, ar);
        const double db = test_oracle::dist_point_to_disk(seg.x, seg.y, bx, by, br);
        if (std::abs(da - db) < 0.05) continue;  // ambiguous between the disks
        const double cx = da < db ? ax : bx, cy = da < db ? ay : by;
        const double want = std::atan2(cx - seg.x, cy - seg.y);
        const double got = std::atan2(seg.dir_x, seg.dir_y);
        CHECK(std::abs(std::remainder(got - want, 2 * std::numbers::pi)) < 0.2);
    }
}
