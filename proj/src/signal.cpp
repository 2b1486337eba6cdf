#include "incdet/signal.hpp"

#include <cmath>

namespace incdet {

SignalSpace make_signal_space(const DiscreteDomain& dom, const SpeedModel& speed, double T,
                              double cfl, int bin_granularity) {
    if (T <= 0) throw config_error("signal space: T must be positive");
    if (cfl <= 0 || cfl > 0.7) throw config_error("signal space: cfl must lie in (0, 0.7]");
    if (bin_granularity < 1) throw config_error("signal space: bad bin granularity");
    const double dt_max = cfl * dom.h / speed.max_ctilde();
    const int chunk = 2 * bin_granularity;
    int nt = static_cast<int>(std::ceil(2.0 * T / dt_max));
    nt = ((nt + chunk - 1) / chunk) * chunk;
    SignalSpace space;
    space.nt = nt;
    space.dt = 2.0 * T / nt;
    space.T = T;
    space.cfl = cfl;
    space.boundary_weights = speed.boundary_metric_weights(dom);
    return space;
}

double signal_inner(const SignalSpace& space, const MatrixXd& f, const MatrixXd& g) {
    if (f.rows() != space.nt || g.rows() != space.nt || f.cols() != space.n_b() ||
        g.cols() != space.n_b())
        throw config_error("signal: shape mismatch with the space");
    return space.dt * ((f.array() * g.array()).colwise().sum() *
                       space.boundary_weights.transpose().array())
                          .sum();
}

double signal_norm(const SignalSpace& space, const MatrixXd& f) {
    return std::sqrt(std::max(0.0, signal_inner(space, f, f)));
}

}  // namespace incdet
