#include "incdet/timeops.hpp"

namespace incdet {

MatrixXd time_reversal(const MatrixXd& f) { return f.colwise().reverse(); }

MatrixXd windowed_time_integral(const SignalSpace& space, const MatrixXd& f) {
    const int nt = space.nt, K = space.samples_to_T();
    MatrixXd out = MatrixXd::Zero(nt, f.cols());
    VectorXd cum(nt);
    for (Index c = 0; c < f.cols(); ++c) {
        // Cumulative trapezoid of the column, then window differences.
        cum[0] = 0.0;
        for (int k = 1; k < nt; ++k)
            cum[k] = cum[k - 1] + 0.5 * space.dt * (f(k - 1, c) + f(k, c));
        for (int k = 0; k < K; ++k) {
            const int upper = std::min(nt - k, nt - 1);
            out(k, c) = 0.5 * (cum[upper] - cum[k]);
        }
    }
    return out;
}

MatrixXd causal_time_integral(const SignalSpace& space, const MatrixXd& f) {
    const int K = space.samples_to_T();
    MatrixXd out = MatrixXd::Zero(space.nt, f.cols());
    for (Index c = 0; c < f.cols(); ++c) {
        double acc = 0.0;
        for (int k = 1; k < K; ++k) {
            acc += space.dt * f(k - 1, c);
            out(k, c) = acc;
        }
    }
    return out;
}

MatrixXd causal_time_integral_adjoint(const SignalSpace& space, const MatrixXd& f) {
    const int K = space.samples_to_T();
    MatrixXd out = MatrixXd::Zero(space.nt, f.cols());
    for (Index c = 0; c < f.cols(); ++c) {
        double acc = 0.0;
        for (int j = K - 2; j >= 0; --j) {
            acc += space.dt * f(j + 1, c);
            out(j, c) = acc;
        }
    }
    return out;
}

MatrixXd ramp_to_T(const SignalSpace& space) {
    MatrixXd out = MatrixXd::Zero(space.nt, space.n_b());
    for (int k = 0; k < space.samples_to_T(); ++k)
        out.row(k).setConstant(space.T - k * space.dt);
    return out;
}

}  // namespace incdet
