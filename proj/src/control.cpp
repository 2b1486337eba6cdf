#include "incdet/control.hpp"

#include <cmath>

namespace incdet {

namespace {

/// <e, ramp>: the closed-form right-hand side (T - s)+ paired with every element.
VectorXd ramp_coefficients(const SourceBasis& basis, const SignalSpace& space) {
    return basis.project(space, ramp_to_T(space));
}

/// <I e, 1> per element, through the exact discrete adjoint.
VectorXd volume_pairing_coefficients(const SourceBasis& basis, const SignalSpace& space) {
    const MatrixXd ones = MatrixXd::Ones(space.nt, space.n_b());
    return basis.project(space, causal_time_integral_adjoint(space, ones));
}

}  // namespace

MatrixXd apply_connecting(const LambdaOperator& lambda, const MatrixXd& f) {
    const SignalSpace& space = lambda.space();
    const MatrixXd term1 = windowed_time_integral(space, lambda.apply(f));
    const MatrixXd rjf = time_reversal(windowed_time_integral(space, f));
    const MatrixXd term2 = time_reversal(lambda.apply(rjf));
    return term1 - term2;
}

ConnectingOperator assemble_connecting_operator(const LambdaOperator& lambda,
                                                const SourceBasis& basis) {
    const SignalSpace& space = lambda.space();
    const int n = basis.n_elements();
    MatrixXd K(n, n);

    if (lambda.mode() == LambdaOperator::Mode::MatrixFree) {
        // Per patch, one solve gives the bin-0 trace; later bins shift it.
        // The reversed term needs its own solve per element.
        VectorXd unit = VectorXd::Zero(n);
        for (int p = 0; p < basis.n_patch(); ++p) {
            unit.setZero();
            unit[basis.element_index(p, 0)] = 1.0;
            const MatrixXd trace0 = lambda.apply(basis.synthesize(space, unit));
            for (int q = 0; q < basis.n_bin(); ++q) {
                const int j = basis.element_index(p, q);
                const int shift = q * basis.samples_per_bin();
                MatrixXd trace = MatrixXd::Zero(space.nt, space.n_b());
                trace.bottomRows(space.nt - shift) = trace0.topRows(space.nt - shift);

                unit.setZero();
                unit[j] = 1.0;
                const MatrixXd rj =
                    time_reversal(windowed_time_integral(space, basis.synthesize(space, unit)));
                const MatrixXd term2 = time_reversal(lambda.apply(rj));
                K.col(j) = basis.project(
                    space, MatrixXd(windowed_time_integral(space, trace) - term2));
            }
        }
    } else {
        // Columns only: fold the reversed term through L^* = R L R, i.e.
        // K_ij = <e_i, J L e_j> - <L e_i, J e_j>.
        const Index rows = lambda.columns().rows();
        MatrixXd A(n, n);
        MatrixXd weighted_je(rows, n);
        VectorXd unit = VectorXd::Zero(n);
        for (int j = 0; j < n; ++j) {
            unit.setZero();
            unit[j] = 1.0;
            const MatrixXd col = lambda.columns().col(j).reshaped(space.nt, space.n_b());
            A.col(j) = basis.project(space, windowed_time_integral(space, col));
            MatrixXd je = windowed_time_integral(space, basis.synthesize(space, unit));
            je.array().rowwise() *= space.boundary_weights.transpose().array();
            je *= space.dt;
            weighted_je.col(j) = je.reshaped();
        }
        const MatrixXd B = lambda.columns().transpose() * weighted_je;
        K = A - B.transpose();
    }

    ConnectingOperator op;
    op.basis = basis;
    op.space = space;
    const double scale = K.norm();
    op.asymmetry_defect = scale > 0 ? (K - K.transpose()).norm() / scale : 0.0;
    MatrixXd sym = 0.5 * (K + K.transpose());

    Eigen::SelfAdjointEigenSolver<MatrixXd> eig(sym);
    const VectorXd vals = eig.eigenvalues();
    op.norm = std::max(0.0, vals.maxCoeff());
    op.psd_shift = std::max(0.0, -vals.minCoeff());
    const VectorXd clipped = vals.array().max(0.0);
    op.matrix = eig.eigenvectors() * clipped.asDiagonal() * eig.eigenvectors().transpose();
    op.matrix = 0.5 * (op.matrix + op.matrix.transpose());
    return op;
}

std::vector<char> active_elements(const SourceBasis& basis, const SignalSpace& space,
                                  const TauFunction& tau) {
    if (tau.values.size() != space.n_b())
        throw config_error("projection: tau must have one value per boundary node");
    const double bin_w = basis.bin_width();
    std::vector<char> keep(basis.n_elements(), 0);
    for (int p = 0; p < basis.n_patch(); ++p) {
        double tau_min = space.T;
        for (int k = 0; k < basis.patch_node_count(p); ++k)
            tau_min = std::min(tau_min,
                               std::clamp(tau.values[basis.patch_first_node(p) + k], 0.0, space.T));
        const int full_bins =
            std::min(basis.n_bin(), static_cast<int>(std::floor(tau_min / bin_w + 1e-9)));
        for (int q = basis.n_bin() - full_bins; q < basis.n_bin(); ++q)
            keep[basis.element_index(p, q)] = 1;
    }
    return keep;
}

TauFunction snapped_tau(const DiscreteDomain& dom, const SourceBasis& basis,
                        const SignalSpace& space, const TauFunction& tau) {
    const double bin_w = basis.bin_width();
    TauFunction out;
    out.values = VectorXd::Zero(dom.n_boundary());
    out.descriptor = tau.descriptor + "|snapped";
    for (int p = 0; p < basis.n_patch(); ++p) {
        double tau_min = space.T;
        for (int k = 0; k < basis.patch_node_count(p); ++k)
            tau_min = std::min(tau_min,
                               std::clamp(tau.values[basis.patch_first_node(p) + k], 0.0, space.T));
        const int full_bins =
            std::min(basis.n_bin(), static_cast<int>(std::floor(tau_min / bin_w + 1e-9)));
        for (int k = 0; k < basis.patch_node_count(p); ++k)
            out.values[basis.patch_first_node(p) + k] = full_bins * bin_w;
    }
    return out;
}

MatrixXd project_tau(const SignalSpace& space, const SourceBasis& basis, const TauFunction& tau,
                     const MatrixXd& f) {
    const std::vector<char> keep = active_elements(basis, space, tau);
    VectorXd coeffs = basis.project(space, f);
    for (int e = 0; e < basis.n_elements(); ++e)
        if (!keep[e]) coeffs[e] = 0.0;
    return basis.synthesize(space, coeffs);
}

ControlSolution solve_control(const ConnectingOperator& K, const TauFunction& tau, double alpha,
                              double cg_tol, int max_iterations) {
    if (alpha <= 0) throw config_error("control: alpha must be positive");
    const std::vector<char> keep = active_elements(K.basis, K.space, tau);
    std::vector<int> idx;
    for (int e = 0; e < K.basis.n_elements(); ++e)
        if (keep[e]) idx.push_back(e);

    ControlSolution sol;
    sol.coeffs = VectorXd::Zero(K.basis.n_elements());
    if (idx.empty()) return sol;

    const int m = static_cast<int>(idx.size());
    const VectorXd rhs_full = ramp_coefficients(K.basis, K.space);
    MatrixXd A(m, m);
    VectorXd b(m);
    for (int i = 0; i < m; ++i) {
        b[i] = rhs_full[idx[i]];
        for (int j = 0; j < m; ++j) A(i, j) = K.matrix(idx[i], idx[j]);
    }
    A.diagonal().array() += alpha;

    if (max_iterations <= 0) max_iterations = 10 * K.basis.n_elements();
    const double bnorm = b.norm();
    VectorXd x = VectorXd::Zero(m);
    if (bnorm == 0.0) {
        sol.rel_residual = 0.0;
    } else {
        VectorXd r = b, p = r;
        double rs = r.squaredNorm();
        int it = 0;
        sol.residual_history.push_back(1.0);
        while (it < max_iterations && std::sqrt(rs) > cg_tol * bnorm) {
            const VectorXd Ap = A * p;
            const double a_step = rs / p.dot(Ap);
            x += a_step * p;
            r -= a_step * Ap;
            const double rs_new = r.squaredNorm();
            sol.residual_history.push_back(std::sqrt(rs_new) / bnorm);
            p = r + (rs_new / rs) * p;
            rs = rs_new;
            ++it;
        }
        sol.iterations = it;
        sol.rel_residual = std::sqrt(rs) / bnorm;
        sol.converged = sol.rel_residual <= cg_tol;
    }
    for (int i = 0; i < m; ++i) sol.coeffs[idx[i]] = x[i];
    return sol;
}

std::vector<double> default_alpha_schedule(const ConnectingOperator& K, int decades) {
    std::vector<double> alphas;
    const double base = K.norm > 0 ? K.norm : 1.0;
    for (int k = 1; k <= decades; ++k) alphas.push_back(base * std::pow(10.0, -k));
    return alphas;
}

VolumeEstimate estimate_volume(const ConnectingOperator& K, const TauFunction& tau,
                               const std::vector<double>& alpha_schedule, double cg_tol,
                               int max_iterations) {
    if (alpha_schedule.size() < 3)
        throw config_error("volume estimate: need at least three alpha values");
    for (size_t i = 1; i < alpha_schedule.size(); ++i)
        if (alpha_schedule[i] >= alpha_schedule[i - 1])
            throw config_error("volume estimate: alpha schedule must decrease");

    const VectorXd pairing = volume_pairing_coefficients(K.basis, K.space);
    VolumeEstimate est;
    est.alphas = alpha_schedule;
    for (double alpha : alpha_schedule) {
        const ControlSolution sol = solve_control(K, tau, alpha, cg_tol, max_iterations);
        est.values.push_back(pairing.dot(sol.coeffs));
        est.cg_iterations.push_back(sol.iterations);
        est.cg_residuals.push_back(sol.rel_residual);
        if (!sol.converged) {
            est.reliable = false;
            est.flag = "unconverged";
        }
    }

    // Monotone approach to the limit, with 5% slack on the span.
    double vmax = 0.0;
    for (double v : est.values) vmax = std::max(vmax, std::abs(v));
    const double dir = est.values.back() >= est.values.front() ? 1.0 : -1.0;
    for (size_t i = 1; i < est.values.size(); ++i)
        if (dir * (est.values[i] - est.values[i - 1]) < -0.05 * vmax) {
            est.reliable = false;
            est.flag = est.flag.empty() ? "extrapolation unreliable" : est.flag;
        }

    const size_t n = est.values.size();
    const double a1 = est.alphas[n - 3], a2 = est.alphas[n - 2], a3 = est.alphas[n - 1];
    const double v1 = est.values[n - 3], v2 = est.values[n - 2], v3 = est.values[n - 1];
    const double d1 = v1 - v2, d2 = v2 - v3;
    if (!est.reliable || d1 * d2 <= 0.0 || std::abs(d2) < 1e-14 * (1.0 + vmax)) {
        est.value = v3;
        if (est.flag.empty() && std::abs(d2) >= 1e-14 * (1.0 + vmax)) {
            est.reliable = false;
            est.flag = "extrapolation unreliable";
        }
        est.fit_exponent = 0.0;
        return est;
    }

    // Solve (a1^p - a2^p) / (a2^p - a3^p) = d1/d2 for p by bisection.
    const double target = d1 / d2;
    auto ratio = [&](double p) {
        return (std::pow(a1, p) - std::pow(a2, p)) / (std::pow(a2, p) - std::pow(a3, p));
    };
    double lo = 0.02, hi = 5.0;
    if ((ratio(lo) - target) * (ratio(hi) - target) > 0) {
        est.value = v3;
        est.reliable = false;
        est.flag = "extrapolation unreliable";
        return est;
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((ratio(mid) - target) * (ratio(lo) - target) <= 0)
            hi = mid;
        else
            lo = mid;
    }
    const double p = 0.5 * (lo + hi);
    const double c = d2 / (std::pow(a2, p) - std::pow(a3, p));
    est.fit_exponent = p;
    est.value = v3 - c * std::pow(a3, p);

    double rss = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double model = est.value + c * std::pow(est.alphas[i], p);
        rss += (model - est.values[i]) * (model - est.values[i]);
    }
    est.fit_residual = std::sqrt(rss / n) / (vmax > 0 ? vmax : 1.0);
    return est;
}

}  // namespace incdet
