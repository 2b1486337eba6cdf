#include "incdet/basis.hpp"

#include <cmath>

namespace incdet {

SourceBasis::SourceBasis(const DiscreteDomain& dom, const SignalSpace& space, int n_patch,
                         int n_bin)
    : n_patch_(n_patch), n_bin_(n_bin), nb_(dom.n_boundary()), dt_(space.dt) {
    if (n_patch < 1 || n_patch > dom.n_boundary())
        throw config_error("basis: n_patch out of range");
    if (n_bin < 1) throw config_error("basis: n_bin out of range");
    if (space.samples_to_T() % n_bin != 0)
        throw config_error("basis: time bins must hold whole samples; "
                           "build the signal space with bin granularity n_bin");
    samples_per_bin_ = space.samples_to_T() / n_bin;

    // Near-equal contiguous patches starting at the arc origin.
    patch_first_.resize(n_patch);
    patch_count_.resize(n_patch);
    patch_of_node_.assign(nb_, 0);
    const int base = nb_ / n_patch, extra = nb_ % n_patch;
    int at = 0;
    for (int p = 0; p < n_patch; ++p) {
        patch_first_[p] = at;
        patch_count_[p] = base + (p < extra ? 1 : 0);
        for (int k = 0; k < patch_count_[p]; ++k) patch_of_node_[at + k] = p;
        at += patch_count_[p];
    }

    norm_factor_.resize(n_patch);
    for (int p = 0; p < n_patch; ++p) {
        double wsum = 0.0;
        for (int k = 0; k < patch_count_[p]; ++k)
            wsum += space.boundary_weights[patch_first_[p] + k];
        norm_factor_[p] = 1.0 / std::sqrt(samples_per_bin_ * dt_ * wsum);
    }
}

MatrixXd SourceBasis::synthesize(const SignalSpace& space, const VectorXd& coeffs) const {
    if (coeffs.size() != n_elements()) throw config_error("basis: coefficient size mismatch");
    MatrixXd f = space.zero_signal();
    for (int p = 0; p < n_patch_; ++p)
        for (int q = 0; q < n_bin_; ++q) {
            const double v = coeffs[element_index(p, q)] * norm_factor_[p];
            if (v == 0.0) continue;
            f.block(q * samples_per_bin_, patch_first_[p], samples_per_bin_, patch_count_[p])
                .array() += v;
        }
    return f;
}

VectorXd SourceBasis::project(const SignalSpace& space, const MatrixXd& f) const {
    if (f.rows() != space.nt || f.cols() != nb_)
        throw config_error("basis: signal shape mismatch");
    VectorXd coeffs(n_elements());
    for (int p = 0; p < n_patch_; ++p) {
        const auto w = space.boundary_weights.segment(patch_first_[p], patch_count_[p]);
        for (int q = 0; q < n_bin_; ++q) {
            const auto block =
                f.block(q * samples_per_bin_, patch_first_[p], samples_per_bin_, patch_count_[p]);
            coeffs[element_index(p, q)] = norm_factor_[p] * dt_ * (block * w).sum();
        }
    }
    return coeffs;
}

double SourceBasis::span_defect(const SignalSpace& space, const MatrixXd& f) const {
    const double nf = signal_norm(space, f);
    if (nf == 0.0) return 0.0;
    const MatrixXd back = synthesize(space, project(space, f));
    return signal_norm(space, MatrixXd(f - back)) / nf;
}

}  // namespace incdet
