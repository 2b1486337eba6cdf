#pragma once

#include <vector>

#include "incdet/signal.hpp"

namespace incdet {

/**
 * Orthonormal source basis of patch x bin indicators: n_patch contiguous
 * boundary arcs times n_bin time bins covering (0, T), each element the
 * indicator of one patch x bin block scaled to unit signal norm. Supports
 * are disjoint, so projection and synthesis are block sums. Requires the
 * sample count up to T to divide evenly into bins (the signal space
 * factory rounds nt accordingly).
 */
class SourceBasis {
  public:
    SourceBasis() = default;
    SourceBasis(const DiscreteDomain& dom, const SignalSpace& space, int n_patch, int n_bin);

    int n_patch() const { return n_patch_; }
    int n_bin() const { return n_bin_; }
    int n_elements() const { return n_patch_ * n_bin_; }
    int samples_per_bin() const { return samples_per_bin_; }
    double bin_width() const { return samples_per_bin_ * dt_; }

    int element_index(int patch, int bin) const { return patch * n_bin_ + bin; }
    int patch_of_element(int e) const { return e / n_bin_; }
    int bin_of_element(int e) const { return e % n_bin_; }

    int patch_first_node(int p) const { return patch_first_[p]; }
    int patch_node_count(int p) const { return patch_count_[p]; }
    int patch_of_boundary_node(int b) const { return patch_of_node_[b]; }

    double element_norm_factor(int e) const { return norm_factor_[patch_of_element(e)]; }

    /// Dense signal from basis coefficients.
    MatrixXd synthesize(const SignalSpace& space, const VectorXd& coeffs) const;

    /// Coefficients <e, f> for every element (orthonormal projection).
    VectorXd project(const SignalSpace& space, const MatrixXd& f) const;

    /// Relative distance between f and its projection onto the span.
    double span_defect(const SignalSpace& space, const MatrixXd& f) const;

  private:
    int n_patch_ = 0, n_bin_ = 0, samples_per_bin_ = 0, nb_ = 0;
    double dt_ = 0.0;
    std::vector<int> patch_first_, patch_count_, patch_of_node_;
    std::vector<double> norm_factor_;  // per patch (bins share the norm)
};

}  // namespace incdet
