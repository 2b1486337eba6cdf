#pragma once

#include <string>

#include "incdet/basis.hpp"
#include "incdet/wave.hpp"

namespace incdet {

/**
 * The boundary measurement map: Neumann source in, Dirichlet trace over
 * (0, 2T) out. Matrix-free mode runs one forward solve per application;
 * precomputed mode holds one flattened trace column per basis element
 * and only accepts sources inside the basis span.
 */
class LambdaOperator {
  public:
    enum class Mode { MatrixFree, Precomputed };

    static LambdaOperator matrix_free(const DiscreteDomain& dom, const SpeedModel& speed,
                                      const SignalSpace& space);
    /// One forward solve per source patch; time bins reuse the patch
    /// solution shifted by whole steps, which the scheme maps through
    /// exactly.
    static LambdaOperator assemble(const DiscreteDomain& dom, const SpeedModel& speed,
                                   const SignalSpace& space, const SourceBasis& basis);

    Mode mode() const { return mode_; }
    const DiscreteDomain& domain() const { return dom_; }
    const SpeedModel& speed() const { return speed_; }
    const SignalSpace& space() const { return space_; }
    const SourceBasis& basis() const { return basis_; }
    const MatrixXd& columns() const { return columns_; }
    const std::string& speed_hash() const { return speed_hash_; }

    MatrixXd apply(const MatrixXd& f) const;

    void save(const std::string& path) const;
    static LambdaOperator load(const std::string& path, const DiscreteDomain& dom,
                               const SpeedModel& speed);

  private:
    Mode mode_ = Mode::MatrixFree;
    DiscreteDomain dom_;
    SpeedModel speed_;
    SignalSpace space_;
    SourceBasis basis_;
    MatrixXd columns_;  // (nt * n_b) x n_elements, traces flattened column-major
    std::string speed_hash_;
};

}  // namespace incdet
