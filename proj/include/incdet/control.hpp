#pragma once

#include <string>
#include <vector>

#include "incdet/lambda.hpp"
#include "incdet/regions.hpp"
#include "incdet/timeops.hpp"

namespace incdet {

/**
 * The connecting operator K = J L - R L R J of the boundary control
 * method, realized as a symmetric positive semidefinite matrix on the
 * source basis. Pairing a source with K reproduces the inner product of
 * the interior wave snapshots at time T (the Blagovestchenskii identity),
 * which is what lets volumes be read off from boundary data alone.
 *
 * Discretization breaks the symmetry at O(h + dt); the defect is
 * recorded, the matrix symmetrized, and its spectrum floored at zero so
 * that K + alpha stays safely positive for every regularization weight.
 */
struct ConnectingOperator {
    MatrixXd matrix;
    SourceBasis basis;
    SignalSpace space;
    double asymmetry_defect = 0.0;  ///< ||K - K^T|| / ||K|| before symmetrizing
    double psd_shift = 0.0;         ///< magnitude of the clipped negative tail
    double norm = 0.0;              ///< largest eigenvalue
};

/// Matrix-free application J L f - R L R J f (two forward solves).
MatrixXd apply_connecting(const LambdaOperator& lambda, const MatrixXd& f);

/// Build the basis matrix of K. Matrix-free measurement operators run
/// one extra solve per element; precomputed ones reuse their columns
/// through the time-reversal adjoint identity R L R = L^*.
ConnectingOperator assemble_connecting_operator(const LambdaOperator& lambda,
                                                const SourceBasis& basis);

/**
 * Support projection for a boundary time budget tau: an element stays
 * iff its whole patch x bin block lies inside {T - tau(y) <= t <= T}.
 * tau is snapped down to bin boundaries per patch (using the patch
 * minimum), so the projection is an exact 0/1 coefficient mask.
 */
std::vector<char> active_elements(const SourceBasis& basis, const SignalSpace& space,
                                  const TauFunction& tau);

/// The patchwise bin-floored budget the projection actually realizes.
TauFunction snapped_tau(const DiscreteDomain& dom, const SourceBasis& basis,
                        const SignalSpace& space, const TauFunction& tau);

/// P_tau on signals: zero every masked basis coefficient.
MatrixXd project_tau(const SignalSpace& space, const SourceBasis& basis, const TauFunction& tau,
                     const MatrixXd& f);

struct ControlSolution {
    VectorXd coeffs;  ///< full-length basis coefficients (masked ones zero)
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = true;
    std::vector<double> residual_history;
};

/**
 * Conjugate gradients on (P K P + alpha) f = P b restricted to the
 * active coefficients, b the ramp (T - s)+ paired with the basis.
 * Stops at relative residual cg_tol or iteration cap, returning the
 * best-so-far iterate flagged unconverged in the latter case.
 */
ControlSolution solve_control(const ConnectingOperator& K, const TauFunction& tau, double alpha,
                              double cg_tol = 1e-8, int max_iterations = -1);

struct VolumeEstimate {
    double value = 0.0;               ///< extrapolated volume at alpha -> 0
    bool reliable = true;
    std::string flag;
    std::vector<double> alphas;
    std::vector<double> values;       ///< v(alpha) per schedule entry
    std::vector<int> cg_iterations;
    std::vector<double> cg_residuals;
    double fit_exponent = 0.0;
    double fit_residual = 0.0;
};

/// Geometric schedule 10^-1 .. 10^-4 of ||K||.
std::vector<double> default_alpha_schedule(const ConnectingOperator& K, int decades = 4);

/**
 * Volume of the domain of influence from boundary data: evaluates
 * v(alpha) = <I f_alpha, 1> over the schedule and extrapolates the
 * power-law tail v = v0 + c * alpha^p through the last three points.
 */
VolumeEstimate estimate_volume(const ConnectingOperator& K, const TauFunction& tau,
                               const std::vector<double>& alpha_schedule, double cg_tol = 1e-8,
                               int max_iterations = -1);

/** A sampled map r -> volume with its provenance. */
struct VolumeCurve {
    enum class Provenance { Oracle, Control };
    struct Sample {
        double r = 0.0;
        double value = 0.0;
        VolumeEstimate diagnostics;  ///< empty for oracle rows
    };
    Provenance provenance = Provenance::Oracle;
    std::vector<Sample> samples;
};

}  // namespace incdet
