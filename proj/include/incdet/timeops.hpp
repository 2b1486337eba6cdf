#pragma once

#include "incdet/signal.hpp"

namespace incdet {

/**
 * Time-domain operators acting column-wise on signals, discretized so
 * the algebra is exact: time reversal pairs sample k with nt-1-k and is
 * an involution; the causal integral is a cumulative trapezoid cut off
 * at T; its adjoint is the literal transpose under the flat dt weight.
 */

/// f(t) -> f(2T - t) as an exact sample reversal.
MatrixXd time_reversal(const MatrixXd& f);

/// Half the trapezoidal integral of f over the samples in [t, 2T - t],
/// zero for t >= T.
MatrixXd windowed_time_integral(const SignalSpace& space, const MatrixXd& f);

/// Cumulative trapezoidal integral of f over [0, t], zeroed for t >= T.
MatrixXd causal_time_integral(const SignalSpace& space, const MatrixXd& f);

/// Exact discrete transpose of causal_time_integral in the signal space.
MatrixXd causal_time_integral_adjoint(const SignalSpace& space, const MatrixXd& f);

/// The closed form of causal_time_integral_adjoint applied to the
/// constant 1 signal: (T - s) clipped at zero, sampled on the time grid.
MatrixXd ramp_to_T(const SignalSpace& space);

}  // namespace incdet
