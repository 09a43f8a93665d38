#pragma once

#include "holderreg/limits.hpp"
#include "holderreg/sampling.hpp"
#include "holderreg/setmap.hpp"
#include "holderreg/types.hpp"

namespace holderreg {

/// Hadamard directional subderivative of order q at xbar in direction x:
/// the liminf of (f(xbar + t u) - f(xbar)) / t^q over u -> x, t -> 0.
///
/// Per rung t_k the quotient is minimized over a refined grid of the max-norm
/// ball of radius t_k around x (the ball radius is coupled to the rung so the
/// joint limit is captured); the rung sequence is then trend-analyzed.
/// At x = 0 a small estimate is snapped to exactly 0.
LimitEstimate hadamard_subderivative(const ScalarFn& f, const Vec& xbar, const Vec& x,
                                     HolderOrder q, const ScaleLadder& ladder);

/// The norm-like quantity inf over unit directions of (f'_q(xbar; .))_+.
/// per_scale records one (direction index, positive-part value) row per grid
/// direction; the convergence flag is taken from the direction achieving the
/// infimum.
LimitEstimate subderivative_norm(const ScalarFn& f, const Vec& xbar, HolderOrder q,
                                 const DirectionGrid& grid, const ScaleLadder& ladder,
                                 int parallel = 1);

/// Two-sided limit estimate for q-order Hadamard directional
/// differentiability. `single_valued` is false when min- and max-quotients
/// stay apart at the finest clean rungs.
struct HadamardDerivative {
  double value = 0.0;
  bool single_valued = false;
  LimitEstimate detail;
};

HadamardDerivative hadamard_derivative(const ScalarFn& g, const Vec& xbar, const Vec& x,
                                       HolderOrder q, const ScaleLadder& ladder);

/// Component-wise derivative of a vector-valued function; single_valued only
/// when every component passes.
struct VectorDerivative {
  Vec value;
  bool single_valued = false;
};

VectorDerivative hadamard_derivative_vec(const VectorFn& g, const Vec& xbar, const Vec& x,
                                         HolderOrder q, const ScaleLadder& ladder);

}  // namespace holderreg
