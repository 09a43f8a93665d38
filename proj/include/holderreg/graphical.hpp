#pragma once

#include <memory>

#include "holderreg/limits.hpp"
#include "holderreg/sampling.hpp"
#include "holderreg/setmap.hpp"

namespace holderreg {

/// Direction-indexed oracle for a q-order positively homogeneous mapping H:
/// at(u) approximates H(u). Built either directly (tests, catalogs) or as a
/// graphical derivative of a SetValuedMap.
struct HomogeneousSampler {
  int n = 1;
  int m = 1;
  double order = 1.0;
  std::function<SetRepr(const Vec&)> at;
  /// Spatial slack of the reported images (cluster tolerance for derivative
  /// samplers); consumers size their triviality thresholds from it.
  double image_slack = 1e-9;
};

/// Default clustering tolerance 3 * t_finest^min(q,1) for rescaled samples.
double default_cluster_tol(HolderOrder q, const ScaleLadder& ladder);

/// Image of the q-order graphical derivative D_q F(xbar, ybar) at direction
/// u: per rung, graph samples with (x' - xbar)/t within t of u are rescaled
/// to v = (y' - ybar)/t^q; the finest-rung set is kept only where it persists
/// across the last three rungs, then cluster-merged. Rescaled interval images
/// are handled exactly (unbounded endpoints preserved); values beyond the
/// divergence window are treated as escaping to infinity.
SetRepr graphical_derivative_image(const SetValuedMap& F, const Vec& xbar, const Vec& ybar,
                                   const Vec& u, HolderOrder q, const ScaleLadder& ladder,
                                   double cluster_tol = -1.0);

/// D_q F(xbar, ybar) as a memoizing direction oracle.
HomogeneousSampler derivative_sampler(const SetValuedMap& F, const Vec& xbar, const Vec& ybar,
                                      HolderOrder q, const ScaleLadder& ladder,
                                      double cluster_tol = -1.0);

/// (H + f) at the sampler level for single-valued f.
HomogeneousSampler translate_sampler(const HomogeneousSampler& H, const VectorFn& f);

/// ||H||^- : inf over unit directions of d(0, H(u)); +inf when every image is
/// empty (dom H = {0}).
LimitEstimate norm_lower(const HomogeneousSampler& H, const DirectionGrid& grid,
                         int parallel = 1);

/// ||H||^+ : sup over unit directions of sup ||y|| over H(u), with the
/// H(0) != {0} escape to +inf.
LimitEstimate norm_outer(const HomogeneousSampler& H, const DirectionGrid& grid,
                         int parallel = 1);

/// ||H||^* : inf over unit directions u and y in H(u) of <y, u>_+; +inf when
/// dom H is contained in {0}. Requires matching input/output dimensions.
LimitEstimate norm_star(const HomogeneousSampler& H, const DirectionGrid& grid,
                        int parallel = 1);

}  // namespace holderreg
