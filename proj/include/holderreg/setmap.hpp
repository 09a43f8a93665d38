#pragma once

#include <functional>
#include <memory>
#include <optional>

#include "holderreg/set_repr.hpp"
#include "holderreg/types.hpp"

namespace holderreg {

/// Membership tolerance for graph-sample consistency checks.
inline constexpr double kMembershipTol = 1e-9;

/// Extended-real-valued function oracle. Out of domain is encoded as +inf,
/// never as NaN or an exception.
struct ScalarFn {
  int n = 1;
  std::function<double(const Vec&)> eval;
  std::optional<Box> domain_hint;

  double operator()(const Vec& x) const { return eval(x); }
  double operator()(double x) const { return eval(Vec{x}); }
};

/// Vector-valued single-valued function (used for perturbations g : X -> Y).
struct VectorFn {
  int n = 1;
  int m = 1;
  std::function<Vec(const Vec&)> eval;

  Vec operator()(const Vec& x) const { return eval(x); }
};

/// Oracle bundle for F : R^n =: R^m. `image` is the source of truth;
/// `graph_sample` returns points of gph F inside the max-norm ball of the
/// given radius around a center in R^{n+m}, on a deterministic grid.
struct SetValuedMap {
  int n = 1;
  int m = 1;
  std::function<SetRepr(const Vec&)> image;
  std::function<std::vector<Vec>(const Vec& center, double radius, int resolution)> graph_sample;
  /// Set when this map is an inverse: the forward map provides exact
  /// membership tests, the own `image` oracle being only approximate.
  std::shared_ptr<const SetValuedMap> inverse_of;

  SetRepr operator()(const Vec& x) const { return image(x); }
};

/// d(out, M(in)), routed through the forward map when M is an inverse.
double graph_residual(const SetValuedMap& M, const Vec& in, const Vec& out);

/// Points-per-axis default for derived graph samplers.
inline constexpr int kDefaultSamplerResolution = 401;

/// Builds the canonical graph sampler from an image oracle: a uniform x-grid
/// over the ball cross-section, image sets restricted to the y-window.
/// Interval images contribute their clipped endpoints plus an interior grid;
/// cloud images are filtered.
std::function<std::vector<Vec>(const Vec&, double, int)> make_image_graph_sampler(
    std::function<SetRepr(const Vec&)> image, int n, int m);

/// Convenience constructor wiring the default sampler.
SetValuedMap make_map(int n, int m, std::function<SetRepr(const Vec&)> image);

/// x -> [f(x), +inf), empty where f(x) = +inf.
SetValuedMap make_epigraph_map(const ScalarFn& f);

/// Swaps the roles of x and y. The inverse image oracle is derived by
/// filtering graph samples and is therefore approximate; the inverse graph
/// sampler is exact (coordinate swap).
SetValuedMap invert_map(const SetValuedMap& F, double search_radius = 4.0);

/// (F + g)(x) = F(x) + g(x) for single-valued g.
SetValuedMap translate_map(const SetValuedMap& F, const VectorFn& g);

/// Single-valued map {x -> {g(x)}} as a SetValuedMap.
SetValuedMap function_as_map(const VectorFn& g);

}  // namespace holderreg
