#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holderreg/graphical.hpp"
#include "holderreg/subderivative.hpp"

using namespace holderreg;

namespace {

ScalarFn square_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return x[0] * x[0]; };
  return f;
}

// max{x1 + 1, ||x|| - 1}: the canonical function of the disk-constrained
// linear program, minimized at (-1, 0).
ScalarFn semicircle_fn() {
  ScalarFn f;
  f.n = 2;
  f.eval = [](const Vec& x) {
    return std::max(x[0] + 1.0, std::sqrt(x[0] * x[0] + x[1] * x[1]) - 1.0);
  };
  return f;
}

SetValuedMap epi_square() { return make_epigraph_map(square_fn()); }

HomogeneousSampler explicit_sampler(int n, int m, double order,
                                    std::function<SetRepr(const Vec&)> at) {
  HomogeneousSampler H;
  H.n = n;
  H.m = m;
  H.order = order;
  H.at = std::move(at);
  return H;
}

}  // namespace

TEST_CASE("subderivative of x^2 at order 2") {
  const auto est = hadamard_subderivative(square_fn(), {0.0}, {1.0}, HolderOrder(2),
                                          make_scale_ladder());
  CHECK(est.value == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(est.verdict == Verdict::Positive);
}

TEST_CASE("subderivative of the semicircle function at the solution point") {
  const ScalarFn f = semicircle_fn();
  const Vec xbar{-1.0, 0.0};

  // tangent direction, order 2: the quotient collapses to
  // inf_a max{a, -a + 1/2} = 1/4
  const auto t2 = hadamard_subderivative(f, xbar, {0.0, 1.0}, HolderOrder(2),
                                         make_scale_ladder());
  CHECK(t2.value == doctest::Approx(0.25).epsilon(0.08));

  // any direction with a radial component diverges at order 2
  const auto rad = hadamard_subderivative(f, xbar, {1.0, 0.0}, HolderOrder(2),
                                          make_scale_ladder());
  CHECK(rad.verdict == Verdict::Infinite);
}

TEST_CASE("subderivative at the zero direction of a continuous function") {
  for (double q : {1.0, 2.0}) {
    const auto est = hadamard_subderivative(square_fn(), {0.0}, {0.0}, HolderOrder(q),
                                            make_scale_ladder());
    CHECK(est.value == 0.0);
    CHECK(est.verdict == Verdict::Zero);
  }
}

TEST_CASE("subderivative precondition") {
  ScalarFn partial;
  partial.n = 1;
  partial.eval = [](const Vec& x) { return x[0] < 0.0 ? kInf : x[0]; };
  CHECK_THROWS_AS(hadamard_subderivative(partial, {-1.0}, {1.0}, HolderOrder(1),
                                         make_scale_ladder()),
                  PreconditionError);
}

TEST_CASE("subderivative norm of x^2") {
  // oracle: the quotient ((t u)^2)/t^2 = u^2 equals 1 at u = +-1 for every t,
  // so the infimum over the two unit directions is exactly 1
  double oracle = kInf;
  for (double u : {-1.0, 1.0})
    for (double t : make_scale_ladder().values())
      oracle = std::min(oracle, positive_part((t * u) * (t * u) / (t * t)));
  REQUIRE(oracle == doctest::Approx(1.0));

  const auto est = subderivative_norm(square_fn(), {0.0}, HolderOrder(2),
                                      make_direction_grid(1, 2), make_scale_ladder());
  CHECK(est.value == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(est.verdict == Verdict::Positive);
}

TEST_CASE("subderivative norm of the semicircle function") {
  const ScalarFn f = semicircle_fn();
  const Vec xbar{-1.0, 0.0};
  const DirectionGrid grid = make_direction_grid(2, 64);

  const auto n2 = subderivative_norm(f, xbar, HolderOrder(2), grid, make_scale_ladder());
  CHECK(n2.value == doctest::Approx(0.25).epsilon(0.08));
  CHECK(n2.verdict == Verdict::Positive);

  const auto n1 = subderivative_norm(f, xbar, HolderOrder(1), grid, make_scale_ladder());
  CHECK(n1.value <= 1e-3);
}

TEST_CASE("subderivative norm is independent of the parallel degree") {
  const ScalarFn f = semicircle_fn();
  const DirectionGrid grid = make_direction_grid(2, 16);
  const auto seq = subderivative_norm(f, {-1.0, 0.0}, HolderOrder(2), grid,
                                      make_scale_ladder(), 1);
  const auto par = subderivative_norm(f, {-1.0, 0.0}, HolderOrder(2), grid,
                                      make_scale_ladder(), 4);
  CHECK(seq.value == par.value);
  REQUIRE(seq.per_scale.size() == par.per_scale.size());
  for (std::size_t i = 0; i < seq.per_scale.size(); ++i)
    CHECK(seq.per_scale[i].second == par.per_scale[i].second);
}

TEST_CASE("hadamard derivative values and the single-valuedness flag") {
  ScalarFn ident;
  ident.n = 1;
  ident.eval = [](const Vec& x) { return x[0]; };
  const auto d1 = hadamard_derivative(ident, {0.0}, {1.0}, HolderOrder(1), make_scale_ladder());
  CHECK(d1.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d1.single_valued);

  ScalarFn av;
  av.n = 1;
  av.eval = [](const Vec& x) { return std::abs(x[0]); };
  const auto d2 = hadamard_derivative(av, {0.0}, {1.0}, HolderOrder(1), make_scale_ladder());
  CHECK(d2.value == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(d2.single_valued);

  // oracle: (t u^2)/t -> 0 along the ladder
  const auto d3 = hadamard_derivative(square_fn(), {0.0}, {1.0}, HolderOrder(1),
                                      make_scale_ladder());
  CHECK(std::abs(d3.value) <= 1e-4);
  CHECK(d3.single_valued);

  ScalarFn root;
  root.n = 1;
  root.eval = [](const Vec& x) {
    return (x[0] >= 0 ? 1.0 : -1.0) * std::sqrt(std::abs(x[0]));
  };
  const auto d4 = hadamard_derivative(root, {0.0}, {1.0}, HolderOrder(1), make_scale_ladder());
  CHECK_FALSE(d4.single_valued);
}

TEST_CASE("graphical derivative of the parabola epigraph: three regimes") {
  const SetValuedMap F = epi_square();
  const Vec base_x{0.0}, base_y{0.0};
  const ScaleLadder lad = make_scale_ladder();

  const SetRepr d2 = graphical_derivative_image(F, base_x, base_y, {1.0}, HolderOrder(2), lad);
  REQUIRE(d2.kind() == SetRepr::Kind::Intervals);
  CHECK(d2.parts()[0].lo == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(d2.parts()[0].hi == kInf);

  const SetRepr d1 = graphical_derivative_image(F, base_x, base_y, {1.0}, HolderOrder(1), lad);
  REQUIRE(d1.kind() == SetRepr::Kind::Intervals);
  CHECK(std::abs(d1.parts()[0].lo) <= 1e-2);
  CHECK(d1.parts()[0].hi == kInf);

  const SetRepr d3 = graphical_derivative_image(F, base_x, base_y, {1.0}, HolderOrder(3), lad);
  CHECK(d3.is_empty());

  CHECK_THROWS_AS(
      graphical_derivative_image(F, {1.0}, {0.0}, {1.0}, HolderOrder(2), lad),
      PreconditionError);
}

TEST_CASE("derivative samplers scale q-order homogeneously") {
  const SetValuedMap F = epi_square();
  const HomogeneousSampler H =
      derivative_sampler(F, {0.0}, {0.0}, HolderOrder(2), make_scale_ladder());
  const double at1 = H.at({1.0}).parts()[0].lo;
  for (double lam : {0.5, 2.0, 3.0}) {
    const double atl = H.at({lam}).parts()[0].lo;
    CHECK(atl == doctest::Approx(lam * lam * at1).epsilon(1e-2));
  }
}

TEST_CASE("norm_lower of the epigraph derivative: the q-trichotomy") {
  const SetValuedMap F = epi_square();
  const DirectionGrid grid = make_direction_grid(1, 2);
  const ScaleLadder lad = make_scale_ladder();

  const auto n2 = norm_lower(derivative_sampler(F, {0.0}, {0.0}, HolderOrder(2), lad), grid);
  CHECK(n2.value == doctest::Approx(1.0).epsilon(2e-2));

  const auto n1 = norm_lower(derivative_sampler(F, {0.0}, {0.0}, HolderOrder(1), lad), grid);
  CHECK(std::abs(n1.value) <= 1e-2);
  CHECK(n1.verdict == Verdict::Zero);

  const auto n3 = norm_lower(derivative_sampler(F, {0.0}, {0.0}, HolderOrder(3), lad), grid);
  CHECK(n3.value == kInf);
  CHECK(n3.verdict == Verdict::Infinite);
}

TEST_CASE("norm_outer cases") {
  const DirectionGrid grid = make_direction_grid(1, 2);

  // epigraph derivatives always have unbounded images upward
  const auto epi = norm_outer(
      derivative_sampler(epi_square(), {0.0}, {0.0}, HolderOrder(2), make_scale_ladder()), grid);
  CHECK(epi.value == kInf);
  CHECK(epi.verdict == Verdict::Infinite);

  const auto zero = norm_outer(
      explicit_sampler(1, 1, 1.0, [](const Vec&) { return SetRepr::singleton(0.0); }), grid);
  CHECK(zero.value == 0.0);

  const auto triple = norm_outer(
      explicit_sampler(1, 1, 1.0,
                       [](const Vec& u) { return SetRepr::singleton(3.0 * u[0]); }),
      grid);
  CHECK(triple.value == doctest::Approx(3.0));
}

TEST_CASE("norm_star cases") {
  const DirectionGrid grid = make_direction_grid(1, 2);

  const auto ident = norm_star(
      explicit_sampler(1, 1, 1.0, [](const Vec& u) { return SetRepr::singleton(u[0]); }), grid);
  CHECK(ident.value == doctest::Approx(1.0));

  const auto empty = norm_star(
      explicit_sampler(1, 1, 1.0,
                       [](const Vec& u) {
                         return norm2(u) == 0.0 ? SetRepr::singleton(0.0) : SetRepr::empty(1);
                       }),
      grid);
  CHECK(empty.value == kInf);
  CHECK(empty.verdict == Verdict::Infinite);

  HomogeneousSampler bad = explicit_sampler(
      2, 1, 1.0, [](const Vec&) { return SetRepr::singleton(0.0); });
  CHECK_THROWS_AS(norm_star(bad, make_direction_grid(2, 8)), UsageError);
}

TEST_CASE("ordering: norm_lower <= norm_outer on maps with nonzero graph points") {
  VectorFn twice;
  twice.n = 1;
  twice.m = 1;
  twice.eval = [](const Vec& x) { return Vec{2.0 * x[0]}; };
  const auto H = derivative_sampler(function_as_map(twice), {0.0}, {0.0}, HolderOrder(1),
                                    make_scale_ladder());
  const DirectionGrid grid = make_direction_grid(1, 2);
  const auto lo = norm_lower(H, grid);
  const auto hi = norm_outer(H, grid);
  CHECK(lo.value <= hi.value * 1.05 + 1e-12);
  CHECK(lo.value == doctest::Approx(2.0).epsilon(2e-2));
  CHECK(hi.value == doctest::Approx(2.0).epsilon(2e-2));
}
