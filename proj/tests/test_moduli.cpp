#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "holderreg/regularity.hpp"

using namespace holderreg;

namespace {

ScalarFn power_fn(int k) {
  ScalarFn f;
  f.n = 1;
  f.eval = [k](const Vec& x) { return std::pow(x[0], k); };
  return f;
}

ScalarFn abs_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return std::abs(x[0]); };
  return f;
}

SetValuedMap epi_square() { return make_epigraph_map(power_fn(2)); }

SetValuedMap identity_map() {
  VectorFn id;
  id.n = 1;
  id.m = 1;
  id.eval = [](const Vec& x) { return x; };
  return function_as_map(id);
}

// gradient-defined subdifferential oracle (interval collapses to a point)
SubdiffOracle gradient_oracle(ScalarFn f, std::function<double(double)> grad) {
  SubdiffOracle o;
  o.f = std::move(f);
  o.subdiff = [grad = std::move(grad)](double x) {
    const double g = grad(x);
    return Interval{g, g};
  };
  return o;
}

SubdiffOracle abs_oracle() {
  SubdiffOracle o;
  o.f = abs_fn();
  o.subdiff = [](double x) {
    if (x > 0.0) return Interval{1.0, 1.0};
    if (x < 0.0) return Interval{-1.0, -1.0};
    return Interval{-1.0, 1.0};
  };
  return o;
}

const ScaleLadder kRadii = make_radii_ladder();
const DirectionGrid kGrid1 = make_direction_grid(1, 2);

}  // namespace

TEST_CASE("strong subregularity of the parabola epigraph") {
  const SetValuedMap F = epi_square();
  // oracle: d(0, [x^2, inf)) = x^2, so the quotient at order 2 is exactly 1
  for (double x : {0.3, -0.05, 0.001}) {
    const double quotient = (x * x) / std::pow(std::abs(x), 2.0);
    REQUIRE(quotient == doctest::Approx(1.0));
  }

  const auto r2 = strong_subregularity_modulus(F, {0.0}, {0.0}, HolderOrder(2), kRadii, kGrid1);
  CHECK(r2.modulus == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(r2.verdict == ModVerdict::Holds);

  const auto r1 = strong_subregularity_modulus(F, {0.0}, {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(r1.modulus <= 1e-3);
  CHECK(r1.verdict == ModVerdict::Fails);

  const auto r3 = strong_subregularity_modulus(F, {0.0}, {0.0}, HolderOrder(3), kRadii, kGrid1);
  CHECK(r3.modulus == kInf);
  CHECK(r3.verdict == ModVerdict::Holds);

  CHECK_THROWS_AS(
      strong_subregularity_modulus(F, {1.0}, {0.0}, HolderOrder(2), kRadii, kGrid1),
      PreconditionError);
}

TEST_CASE("strong subregularity of the identity map") {
  const auto rep =
      strong_subregularity_modulus(identity_map(), {0.0}, {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(rep.modulus == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.verdict == ModVerdict::Holds);
}

TEST_CASE("isolated calmness of the inverse parabola epigraph") {
  const SetValuedMap S = invert_map(epi_square());

  const auto c2 = isolated_calmness_modulus(S, {0.0}, {0.0}, HolderOrder(2), kRadii, kGrid1);
  CHECK(c2.modulus == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(c2.verdict == ModVerdict::Holds);
  REQUIRE(c2.isolated_point.has_value());
  CHECK(*c2.isolated_point);

  const auto c1 = isolated_calmness_modulus(S, {0.0}, {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(c1.modulus <= 1e-3);
  CHECK(c1.verdict == ModVerdict::Fails);
}

TEST_CASE("isolated calmness duality with strong subregularity") {
  const SetValuedMap F = epi_square();
  const SetValuedMap S = invert_map(F);
  for (double q : {1.0, 2.0}) {
    const auto srg = strong_subregularity_modulus(F, {0.0}, {0.0}, HolderOrder(q), kRadii, kGrid1);
    const auto clm = isolated_calmness_modulus(S, {0.0}, {0.0}, HolderOrder(q), kRadii, kGrid1);
    if (srg.modulus == kInf || clm.modulus == kInf) {
      CHECK(srg.modulus == clm.modulus);
    } else if (srg.modulus <= 1e-2 || clm.modulus <= 1e-2) {
      CHECK(srg.modulus <= 1e-2);
      CHECK(clm.modulus <= 1e-2);
    } else {
      CHECK(clm.modulus ==
            doctest::Approx(srg.modulus).epsilon(0.05));
    }
  }
}

TEST_CASE("isolated calmness of the identity solution map") {
  const auto rep =
      isolated_calmness_modulus(identity_map(), {0.0}, {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(rep.modulus == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(rep.verdict == ModVerdict::Holds);
}

TEST_CASE("sharp minimum moduli of the even powers") {
  const auto s2 = sharp_minimum_modulus(power_fn(2), {0.0}, HolderOrder(2), kRadii, kGrid1);
  CHECK(s2.modulus == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(s2.verdict == ModVerdict::Holds);

  const auto s4 = sharp_minimum_modulus(power_fn(4), {0.0}, HolderOrder(4), kRadii, kGrid1);
  CHECK(s4.modulus == doctest::Approx(1.0).epsilon(2e-2));

  const auto sa = sharp_minimum_modulus(abs_fn(), {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(sa.modulus == doctest::Approx(1.0).epsilon(1e-3));

  // no first-order growth of x^2
  const auto s1 = sharp_minimum_modulus(power_fn(2), {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(s1.modulus <= 1e-3);
  CHECK(s1.verdict == ModVerdict::Fails);

  // |x| has infinite second-order sharpness
  const auto si = sharp_minimum_modulus(abs_fn(), {0.0}, HolderOrder(2), kRadii, kGrid1);
  CHECK(si.modulus == kInf);

  // a maximizer fails immediately
  ScalarFn neg;
  neg.n = 1;
  neg.eval = [](const Vec& x) { return -std::abs(x[0]); };
  const auto sf = sharp_minimum_modulus(neg, {0.0}, HolderOrder(1), kRadii, kGrid1);
  CHECK(sf.modulus == 0.0);
  CHECK(sf.verdict == ModVerdict::Fails);
}

TEST_CASE("modulus estimates are monotone in the order near the critical one") {
  const SetValuedMap F = epi_square();
  double prev = -1.0;
  for (double q : {1.0, 1.5, 2.0}) {
    const auto rep = strong_subregularity_modulus(F, {0.0}, {0.0}, HolderOrder(q), kRadii, kGrid1);
    CHECK(prev <= rep.modulus * 1.05 + 1e-9);
    prev = rep.modulus;
  }
}

TEST_CASE("positive definiteness of derivative samplers") {
  // mapping x -> {x}: <u, u> = 1 on the unit sphere
  const auto pd1 = check_positive_definite(
      derivative_sampler(identity_map(), {0.0}, {0.0}, HolderOrder(1), make_scale_ladder()),
      kGrid1);
  CHECK(pd1.positive);
  CHECK(pd1.modulus == doctest::Approx(1.0).epsilon(2e-2));

  // mapping x -> {x^3} at order 1: the derivative collapses to {0}
  VectorFn cube;
  cube.n = 1;
  cube.m = 1;
  cube.eval = [](const Vec& x) { return Vec{x[0] * x[0] * x[0]}; };
  const auto pd2 = check_positive_definite(
      derivative_sampler(function_as_map(cube), {0.0}, {0.0}, HolderOrder(1), make_scale_ladder()),
      kGrid1);
  CHECK_FALSE(pd2.positive);

  // x* = -u is never positively definite
  HomogeneousSampler flip;
  flip.n = 1;
  flip.m = 1;
  flip.order = 1.0;
  flip.at = [](const Vec& u) { return SetRepr::singleton(-u[0]); };
  CHECK_FALSE(check_positive_definite(flip, kGrid1).positive);
}

TEST_CASE("modulus bracket for monomial gradient pairs") {
  // f = x^2 with gradient oracle x: lower = 1/4, middle = 1, upper = 1
  const auto r1 = verify_sandwich_t112(
      gradient_oracle(power_fn(2), [](double x) { return x; }), 0.0, HolderOrder(1));
  CHECK(r1.pass);
  CHECK(r1.upper == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(r1.middle == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(r1.lower == doctest::Approx(0.25).epsilon(3e-2));

  // f = x^4 with gradient oracle x^3: lower = 27/256
  const auto r2 = verify_sandwich_t112(
      gradient_oracle(power_fn(4), [](double x) { return x * x * x; }), 0.0, HolderOrder(3));
  CHECK(r2.pass);
  CHECK(r2.upper == doctest::Approx(1.0).epsilon(2e-2));
  CHECK(r2.lower == doctest::Approx(27.0 / 256.0).epsilon(3e-2));

  // |x|: the upper norm is infinite and the bracket holds trivially
  const auto r3 = verify_sandwich_t112(abs_oracle(), 0.0, HolderOrder(1));
  CHECK(r3.pass);
  CHECK(r3.upper == kInf);

  // 0 must belong to the subdifferential at the base point
  CHECK_THROWS_AS(verify_sandwich_t112(
                      gradient_oracle(power_fn(2), [](double x) { return x; }), 1.0,
                      HolderOrder(1)),
                  PreconditionError);
}

TEST_CASE("two-route subregularity check on the epigraph catalog") {
  const SetValuedMap F = epi_square();
  for (double q : {1.0, 2.0, 3.0}) {
    const auto chk = verify_srg_equals_derivative_norm(F, {0.0}, {0.0}, HolderOrder(q));
    CHECK(chk.agree);
  }
}

TEST_CASE("calmness criteria agree across the three routes") {
  const auto good = verify_calmness_criteria(invert_map(epi_square()), {0.0}, {0.0},
                                             HolderOrder(2));
  CHECK(good.direct_holds);
  CHECK(good.outer_finite);
  CHECK(good.derivative_at_zero_trivial);
  CHECK(good.agree);
  CHECK(good.identity_ok);

  const SetValuedMap constant = make_map(1, 1, [](const Vec&) { return SetRepr::whole_line(); });
  const auto bad = verify_calmness_criteria(constant, {0.0}, {0.0}, HolderOrder(2));
  CHECK_FALSE(bad.direct_holds);
  CHECK_FALSE(bad.outer_finite);
  CHECK_FALSE(bad.derivative_at_zero_trivial);
  CHECK(bad.agree);

  const auto ident = verify_calmness_criteria(identity_map(), {0.0}, {0.0}, HolderOrder(1));
  CHECK(ident.direct_holds);
  CHECK(ident.clm_modulus == doctest::Approx(1.0).epsilon(2e-2));
}

TEST_CASE("subregularity is stable under small smooth perturbations") {
  const SetValuedMap F = epi_square();

  VectorFn zero;
  zero.n = 1;
  zero.m = 1;
  zero.eval = [](const Vec&) { return Vec{0.0}; };
  CHECK(perturbation_bound_check(F, zero, {0.0}, {0.0}, HolderOrder(2)).pass);

  VectorFn half_square;
  half_square.n = 1;
  half_square.m = 1;
  half_square.eval = [](const Vec& x) { return Vec{0.5 * x[0] * x[0]}; };
  const auto chk = perturbation_bound_check(F, half_square, {0.0}, {0.0}, HolderOrder(2));
  CHECK(chk.pass);
  CHECK(chk.lhs == doctest::Approx(1.5).epsilon(3e-2));
  CHECK(chk.outer_dg == doctest::Approx(0.5).epsilon(3e-2));

  VectorFn minus_half;
  minus_half.n = 1;
  minus_half.m = 1;
  minus_half.eval = [](const Vec& x) { return Vec{-0.5 * x[0]}; };
  const auto chk2 = perturbation_bound_check(identity_map(), minus_half, {0.0}, {0.0},
                                             HolderOrder(1));
  CHECK(chk2.pass);
  CHECK(chk2.lhs == doctest::Approx(0.5).epsilon(3e-2));
}

TEST_CASE("subdifferential subregularity versus sharp minimum") {
  // f = x^2, df = {2x}: srg_1 = 2 and shrp_2 = 1 >= (1/4) * 2
  const auto r1 = subdiff_subregularity_vs_sharp(
      gradient_oracle(power_fn(2), [](double x) { return 2.0 * x; }), 0.0, HolderOrder(1));
  CHECK(r1.pass);
  CHECK(r1.srg == doctest::Approx(2.0).epsilon(2e-2));
  CHECK(r1.shrp == doctest::Approx(1.0).epsilon(2e-2));

  // |x|: d(0, d|x|(x)) = 1 for x != 0, both moduli are infinite
  const auto r2 = subdiff_subregularity_vs_sharp(abs_oracle(), 0.0, HolderOrder(1));
  CHECK(r2.pass);
  CHECK(r2.srg == kInf);
  CHECK(r2.shrp == kInf);

  // f = x^4, df = {4x^3}: srg_3 = 4 and shrp_4 = 1 >= (27/256) * 4
  const auto r3 = subdiff_subregularity_vs_sharp(
      gradient_oracle(power_fn(4), [](double x) { return 4.0 * x * x * x; }), 0.0,
      HolderOrder(3));
  CHECK(r3.pass);
  CHECK(r3.srg == doctest::Approx(4.0).epsilon(2e-2));
  CHECK(r3.shrp == doctest::Approx(1.0).epsilon(2e-2));
}
