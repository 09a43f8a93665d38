#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "holderreg/sampling.hpp"
#include "holderreg/set_repr.hpp"
#include "holderreg/setmap.hpp"

using namespace holderreg;

TEST_CASE("set_distance on intervals, clouds and the empty set") {
  const SetRepr ray = SetRepr::intervals({{1.0, kInf}});
  CHECK(ray.distance(0.0) == doctest::Approx(1.0));
  CHECK(ray.distance(5.0) == 0.0);

  CHECK(SetRepr::empty(1).distance(0.0) == kInf);

  const SetRepr pts = SetRepr::cloud(2, {{3.0, 4.0}, {1.0, 1.0}});
  CHECK(pts.distance({0.0, 0.0}) == doctest::Approx(std::sqrt(2.0)));

  CHECK_THROWS_AS(ray.distance({0.0, 0.0}), UsageError);
}

TEST_CASE("interval normalization merges and sorts") {
  const SetRepr s = SetRepr::intervals({{3.0, 4.0}, {-1.0, 1.0}, {0.5, 3.5}});
  REQUIRE(s.parts().size() == 1);
  CHECK(s.parts()[0].lo == -1.0);
  CHECK(s.parts()[0].hi == 4.0);
}

TEST_CASE("distance is zero exactly on membership") {
  const SetRepr s = SetRepr::intervals({{-2.0, -1.0}, {1.0, 3.0}});
  for (double y : {-2.0, -1.5, -1.0, 1.0, 2.0, 3.0}) CHECK(s.distance(y) == 0.0);
  for (double y : {-3.0, -0.5, 0.0, 3.5}) CHECK(s.distance(y) > 0.0);
}

TEST_CASE("sup_norm conventions") {
  CHECK(SetRepr::empty(1).sup_norm() == 0.0);
  CHECK(SetRepr::intervals({{0.0, kInf}}).sup_norm() == kInf);
  CHECK(SetRepr::intervals({{-2.0, 1.0}}).sup_norm() == 2.0);
  CHECK(SetRepr::cloud(2, {{3.0, 4.0}}).sup_norm() == doctest::Approx(5.0));
}

TEST_CASE("min_inner_positive over interval bodies") {
  const SetRepr s = SetRepr::intervals({{2.0, 5.0}});
  CHECK(s.min_inner_positive({1.0}) == doctest::Approx(2.0));
  CHECK(s.min_inner_positive({-1.0}) == 0.0);  // range [-5,-2], positive part 0
  CHECK(SetRepr::empty(1).min_inner_positive({1.0}) == kInf);
}

TEST_CASE("scale ladder values and validation") {
  const ScaleLadder lad = make_scale_ladder(1e-1, 0.5, 3);
  const auto v = lad.values();
  REQUIRE(v.size() == 3);
  CHECK(v[0] == doctest::Approx(0.1));
  CHECK(v[1] == doctest::Approx(0.05));
  CHECK(v[2] == doctest::Approx(0.025));

  CHECK_NOTHROW(make_scale_ladder(1.0, 0.9, 2));
  CHECK_THROWS_AS(make_scale_ladder(1.0, 1.0, 5), UsageError);
  CHECK_THROWS_AS(make_scale_ladder(0.0, 0.5, 5), UsageError);
  CHECK_THROWS_AS(make_scale_ladder(1.0, 0.5, 1), UsageError);
}

TEST_CASE("direction grids per dimension") {
  const DirectionGrid g1 = make_direction_grid(1, 10);
  REQUIRE(g1.size() == 2);
  CHECK(g1.points[0][0] == -1.0);
  CHECK(g1.points[1][0] == 1.0);

  const DirectionGrid g2 = make_direction_grid(2, 4);
  REQUIRE(g2.size() == 4);
  CHECK(g2.points[0][0] == doctest::Approx(1.0));
  CHECK(g2.points[1][1] == doctest::Approx(1.0));
  CHECK(g2.points[2][0] == doctest::Approx(-1.0));
  CHECK(g2.points[3][1] == doctest::Approx(-1.0));

  // 2000-point sphere lattice: unit norms, distinct directions
  const DirectionGrid g3 = make_direction_grid(3, 2000);
  REQUIRE(g3.size() == 2000);
  double min_angle = kInf;
  for (std::size_t i = 0; i < g3.size(); ++i) {
    CHECK(std::abs(norm2(g3.points[i]) - 1.0) <= 1e-12);
    if (i > 0) {
      const double c = std::clamp(dot(g3.points[i], g3.points[i - 1]), -1.0, 1.0);
      min_angle = std::min(min_angle, std::acos(c));
    }
  }
  CHECK(min_angle > 0.0);

  CHECK_THROWS_AS(make_direction_grid(4, 16), UsageError);
  const DirectionGrid g4 = make_direction_grid(4, 16, true, 7);
  REQUIRE(g4.size() == 16);
  for (const Vec& p : g4.points) CHECK(std::abs(norm2(p) - 1.0) <= 1e-12);
}

namespace {

ScalarFn square_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return x[0] * x[0]; };
  return f;
}

ScalarFn abs_fn() {
  ScalarFn f;
  f.n = 1;
  f.eval = [](const Vec& x) { return std::abs(x[0]); };
  return f;
}

}  // namespace

TEST_CASE("epigraph map images") {
  const SetValuedMap F = make_epigraph_map(square_fn());
  const SetRepr at2 = F.image({2.0});
  REQUIRE(at2.kind() == SetRepr::Kind::Intervals);
  CHECK(at2.parts()[0].lo == doctest::Approx(4.0));
  CHECK(at2.parts()[0].hi == kInf);

  ScalarFn partial;
  partial.n = 1;
  partial.eval = [](const Vec& x) { return x[0] < 0.0 ? kInf : x[0]; };
  const SetValuedMap G = make_epigraph_map(partial);
  CHECK(G.image({-1.0}).is_empty());

  const SetValuedMap A = make_epigraph_map(abs_fn());
  CHECK(A.image({-1.0}).parts()[0].lo == doctest::Approx(1.0));
}

TEST_CASE("graph samples satisfy membership") {
  const SetValuedMap F = make_epigraph_map(square_fn());
  const auto pts = F.graph_sample({0.0, 0.0}, 0.5, 41);
  REQUIRE(!pts.empty());
  for (const Vec& p : pts) {
    const Vec x{p[0]}, y{p[1]};
    CHECK(F.image(x).distance(y) <= kMembershipTol);
  }
}

TEST_CASE("inverse map swaps graph samples and is an involution") {
  const SetValuedMap F = make_epigraph_map(square_fn());
  const SetValuedMap Finv = invert_map(F);
  const SetValuedMap Finvinv = invert_map(Finv);

  const Vec center{0.3, 0.3};
  const auto fwd = F.graph_sample(center, 0.4, 21);
  const auto inv = Finv.graph_sample({center[1], center[0]}, 0.4, 21);
  REQUIRE(fwd.size() == inv.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    CHECK(fwd[i][0] == inv[i][1]);
    CHECK(fwd[i][1] == inv[i][0]);
  }

  const auto again = Finvinv.graph_sample(center, 0.4, 21);
  REQUIRE(fwd.size() == again.size());
  for (std::size_t i = 0; i < fwd.size(); ++i) {
    CHECK(fwd[i][0] == again[i][0]);
    CHECK(fwd[i][1] == again[i][1]);
  }
}

TEST_CASE("inverse image oracle of a linear map") {
  VectorFn twice;
  twice.n = 1;
  twice.m = 1;
  twice.eval = [](const Vec& x) { return Vec{2.0 * x[0]}; };
  const SetValuedMap F = function_as_map(twice);
  const SetValuedMap Finv = invert_map(F);
  const SetRepr pre = Finv.image({1.0});
  REQUIRE(!pre.is_empty());
  // F^{-1}(1) = {1/2}
  CHECK(pre.distance({0.5}) <= 2e-2);
}

TEST_CASE("annulus points stay inside the annulus") {
  const Vec c{0.0, 0.0};
  for (const Vec& p : annulus_points(c, 0.1, 0.2, 128)) {
    const double r = norm2(p);
    CHECK(r > 0.1 - 1e-12);
    CHECK(r <= 0.2 + 1e-12);
  }
}

TEST_CASE("box_min finds interior minima") {
  auto quad = [](const Vec& u) { return (u[0] - 0.23) * (u[0] - 0.23); };
  CHECK(box_min(quad, {0.0}, 1.0) <= 1e-4);

  auto vee = [](const Vec& u) { return std::max(u[0], -u[0] + 0.5); };
  CHECK(box_min(vee, {0.0}, 1.0) == doctest::Approx(0.25).epsilon(0.02));
}
