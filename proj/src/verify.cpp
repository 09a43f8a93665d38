#include "holderreg/verify.hpp"

#include <cmath>
#include <random>

#include <json.hpp>

#include "holderreg/lsip.hpp"
#include "holderreg/penalty.hpp"

namespace holderreg::verify {

namespace {

ScalarFn fn_1d(std::function<double(double)> h) {
  ScalarFn f;
  f.n = 1;
  f.eval = [h = std::move(h)](const Vec& x) { return h(x[0]); };
  return f;
}

VectorFn vfn_1d(std::function<double(double)> h) {
  VectorFn g;
  g.n = 1;
  g.m = 1;
  g.eval = [h = std::move(h)](const Vec& x) { return Vec{h(x[0])}; };
  return g;
}

lsip::LsipProblem disk_problem() {
  lsip::LsipProblem p;
  p.n = 2;
  p.c = {1.0, 0.0};
  p.parametric = true;
  p.t_lo = 0.0;
  p.t_hi = 2.0 * M_PI;
  p.family = [](double t) { return std::make_pair(Vec{std::cos(t), std::sin(t)}, 1.0); };
  return p;
}

lsip::LsipProblem corner_problem() {
  lsip::LsipProblem p;
  p.n = 2;
  p.c = {1.0, 1.0};
  p.finite_rows = {{{-1.0, 0.0}, 0.0}, {{0.0, -1.0}, 0.0}};
  return p;
}

PropertyResult make_result(std::string id, std::string law, double lhs, double rhs, bool pass,
                           double slack) {
  PropertyResult r;
  r.property_id = std::move(id);
  r.law = std::move(law);
  r.lhs = lhs;
  r.rhs = rhs;
  r.pass = pass;
  r.slack = slack;
  return r;
}

bool le_with_slack(double a, double b, double rel) {
  if (a == kInf) return b == kInf;
  if (b == kInf) return true;
  return a <= b + rel * std::max({std::abs(a), std::abs(b), 1e-3});
}

}  // namespace

bool estimates_agree(double a, double b, double rel_slack, double zero_tol) {
  if (a == kInf || b == kInf) return a == b;
  if (std::abs(a) <= zero_tol || std::abs(b) <= zero_tol)
    return std::abs(a) <= zero_tol && std::abs(b) <= zero_tol;
  return std::abs(a - b) <= rel_slack * std::max(std::abs(a), std::abs(b));
}

std::vector<CatalogMap> mapping_catalog() {
  std::vector<CatalogMap> maps;
  maps.push_back({"epi_square", make_epigraph_map(fn_1d([](double x) { return x * x; })),
                  {0.0}, {0.0}, {1.0, 2.0, 3.0}});
  maps.push_back({"epi_abs", make_epigraph_map(fn_1d([](double x) { return std::abs(x); })),
                  {0.0}, {0.0}, {0.5, 1.0, 2.0}});
  maps.push_back({"epi_quartic",
                  make_epigraph_map(fn_1d([](double x) { return std::pow(x, 4); })),
                  {0.0}, {0.0}, {3.0, 4.0, 5.0}});
  maps.push_back({"identity", function_as_map(vfn_1d([](double x) { return x; })),
                  {0.0}, {0.0}, {0.5, 1.0, 2.0}});
  maps.push_back({"double", function_as_map(vfn_1d([](double x) { return 2.0 * x; })),
                  {0.0}, {0.0}, {0.5, 1.0, 2.0}});
  maps.push_back({"cube", function_as_map(vfn_1d([](double x) { return x * x * x; })),
                  {0.0}, {0.0}, {2.0, 3.0, 4.0}});
  maps.push_back({"signed_sqrt",
                  function_as_map(vfn_1d([](double x) {
                    return (x >= 0 ? 1.0 : -1.0) * std::sqrt(std::abs(x));
                  })),
                  {0.0}, {0.0}, {0.25, 0.5, 1.0}});
  return maps;
}

std::vector<CatalogFn> function_catalog() {
  std::vector<CatalogFn> fns;
  fns.push_back({"square", fn_1d([](double x) { return x * x; }), {0.0}, 2.0});
  fns.push_back({"absval", fn_1d([](double x) { return std::abs(x); }), {0.0}, 1.0});
  fns.push_back({"quartic", fn_1d([](double x) { return std::pow(x, 4); }), {0.0}, 4.0});
  CatalogFn nrm;
  nrm.name = "norm2d";
  nrm.f.n = 2;
  nrm.f.eval = [](const Vec& x) { return norm2(x); };
  nrm.xbar = {0.0, 0.0};
  nrm.critical_q = 1.0;
  fns.push_back(nrm);
  return fns;
}

std::vector<PropertyResult> suite_calculus(const RunConfig& cfg) {
  std::vector<PropertyResult> out;
  const double slack = cfg.slack_pct / 100.0;
  const ScaleLadder lad = cfg.ladder();

  // q-order homogeneity of derivative samplers
  for (const CatalogMap& cm : mapping_catalog()) {
    const double q = cm.orders[1];
    const HomogeneousSampler H = derivative_sampler(cm.map, cm.xbar, cm.ybar, HolderOrder(q), lad);
    const double at1 = H.at({1.0}).distance(Vec{0.0});
    bool ok = true;
    double lhs = at1, rhs = at1;
    for (double lam : {0.5, 2.0}) {
      const double atl = H.at({lam}).distance(Vec{0.0});
      const double expect = std::pow(lam, q) * at1;
      lhs = atl;
      rhs = expect;
      if (!estimates_agree(atl, expect, 0.01, 1e-4)) ok = false;
    }
    out.push_back(make_result("homogeneity_" + cm.name,
                              "derivative images scale with lambda^q", lhs, rhs, ok, 0.01));
  }

  // inverse-norm duality: ||D_q F||^- = (||D_{1/q} F^{-1}||^+)^{-q}
  for (const CatalogMap& cm : mapping_catalog()) {
    const DirectionGrid grid = cfg.grid(1);
    const SetValuedMap inv = invert_map(cm.map);
    for (double q : cm.orders) {
      const double lower =
          norm_lower(derivative_sampler(cm.map, cm.xbar, cm.ybar, HolderOrder(q), lad), grid)
              .value;
      const double outer = norm_outer(
          derivative_sampler(inv, cm.ybar, cm.xbar, HolderOrder(1.0 / q), lad), grid).value;
      double rhs;
      if (outer == kInf)
        rhs = 0.0;
      else if (outer <= 1e-2)
        rhs = kInf;
      else
        rhs = std::pow(outer, -q);
      out.push_back(make_result(
          "duality_" + cm.name + "_q" + std::to_string(q),
          "lower norm of the derivative equals the inverse outer norm to power -q", lower, rhs,
          estimates_agree(lower, rhs, slack), slack));
    }
  }

  // inversion identity: v in D_q F(u) iff u in D_{1/q} F^{-1}(v)
  for (const CatalogMap& cm : mapping_catalog()) {
    const SetValuedMap inv = invert_map(cm.map);
    const double q = cm.orders[1];
    const double ctol = default_cluster_tol(HolderOrder(q), lad);
    const double tolm = std::max(0.05, 5.0 * ctol);
    bool ok = true;
    int checked = 0, mismatches = 0;
    for (double u : {-1.0, 1.0}) {
      const SetRepr fwd = graphical_derivative_image(cm.map, cm.xbar, cm.ybar, {u}, HolderOrder(q), lad);
      for (double v : {-1.0, 1.0}) {
        const bool in_fwd = !fwd.is_empty() && fwd.distance(Vec{v}) <= tolm;
        const SetRepr bwd =
            graphical_derivative_image(inv, cm.ybar, cm.xbar, {v}, HolderOrder(1.0 / q), lad);
        const bool in_bwd = !bwd.is_empty() && bwd.distance(Vec{u}) <= tolm;
        ++checked;
        if (in_fwd != in_bwd) ++mismatches;
      }
    }
    ok = mismatches == 0;
    out.push_back(make_result("inversion_" + cm.name,
                              "derivative of the inverse is the inverse of the derivative",
                              static_cast<double>(mismatches), 0.0, ok, 0.0));
  }

  // ordering: lower norm <= outer norm when the graph has a nonzero point
  for (const CatalogMap& cm : mapping_catalog()) {
    const DirectionGrid grid = cfg.grid(1);
    const double q = cm.orders[1];
    const HomogeneousSampler H = derivative_sampler(cm.map, cm.xbar, cm.ybar, HolderOrder(q), lad);
    const double lo = norm_lower(H, grid).value;
    const double hi = norm_outer(H, grid).value;
    out.push_back(make_result("ordering_" + cm.name, "lower norm is at most the outer norm", lo,
                              hi, le_with_slack(lo, hi, slack), slack));
  }

  // the epigraph-derivative lower norm equals the subderivative norm
  for (const CatalogFn& cf : function_catalog()) {
    if (cf.f.n != 1) continue;  // offset grids resolve the 1-d catalog exactly
    const SetValuedMap epi = make_epigraph_map(cf.f);
    const DirectionGrid grid = cfg.grid(cf.f.n);
    for (double q : {cf.critical_q, cf.critical_q + 1.0}) {
      const double lower = norm_lower(
          derivative_sampler(epi, cf.xbar, {cf.f.eval(cf.xbar)}, HolderOrder(q), lad), grid).value;
      const double sub = subderivative_norm(cf.f, cf.xbar, HolderOrder(q), grid, lad).value;
      out.push_back(make_result("epi_norm_" + cf.name + "_q" + std::to_string(q),
                                "epigraph-derivative lower norm equals the subderivative norm",
                                lower, sub, estimates_agree(lower, sub, slack), slack));
    }
  }

  // positive-definiteness bound: ||H||^* <= ||H||^-
  for (const CatalogMap& cm : mapping_catalog()) {
    if (cm.map.m != cm.map.n) continue;
    const DirectionGrid grid = cfg.grid(1);
    const double q = cm.orders[1];
    const HomogeneousSampler H = derivative_sampler(cm.map, cm.xbar, cm.ybar, HolderOrder(q), lad);
    const double star = norm_star(H, grid).value;
    const double lower = norm_lower(H, grid).value;
    out.push_back(make_result("star_bound_" + cm.name,
                              "positive-definiteness modulus is at most the lower norm", star,
                              lower, le_with_slack(star, lower, slack), slack));
  }

  // perturbed lower-norm bound: ||H+f||^- >= ||H||^- - ||f||^+
  {
    const DirectionGrid grid = cfg.grid(1);
    struct Pair {
      std::string name;
      CatalogMap cm;
      double q;
      double amp;
    };
    std::vector<Pair> pairs;
    const auto maps = mapping_catalog();
    pairs.push_back({"epi_square_a03", maps[0], 2.0, 0.3});
    pairs.push_back({"epi_square_am04", maps[0], 2.0, -0.4});
    pairs.push_back({"identity_a05", maps[3], 1.0, 0.5});
    pairs.push_back({"double_am07", maps[4], 1.0, -0.7});
    for (const Pair& pr : pairs) {
      const double q = pr.q, amp = pr.amp;
      VectorFn f;
      f.n = 1;
      f.m = 1;
      f.eval = [q, amp](const Vec& x) {
        return Vec{amp * (x[0] >= 0 ? 1.0 : -1.0) * std::pow(std::abs(x[0]), q)};
      };
      const HomogeneousSampler H =
          derivative_sampler(pr.cm.map, pr.cm.xbar, pr.cm.ybar, HolderOrder(q), lad);
      const HomogeneousSampler Hf = translate_sampler(H, f);
      const double lhs = norm_lower(Hf, grid).value;
      const double base = norm_lower(H, grid).value;
      const double rhs = base == kInf ? kInf : base - std::abs(amp);
      out.push_back(make_result("perturbed_lower_" + pr.name,
                                "lower norm of a perturbed map dominates lower minus outer",
                                lhs, rhs, le_with_slack(rhs, lhs, slack), slack));
    }
  }

  // sum rule: (f+g)'_q = f'_q + D_q g
  {
    struct SumCase {
      std::string name;
      ScalarFn f;
      ScalarFn g;
      double q;
    };
    std::vector<SumCase> cases;
    cases.push_back({"abs_plus_linear", fn_1d([](double x) { return std::abs(x); }),
                     fn_1d([](double x) { return 0.5 * x; }), 1.0});
    cases.push_back({"square_plus_square", fn_1d([](double x) { return x * x; }),
                     fn_1d([](double x) { return 0.3 * x * x; }), 2.0});
    cases.push_back({"abs_plus_square", fn_1d([](double x) { return std::abs(x); }),
                     fn_1d([](double x) { return x * x; }), 1.0});
    for (const SumCase& sc : cases) {
      bool ok = true;
      double lhs = 0, rhs = 0;
      for (double u : {-1.0, 1.0}) {
        ScalarFn sum;
        sum.n = 1;
        const ScalarFn f = sc.f, g = sc.g;
        sum.eval = [f, g](const Vec& x) { return f.eval(x) + g.eval(x); };
        lhs = hadamard_subderivative(sum, {0.0}, {u}, HolderOrder(sc.q), lad).value;
        const double fpart = hadamard_subderivative(sc.f, {0.0}, {u}, HolderOrder(sc.q), lad).value;
        const auto dg = hadamard_derivative(sc.g, {0.0}, {u}, HolderOrder(sc.q), lad);
        rhs = fpart + dg.value;
        if (std::abs(lhs - rhs) > std::max(0.02 * std::max(std::abs(lhs), std::abs(rhs)), 1e-4))
          ok = false;
      }
      out.push_back(make_result("sum_rule_" + sc.name,
                                "subderivative of a sum splits into subderivative plus derivative",
                                lhs, rhs, ok, 0.02));
    }
  }
  return out;
}

std::vector<PropertyResult> suite_moduli(const RunConfig& cfg) {
  std::vector<PropertyResult> out;
  const double slack = cfg.slack_pct / 100.0;
  const ScaleLadder radii = cfg.radii();
  const DirectionGrid grid1 = cfg.grid(1);

  // subregularity modulus equals the derivative lower norm (two routes)
  for (const CatalogMap& cm : mapping_catalog()) {
    for (double q : cm.orders) {
      const TwoRouteCheck chk =
          verify_srg_equals_derivative_norm(cm.map, cm.xbar, cm.ybar, HolderOrder(q));
      out.push_back(make_result("srg_two_route_" + cm.name + "_q" + std::to_string(q),
                                "direct subregularity modulus matches the derivative route",
                                chk.direct, chk.via_derivative, chk.agree, slack));
    }
  }

  // subregularity-calmness duality through inversion
  for (const CatalogMap& cm : mapping_catalog()) {
    const SetValuedMap inv = invert_map(cm.map);
    for (double q : {cm.orders[1], cm.orders[2]}) {
      const double srg =
          strong_subregularity_modulus(cm.map, cm.xbar, cm.ybar, HolderOrder(q), radii, grid1)
              .modulus;
      const double clm =
          isolated_calmness_modulus(inv, cm.ybar, cm.xbar, HolderOrder(q), radii, grid1).modulus;
      out.push_back(make_result("clm_duality_" + cm.name + "_q" + std::to_string(q),
                                "calmness modulus of the inverse equals the subregularity modulus",
                                clm, srg, estimates_agree(clm, srg, slack), slack));
    }
  }

  // monotonicity of the modulus in q below the critical order
  {
    const SetValuedMap epi = make_epigraph_map(fn_1d([](double x) { return x * x; }));
    double prev = -1.0;
    bool ok = true;
    double last = 0.0;
    for (double q : {1.0, 1.5, 2.0}) {
      const double m =
          strong_subregularity_modulus(epi, {0.0}, {0.0}, HolderOrder(q), radii, grid1).modulus;
      if (prev > m * (1.0 + slack) + 1e-9) ok = false;
      prev = m;
      last = m;
    }
    out.push_back(make_result("modulus_monotone_q",
                              "estimated modulus is non-decreasing in q on the epigraph catalog",
                              prev, last, ok, slack));
  }

  // sharp modulus vs subderivative norm (with equality in finite dimensions)
  for (const CatalogFn& cf : function_catalog()) {
    const DirectionGrid grid = cfg.grid(cf.f.n);
    const double q = cf.critical_q;
    const double shrp =
        sharp_minimum_modulus(cf.f, cf.xbar, HolderOrder(q), radii, grid).modulus;
    const double sub =
        subderivative_norm(cf.f, cf.xbar, HolderOrder(q), grid, cfg.ladder()).value;
    const bool le = le_with_slack(shrp, sub, slack);
    const bool eq = estimates_agree(shrp, sub, slack);
    out.push_back(make_result("sharp_vs_norm_" + cf.name,
                              "sharp modulus is bounded by (and equals) the subderivative norm",
                              shrp, sub, le && eq, slack));
  }

  // every holds-verdict is witnessed by fresh samples
  {
    const ScalarFn f = fn_1d([](double x) { return x * x; });
    const RegularityReport rep =
        sharp_minimum_modulus(f, {0.0}, HolderOrder(2), radii, grid1);
    std::mt19937_64 rng(cfg.seed + 99);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    bool ok = rep.verdict == ModVerdict::Holds;
    double worst = kInf;
    const double r_hi = rep.neighborhood_radius;
    const double r_lo = r_hi * cfg.radii_ratio;
    for (int i = 0; i < 100 && ok; ++i) {
      double x;
      do {
        x = unif(rng) * r_hi;
      } while (std::abs(x) < r_lo);
      const double quot = (f.eval({x}) - f.eval({0.0})) / std::pow(std::abs(x), 2.0);
      worst = std::min(worst, quot);
      if (quot < rep.modulus * (1.0 - slack)) ok = false;
    }
    out.push_back(make_result("witnessed_holds", "fresh samples never undercut a holds modulus",
                              worst, rep.modulus, ok, slack));
  }

  // modulus bracket via the positive-definiteness norm of the gradient map
  {
    struct SandwichCase {
      std::string name;
      SubdiffOracle oracle;
      double q;
    };
    std::vector<SandwichCase> cases;
    {
      SubdiffOracle o1;
      o1.f = fn_1d([](double x) { return x * x; });
      o1.subdiff = [](double x) { return Interval{x, x}; };
      cases.push_back({"monomial_pair_n1", o1, 1.0});
      SubdiffOracle o2;
      o2.f = fn_1d([](double x) { return std::pow(x, 4); });
      o2.subdiff = [](double x) { return Interval{x * x * x, x * x * x}; };
      cases.push_back({"monomial_pair_n2", o2, 3.0});
    }
    for (const auto& sc : cases) {
      const SandwichReport rep = verify_sandwich_t112(sc.oracle, 0.0, HolderOrder(sc.q));
      out.push_back(make_result("sandwich_" + sc.name,
                                "modulus bracket between scaled and plain definiteness norms",
                                rep.lower, rep.upper, rep.pass, 0.05));
    }
  }

  // three-route calmness criteria
  {
    const SetValuedMap epi = make_epigraph_map(fn_1d([](double x) { return x * x; }));
    const CalmnessCriteria good = verify_calmness_criteria(invert_map(epi), {0.0}, {0.0},
                                                           HolderOrder(2));
    out.push_back(make_result("calmness_routes_inverse_parabola",
                              "direct modulus, outer norm and derivative-at-zero routes agree",
                              good.clm_modulus, good.identity_rhs,
                              good.agree && good.direct_holds && good.identity_ok,
                              cfg.chain_slack_pct / 100.0));
    const SetValuedMap constant =
        make_map(1, 1, [](const Vec&) { return SetRepr::whole_line(); });
    const CalmnessCriteria bad = verify_calmness_criteria(constant, {0.0}, {0.0}, HolderOrder(2));
    out.push_back(make_result("calmness_routes_constant",
                              "all three routes reject the constant map", bad.clm_modulus, 0.0,
                              bad.agree && !bad.direct_holds, 0.0));
  }

  // perturbation stability of subregularity
  {
    const SetValuedMap epi = make_epigraph_map(fn_1d([](double x) { return x * x; }));
    const SetValuedMap ident = function_as_map(vfn_1d([](double x) { return x; }));
    struct PertCase {
      std::string name;
      const SetValuedMap* F;
      VectorFn g;
      Vec base_y;
      double q;
    };
    std::vector<PertCase> cases;
    cases.push_back({"epi_zero", &epi, vfn_1d([](double) { return 0.0; }), {0.0}, 2.0});
    cases.push_back(
        {"epi_half_square", &epi, vfn_1d([](double x) { return 0.5 * x * x; }), {0.0}, 2.0});
    cases.push_back(
        {"identity_minus_half", &ident, vfn_1d([](double x) { return -0.5 * x; }), {0.0}, 1.0});
    for (const auto& pc : cases) {
      const PerturbationCheck chk =
          perturbation_bound_check(*pc.F, pc.g, {0.0}, pc.base_y, HolderOrder(pc.q));
      out.push_back(make_result("perturbation_" + pc.name,
                                "perturbed subregularity dominates the base minus the outer norm",
                                chk.lhs, chk.srg_f - chk.outer_dg, chk.pass, slack));
    }
  }

  // subdifferential subregularity vs sharp minimum
  {
    struct SubCase {
      std::string name;
      SubdiffOracle oracle;
      double q;
    };
    std::vector<SubCase> cases;
    {
      SubdiffOracle o1;
      o1.f = fn_1d([](double x) { return x * x; });
      o1.subdiff = [](double x) { return Interval{2.0 * x, 2.0 * x}; };
      cases.push_back({"square", o1, 1.0});
      SubdiffOracle o2;
      o2.f = fn_1d([](double x) { return std::abs(x); });
      o2.subdiff = [](double x) {
        if (x > 0) return Interval{1.0, 1.0};
        if (x < 0) return Interval{-1.0, -1.0};
        return Interval{-1.0, 1.0};
      };
      cases.push_back({"absval", o2, 1.0});
      SubdiffOracle o3;
      o3.f = fn_1d([](double x) { return std::pow(x, 4); });
      o3.subdiff = [](double x) { return Interval{4.0 * x * x * x, 4.0 * x * x * x}; };
      cases.push_back({"quartic", o3, 3.0});
    }
    for (const auto& sc : cases) {
      const SubdiffSharpReport rep =
          subdiff_subregularity_vs_sharp(sc.oracle, 0.0, HolderOrder(sc.q));
      out.push_back(make_result("subdiff_sharp_" + sc.name,
                                "subdifferential subregularity matches sharpness with the factor",
                                rep.shrp, rep.srg, rep.pass, cfg.chain_slack_pct / 100.0));
    }
  }
  return out;
}

std::vector<PropertyResult> suite_lsip(const RunConfig& cfg) {
  std::vector<PropertyResult> out;
  const double slack = cfg.slack_pct / 100.0;

  // discretization stability of the calmness certificate
  {
    const auto d1 = lsip::discretize(disk_problem(), 720);
    const auto d2 = lsip::discretize(disk_problem(), 1440);
    const Vec x1 = lsip::solve(d1).x;
    const Vec x2 = lsip::solve(d2).x;
    const double v1 =
        lsip::calmness_certificate(d1, x1, HolderOrder(2), cfg.parallel).norm.value;
    const double v2 =
        lsip::calmness_certificate(d2, x2, HolderOrder(2), cfg.parallel).norm.value;
    out.push_back(make_result("discretization_stability",
                              "certificate values at N and 2N stay within 5 percent", v1, v2,
                              estimates_agree(v1, v2, 0.05), 0.05));
  }

  // simplex vs exhaustive vertex enumeration on random planar programs
  {
    std::mt19937_64 rng(cfg.seed + 7);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> extra(1, 16);
    int mismatches = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
      std::vector<lp::Constraint> rows = {{{1.0, 0.0}, 10.0},
                                          {{-1.0, 0.0}, 10.0},
                                          {{0.0, 1.0}, 10.0},
                                          {{0.0, -1.0}, 10.0}};
      const int k = extra(rng);
      for (int i = 0; i < k; ++i) rows.push_back({{coef(rng), coef(rng)}, coef(rng) + 0.5});
      const Vec c{coef(rng), coef(rng)};
      const lp::Solution got = lp::solve_lp(c, rows);

      lp::Solution want;
      want.status = lp::Status::Infeasible;
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
          const double det = rows[i].a[0] * rows[j].a[1] - rows[i].a[1] * rows[j].a[0];
          if (std::abs(det) < 1e-12) continue;
          const Vec x{(rows[i].b * rows[j].a[1] - rows[i].a[1] * rows[j].b) / det,
                      (rows[i].a[0] * rows[j].b - rows[i].b * rows[j].a[0]) / det};
          bool feas = true;
          for (const auto& r : rows)
            if (dot(r.a, x) - r.b > 1e-9 * (1.0 + std::abs(r.b))) {
              feas = false;
              break;
            }
          if (!feas) continue;
          const double obj = dot(c, x);
          if (want.status != lp::Status::Optimal || obj < want.objective) {
            want.status = lp::Status::Optimal;
            want.objective = obj;
            want.x = x;
          }
        }
      if (got.status != want.status ||
          (got.status == lp::Status::Optimal &&
           std::abs(got.objective - want.objective) > 1e-8 * (1.0 + std::abs(want.objective))))
        ++mismatches;
    }
    out.push_back(make_result("lp_vertex_agreement",
                              "simplex optima match exhaustive vertex enumeration",
                              static_cast<double>(mismatches), 0.0, mismatches == 0, 1e-8));
  }

  // the canonical function vanishes exactly on the solution set
  {
    const auto d = lsip::discretize(disk_problem(), 720);
    const lp::Solution sol = lsip::solve(d);
    const ScalarFn f = lsip::canonical_f(d, sol.x);
    bool ok = std::abs(f.eval(sol.x)) <= 1e-6;
    std::mt19937_64 rng(cfg.seed + 21);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    int found = 0;
    double min_val = kInf;
    while (found < 100) {
      const Vec x{unif(rng), unif(rng)};
      if (lsip::feasibility_residual(x, d) > 0.0) continue;
      if (dot(d.c, x) - sol.objective <= 1e-4) continue;  // too close to optimal
      ++found;
      const double v = f.eval(x);
      min_val = std::min(min_val, v);
      if (v <= 0.0) ok = false;
    }
    out.push_back(make_result("solution_set_zero_level",
                              "canonical function is positive off the solution set", min_val, 0.0,
                              ok, 0.0));
  }

  // sharp-minimum route and subderivative route deliver the same verdict
  {
    struct ChainCase {
      std::string name;
      lsip::LsipProblem prob;
      int N;
      double q;
    };
    std::vector<ChainCase> cases = {{"disk_q2", disk_problem(), 720, 2.0},
                                    {"disk_q1", disk_problem(), 720, 1.0},
                                    {"corner_q1", corner_problem(), 2, 1.0}};
    for (auto& cc : cases) {
      const auto d = lsip::discretize(cc.prob, cc.N);
      const lp::Solution sol = lsip::solve(d);
      const auto cert = lsip::calmness_certificate(d, sol.x, HolderOrder(cc.q), cfg.parallel);

      // radii floored above the index-grid resolution
      double r_min = std::max(1e-4, 2.0 * d.grid_step);
      int rungs = 2;
      while (rungs < cfg.radii_rungs && 0.5 * std::pow(0.5, rungs) >= r_min) ++rungs;
      const ScaleLadder radii = make_radii_ladder(0.5, 0.5, rungs);
      const ScalarFn f = lsip::canonical_f(d, sol.x);
      const RegularityReport shrp =
          sharp_minimum_modulus(f, sol.x, HolderOrder(cc.q), radii, cfg.grid(d.n), cfg.parallel);
      const bool sharp_holds = shrp.verdict == ModVerdict::Holds;
      out.push_back(make_result("chain_" + cc.name,
                                "sharp-minimum verdict agrees with the certificate verdict",
                                sharp_holds ? 1.0 : 0.0, cert.certified ? 1.0 : 0.0,
                                sharp_holds == cert.certified, 0.0));
    }
  }
  (void)slack;
  return out;
}

std::vector<PropertyResult> suite_penalty(const RunConfig& cfg) {
  std::vector<PropertyResult> out;
  const ScaleLadder lad = cfg.ladder();
  const DirectionGrid grid1 = cfg.grid(1);

  auto abs_power = [&](double alpha) {
    return fn_1d([alpha](double x) { return std::pow(std::abs(x), alpha); });
  };

  // superadditivity of the penalty subderivative
  for (double s : {0.25, 0.5, 0.75}) {
    penalty::PenaltyProblem prob;
    prob.f = fn_1d([](double x) { return x; });
    prob.g = {abs_power(2.0 * s)};
    prob.p = 1.0;
    prob.r = 3.0;
    prob.xbar = {0.0};
    const ScalarFn lp = penalty::penalty_fn(prob);
    bool ok = true;
    double lhs = 0, rhs = 0;
    for (const Vec& u : grid1.points) {
      lhs = hadamard_subderivative(lp, prob.xbar, u, HolderOrder(1), lad).value;
      const double fpart = hadamard_subderivative(prob.f, prob.xbar, u, HolderOrder(1), lad).value;
      ScalarFn gplus;
      gplus.n = 1;
      const ScalarFn g0 = prob.g[0];
      gplus.eval = [g0](const Vec& x) { return std::max(0.0, g0.eval(x)); };
      const double gpart =
          hadamard_subderivative(gplus, prob.xbar, u, HolderOrder(1), lad).value;
      rhs = fpart + prob.r * positive_part(gpart);
      if (lhs == kInf || rhs == kInf) continue;
      if (lhs < rhs - 0.02 * std::max({std::abs(lhs), std::abs(rhs), 1.0})) ok = false;
    }
    out.push_back(make_result("superadditive_s" + std::to_string(s),
                              "penalty subderivative dominates the split lower bound", lhs, rhs,
                              ok, 0.02));
  }

  // power identity
  for (double p : {1.0, 2.0}) {
    for (double s : {0.5, 0.75}) {
      const ScalarFn g = abs_power(2.0 * s);
      ScalarFn gp;
      gp.n = 1;
      gp.eval = [g, p](const Vec& x) { return std::pow(std::max(0.0, g.eval(x)), p); };
      bool ok = true;
      double lhs = 0, rhs = 0;
      for (const Vec& u : grid1.points) {
        const double base = hadamard_subderivative(g, {0.0}, u, HolderOrder(1.0 / p), lad).value;
        lhs = std::pow(positive_part(base), p);
        rhs = hadamard_subderivative(gp, {0.0}, u, HolderOrder(1.0), lad).value;
        if (lhs == kInf || rhs == kInf) {
          if (lhs != rhs) ok = false;
        } else if (std::abs(lhs - rhs) >
                   0.02 * std::max({std::abs(lhs), std::abs(rhs), 1e-4})) {
          ok = false;
        }
      }
      out.push_back(make_result(
          "power_identity_p" + std::to_string(p) + "_s" + std::to_string(s),
          "powered positive-part subderivative equals the subderivative of the power", lhs, rhs,
          ok, 0.02));
    }
  }

  // clipped-composition identity for differentiable constraints
  {
    bool ok = true;
    double lhs = 0, rhs = 0;
    for (const Vec& u : grid1.points) {
      const ScalarFn g = fn_1d([](double x) { return x; });
      ScalarFn gplus;
      gplus.n = 1;
      gplus.eval = [](const Vec& x) { return std::max(0.0, x[0]); };
      lhs = hadamard_subderivative(gplus, {0.0}, u, HolderOrder(1), lad).value;
      rhs = positive_part(hadamard_subderivative(g, {0.0}, u, HolderOrder(1), lad).value);
      if (std::abs(lhs - rhs) > 1e-6) ok = false;
    }
    out.push_back(make_result("max_composition",
                              "positive-part subderivative is the clipped subderivative", lhs,
                              rhs, ok, 1e-6));
  }

  // threshold soundness: r above rho0 certifies sharpness
  {
    penalty::PenaltyProblem prob;
    prob.f = fn_1d([](double x) { return x; });
    prob.g = {abs_power(1.0)};
    prob.p = 1.0;
    prob.r = 1.0;
    prob.xbar = {0.0};
    const auto thr = penalty::penalty_threshold(prob, HolderOrder(1));
    bool ok = thr.rho0 < kInf;
    double sharp_mod = 0.0;
    if (ok) {
      prob.r = 2.0 * thr.rho0 + 1.0;
      const auto chk = penalty::sharp_penalty_check(prob, HolderOrder(1));
      sharp_mod = chk.sharp.modulus;
      ok = (chk.sharp.value_class == Verdict::Positive ||
            chk.sharp.value_class == Verdict::Infinite) &&
           chk.consistent;
    }
    out.push_back(make_result("threshold_soundness",
                              "weights above the threshold give a sharp penalty minimum",
                              sharp_mod, thr.rho0, ok, 0.0));
  }
  return out;
}

std::vector<PropertyResult> run_suite(const std::string& name, const RunConfig& cfg) {
  if (name == "calculus") return suite_calculus(cfg);
  if (name == "moduli") return suite_moduli(cfg);
  if (name == "lsip") return suite_lsip(cfg);
  if (name == "penalty") return suite_penalty(cfg);
  if (name == "all") {
    std::vector<PropertyResult> all;
    for (const char* s : {"calculus", "moduli", "lsip", "penalty"}) {
      auto part = run_suite(s, cfg);
      all.insert(all.end(), part.begin(), part.end());
    }
    return all;
  }
  throw UsageError("unknown verify suite '" + name + "'");
}

bool all_pass(const std::vector<PropertyResult>& results) {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string results_json(const std::vector<PropertyResult>& results) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json j;
    j["property_id"] = r.property_id;
    j["law"] = r.law;
    j["pass"] = r.pass;
    j["lhs"] = std::isfinite(r.lhs) ? nlohmann::json(r.lhs)
                                    : nlohmann::json(r.lhs > 0 ? "inf" : "-inf");
    j["rhs"] = std::isfinite(r.rhs) ? nlohmann::json(r.rhs)
                                    : nlohmann::json(r.rhs > 0 ? "inf" : "-inf");
    j["slack"] = r.slack;
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

}  // namespace holderreg::verify
