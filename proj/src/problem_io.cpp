#include "holderreg/problem_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace holderreg::io {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& text, const nlohmann::json::parse_error& e) {
  // recover line/column from the byte offset for the diagnostic
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  throw UsageError("malformed JSON at line " + std::to_string(line) + ", column " +
                   std::to_string(col) + ": " + e.what());
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    parse_fail(text, e);
  }
}

double get_num(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j.at(key).is_number()) throw UsageError("field '" + key + "' must be a number");
  return j.at(key).get<double>();
}

Vec get_vec(const json& j, const std::string& key) {
  Vec v;
  for (const auto& x : j.at(key)) v.push_back(x.get<double>());
  return v;
}

ScalarFn build_function(const std::string& family, const json& params) {
  ScalarFn f;
  f.n = 1;
  const double scale = get_num(params, "scale", 1.0);
  if (family == "power") {
    const int k = static_cast<int>(get_num(params, "exponent", 1.0));
    if (k < 1) throw UsageError("power: exponent must be a positive integer");
    f.eval = [k, scale](const Vec& x) { return scale * std::pow(x[0], k); };
  } else if (family == "abs") {
    f.eval = [scale](const Vec& x) { return scale * std::abs(x[0]); };
  } else if (family == "abs_power") {
    const double alpha = get_num(params, "alpha", 1.0);
    if (!(alpha > 0.0)) throw UsageError("abs_power: alpha must be positive");
    f.eval = [alpha, scale](const Vec& x) { return scale * std::pow(std::abs(x[0]), alpha); };
  } else if (family == "domain_power") {
    const double alpha = get_num(params, "alpha", 1.0);
    if (!(alpha > 0.0)) throw UsageError("domain_power: alpha must be positive");
    f.eval = [alpha, scale](const Vec& x) {
      return x[0] < 0.0 ? kInf : scale * std::pow(x[0], alpha);
    };
  } else if (family == "norm") {
    const int n = static_cast<int>(get_num(params, "n", 2.0));
    if (n < 1) throw UsageError("norm: dimension must be >= 1");
    f.n = n;
    f.eval = [scale](const Vec& x) { return scale * norm2(x); };
  } else if (family == "max_affine") {
    if (!params.contains("rows")) throw UsageError("max_affine: missing 'rows'");
    std::vector<std::pair<Vec, double>> rows;
    int n = 1;
    for (const auto& row : params.at("rows")) {
      Vec a;
      for (const auto& x : row.at(0)) a.push_back(x.get<double>());
      n = static_cast<int>(a.size());
      rows.emplace_back(std::move(a), row.at(1).get<double>());
    }
    if (rows.empty()) throw UsageError("max_affine: needs at least one row");
    f.n = n;
    f.eval = [rows](const Vec& x) {
      double v = -kInf;
      for (const auto& [a, b] : rows) v = std::max(v, dot(a, x) + b);
      return v;
    };
  } else {
    throw UsageError("unknown function family '" + family + "'");
  }
  return f;
}

// true subdifferential for the supported convex 1-d families
std::function<Interval(double)> build_subdiff(const std::string& family, const json& params) {
  const double scale = get_num(params, "scale", 1.0);
  if (family == "abs") {
    return [scale](double x) {
      if (x > 0.0) return Interval{scale, scale};
      if (x < 0.0) return Interval{-scale, -scale};
      return Interval{-scale, scale};
    };
  }
  if (family == "power") {
    const int k = static_cast<int>(get_num(params, "exponent", 2.0));
    if (k < 2 || k % 2 != 0)
      throw UsageError("subdiff of power: exponent must be even and >= 2 for convexity");
    return [k, scale](double x) {
      const double d = scale * k * std::pow(x, k - 1);
      return Interval{d, d};
    };
  }
  if (family == "abs_power") {
    const double alpha = get_num(params, "alpha", 2.0);
    if (!(alpha >= 1.0)) throw UsageError("subdiff of abs_power: alpha must be >= 1");
    return [alpha, scale](double x) {
      if (x == 0.0) {
        if (alpha > 1.0) return Interval{0.0, 0.0};
        return Interval{-scale, scale};
      }
      const double d = scale * alpha * std::pow(std::abs(x), alpha - 1.0) * (x > 0 ? 1.0 : -1.0);
      return Interval{d, d};
    };
  }
  throw UsageError("subdiff: unsupported inner family '" + family + "'");
}

}  // namespace

ScalarFn make_function(const std::string& family, const std::string& params_json) {
  return build_function(family, parse_json(params_json));
}

ParsedProblem parse_problem(const std::string& text) {
  const json j = parse_json(text);
  if (!j.contains("kind")) throw UsageError("problem: missing 'kind'");
  if (!j.contains("family")) throw UsageError("problem: missing 'family'");
  ParsedProblem out;
  out.kind = j.at("kind").get<std::string>();
  out.family = j.at("family").get<std::string>();
  const json params = j.value("params", json::object());

  if (out.kind == "function") {
    out.function = build_function(out.family, params);
    out.xbar = j.contains("xbar") ? get_vec(j, "xbar") : Vec(out.function->n, 0.0);
    return out;
  }
  if (out.kind != "map") throw UsageError("problem: kind must be 'function' or 'map'");

  if (out.family == "epigraph") {
    if (!params.contains("of")) throw UsageError("epigraph: missing 'of'");
    const json& inner = params.at("of");
    const ScalarFn f = build_function(inner.at("family").get<std::string>(),
                                      inner.value("params", json::object()));
    out.map = make_epigraph_map(f);
    out.xbar = j.contains("xbar") ? get_vec(j, "xbar") : Vec(f.n, 0.0);
    out.ybar = j.contains("ybar") ? get_vec(j, "ybar") : Vec{f.eval(out.xbar)};
  } else if (out.family == "subdiff") {
    SubdiffOracle oracle;
    if (params.contains("gradient")) {
      const json& gspec = params.at("gradient");
      const ScalarFn grad = build_function(gspec.at("family").get<std::string>(),
                                           gspec.value("params", json::object()));
      oracle.subdiff = [grad](double x) {
        const double d = grad.eval({x});
        return Interval{d, d};
      };
      if (!params.contains("f")) throw UsageError("subdiff: gradient form needs 'f'");
      const json& fspec = params.at("f");
      oracle.f = build_function(fspec.at("family").get<std::string>(),
                                fspec.value("params", json::object()));
    } else {
      if (!params.contains("of")) throw UsageError("subdiff: missing 'of'");
      const json& inner = params.at("of");
      const std::string inner_family = inner.at("family").get<std::string>();
      const json inner_params = inner.value("params", json::object());
      oracle.f = build_function(inner_family, inner_params);
      oracle.subdiff = build_subdiff(inner_family, inner_params);
    }
    out.subdiff = oracle;
    out.map = oracle.as_map();
    out.xbar = j.contains("xbar") ? get_vec(j, "xbar") : Vec{0.0};
    out.ybar = j.contains("ybar") ? get_vec(j, "ybar") : Vec{0.0};
  } else if (out.family == "explicit_graph") {
    if (!params.contains("points")) throw UsageError("explicit_graph: missing 'points'");
    auto pts = std::make_shared<std::vector<std::pair<double, double>>>();
    for (const auto& p : params.at("points"))
      pts->emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (pts->empty()) throw UsageError("explicit_graph: needs at least one point");
    const double tol = get_num(params, "tol", 1e-6);
    SetValuedMap F = make_map(1, 1, [pts, tol](const Vec& x) -> SetRepr {
      std::vector<Vec> ys;
      for (const auto& [px, py] : *pts)
        if (std::abs(px - x[0]) <= tol) ys.push_back({py});
      return SetRepr::cloud(1, std::move(ys));
    });
    out.map = F;
    out.xbar = j.contains("xbar") ? get_vec(j, "xbar") : Vec{0.0};
    out.ybar = j.contains("ybar") ? get_vec(j, "ybar") : Vec{0.0};
  } else {
    throw UsageError("unknown map family '" + out.family + "'");
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ParsedProblem load_problem(const std::string& path) { return parse_problem(read_file(path)); }

lsip::LsipProblem parse_lsip(const std::string& text) {
  const json j = parse_json(text);
  lsip::LsipProblem p;
  p.n = static_cast<int>(get_num(j, "n", 2.0));
  if (j.contains("c")) p.c = get_vec(j, "c");
  if (static_cast<int>(p.c.size()) != p.n) throw UsageError("lsip: |c| must equal n");
  if (!j.contains("family")) throw UsageError("lsip: missing 'family'");
  const json& fam = j.at("family");
  const std::string kind = fam.at("kind").get<std::string>();
  if (kind == "finite") {
    for (const auto& row : fam.at("rows")) {
      Vec a;
      for (const auto& x : row.at(0)) a.push_back(x.get<double>());
      if (static_cast<int>(a.size()) != p.n) throw UsageError("lsip: row dimension mismatch");
      p.finite_rows.push_back({std::move(a), row.at(1).get<double>()});
    }
    if (p.finite_rows.empty()) throw UsageError("lsip: finite family needs rows");
    return p;
  }
  if (kind != "parametric") throw UsageError("lsip: family kind must be finite or parametric");
  p.parametric = true;
  const Vec range = get_vec(fam, "range");
  if (range.size() != 2 || !(range[0] < range[1]))
    throw UsageError("lsip: range must be [lo, hi] with lo < hi");
  p.t_lo = range[0];
  p.t_hi = range[1];
  p.default_N = static_cast<int>(get_num(j, "N", 721.0));

  const std::string curve = fam.at("curve").get<std::string>();
  const std::string bspec = fam.at("b").get<std::string>();
  double bconst = 1.0;
  if (bspec.rfind("const:", 0) == 0)
    bconst = std::stod(bspec.substr(6));
  else
    throw UsageError("lsip: unsupported b spec '" + bspec + "' (use const:<value>)");

  if (curve == "circle") {
    if (p.n != 2) throw UsageError("lsip: circle curve needs n = 2");
    p.family = [bconst](double t) {
      return std::make_pair(Vec{std::cos(t), std::sin(t)}, bconst);
    };
  } else {
    throw UsageError("lsip: unknown curve '" + curve + "'");
  }
  return p;
}

lsip::LsipProblem load_lsip(const std::string& path) { return parse_lsip(read_file(path)); }

namespace {

penalty::PenaltyProblem penalty_from_json(const json& j) {
  penalty::PenaltyProblem prob;
  if (!j.contains("f") || !j.contains("g")) throw UsageError("penalty: needs 'f' and 'g'");
  const json& fspec = j.at("f");
  prob.f = build_function(fspec.at("family").get<std::string>(),
                          fspec.value("params", json::object()));
  for (const auto& gspec : j.at("g"))
    prob.g.push_back(build_function(gspec.at("family").get<std::string>(),
                                    gspec.value("params", json::object())));
  if (prob.g.empty()) throw UsageError("penalty: needs at least one constraint");
  prob.p = get_num(j, "p", 1.0);
  prob.r = get_num(j, "r", 1.0);
  if (!(prob.p > 0.0) || !(prob.r > 0.0)) throw UsageError("penalty: p and r must be positive");
  prob.xbar = j.contains("xbar") ? get_vec(j, "xbar") : Vec(prob.f.n, 0.0);
  return prob;
}

}  // namespace

penalty::PenaltyProblem parse_penalty(const std::string& text) {
  return penalty_from_json(parse_json(text));
}

penalty::PenaltyProblem load_penalty(const std::string& path) {
  return parse_penalty(read_file(path));
}

std::optional<penalty::PenaltyProblem> penalty_convention_twin(const std::string& text) {
  json j = parse_json(text);
  if (!j.contains("g") || !j.contains("f")) return std::nullopt;
  auto swap_family = [](json& spec, bool is_objective) -> bool {
    std::string fam = spec.at("family").get<std::string>();
    if (fam == "abs_power") {
      spec["family"] = "domain_power";
      return true;
    }
    if (fam == "domain_power") {
      spec["family"] = is_objective ? "power" : "abs_power";
      if (is_objective) {
        const double alpha = spec.value("params", json::object()).value("alpha", 1.0);
        if (alpha != std::floor(alpha)) return false;
        spec["params"]["exponent"] = static_cast<int>(alpha);
        spec["params"].erase("alpha");
      }
      return true;
    }
    if (is_objective && fam == "power") {
      const double k = spec.value("params", json::object()).value("exponent", 1.0);
      spec["family"] = "domain_power";
      spec["params"]["alpha"] = k;
      if (spec["params"].contains("exponent")) spec["params"].erase("exponent");
      return true;
    }
    return false;
  };
  for (auto& gspec : j.at("g"))
    if (!swap_family(gspec, false)) return std::nullopt;
  if (!swap_family(j.at("f"), true)) return std::nullopt;
  return penalty_from_json(j);
}

}  // namespace holderreg::io
