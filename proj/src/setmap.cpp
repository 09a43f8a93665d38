#include "holderreg/setmap.hpp"

#include <algorithm>
#include <cmath>

namespace holderreg {

namespace {

// Uniform grid of x-points covering the max-norm ball cross-section.
std::vector<Vec> x_grid(const Vec& cx, double radius, int per_axis, int n) {
  std::vector<Vec> out;
  std::vector<int> idx(n, 0);
  Vec x(n);
  const long total = static_cast<long>(std::llround(std::pow(per_axis, n)));
  out.reserve(total);
  for (long flat = 0; flat < total; ++flat) {
    long rem = flat;
    for (int d = 0; d < n; ++d) {
      idx[d] = static_cast<int>(rem % per_axis);
      rem /= per_axis;
      x[d] = cx[d] + radius * (2.0 * idx[d] / (per_axis - 1) - 1.0);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::function<std::vector<Vec>(const Vec&, double, int)> make_image_graph_sampler(
    std::function<SetRepr(const Vec&)> image, int n, int m) {
  return [image = std::move(image), n, m](const Vec& center, double radius,
                                          int resolution) -> std::vector<Vec> {
    if (static_cast<int>(center.size()) != n + m)
      throw UsageError("graph_sample: center must live in R^(n+m)");
    const Vec cx(center.begin(), center.begin() + n);
    const Vec cy(center.begin() + n, center.end());
    const int per_axis = std::max(3, (n >= 2) ? std::min(resolution, 81) : resolution);
    std::vector<Vec> samples;
    for (const Vec& x : x_grid(cx, radius, per_axis, n)) {
      const SetRepr img = image(x);
      if (img.is_empty()) continue;
      if (img.kind() == SetRepr::Kind::Intervals) {
        const double ylo = cy[0] - radius, yhi = cy[0] + radius;
        for (const Interval& iv : img.parts()) {
          const double lo = std::max(iv.lo, ylo);
          const double hi = std::min(iv.hi, yhi);
          if (lo > hi) continue;
          // endpoints carry the geometry; a short interior grid fills in
          const int fill = 5;
          for (int j = 0; j <= fill; ++j) {
            const double y = lo + (hi - lo) * j / fill;
            samples.push_back(concat(x, Vec{y}));
          }
        }
      } else {
        for (const Vec& y : img.points()) {
          bool inside = true;
          for (int d = 0; d < m; ++d)
            if (std::abs(y[d] - cy[d]) > radius) {
              inside = false;
              break;
            }
          if (inside) samples.push_back(concat(x, y));
        }
      }
    }
    return samples;
  };
}

SetValuedMap make_map(int n, int m, std::function<SetRepr(const Vec&)> image) {
  SetValuedMap F;
  F.n = n;
  F.m = m;
  F.image = image;
  F.graph_sample = make_image_graph_sampler(std::move(image), n, m);
  return F;
}

SetValuedMap make_epigraph_map(const ScalarFn& f) {
  const int n = f.n;
  auto image = [f](const Vec& x) -> SetRepr {
    const double v = f.eval(x);
    if (v == kInf) return SetRepr::empty(1);
    return SetRepr::intervals({{v, kInf}});
  };
  return make_map(n, 1, image);
}

double graph_residual(const SetValuedMap& M, const Vec& in, const Vec& out) {
  if (M.inverse_of) return M.inverse_of->image(out).distance(in);
  return M.image(in).distance(out);
}

SetValuedMap invert_map(const SetValuedMap& F, double search_radius) {
  SetValuedMap inv;
  inv.n = F.m;
  inv.m = F.n;
  if (F.inverse_of) {
    // inverting an inverse: the original forward image oracle is exact
    inv.image = F.inverse_of->image;
  } else {
    inv.inverse_of = std::make_shared<SetValuedMap>(F);
  }
  const int fn = F.n, fm = F.m;
  auto fwd_sampler = F.graph_sample;
  inv.graph_sample = [fwd_sampler, fn, fm](const Vec& center, double radius,
                                           int resolution) -> std::vector<Vec> {
    Vec fwd_center = concat(Vec(center.begin() + fm, center.end()),
                            Vec(center.begin(), center.begin() + fm));
    std::vector<Vec> pts = fwd_sampler(fwd_center, radius, resolution);
    for (Vec& p : pts) {
      Vec swapped = concat(Vec(p.begin() + fn, p.end()), Vec(p.begin(), p.begin() + fn));
      p = std::move(swapped);
    }
    return pts;
  };
  if (!inv.image) {
    inv.image = [fwd_sampler, fn, fm, search_radius](const Vec& y) -> SetRepr {
      // approximate: scan the forward graph around (0, y) and keep x whose
      // image component matches y
      Vec center = concat(Vec(fn, 0.0), y);
      const std::vector<Vec> pts = fwd_sampler(center, search_radius, kDefaultSamplerResolution);
      const double tol = std::max(kMembershipTol, 2.0 * search_radius / kDefaultSamplerResolution);
      std::vector<Vec> xs;
      for (const Vec& p : pts) {
        const Vec py(p.begin() + fn, p.end());
        if (dist2(py, y) <= tol) xs.push_back(Vec(p.begin(), p.begin() + fn));
      }
      return SetRepr::cloud(fn, std::move(xs));
    };
  }
  return inv;
}

SetValuedMap translate_map(const SetValuedMap& F, const VectorFn& g) {
  if (g.n != F.n || g.m != F.m)
    throw UsageError("translate_map: dimension mismatch between F and g");
  auto base = F.image;
  auto image = [base, g](const Vec& x) -> SetRepr {
    const SetRepr img = base(x);
    if (img.is_empty()) return img;
    const Vec shift = g.eval(x);
    // rescaled(-shift, 1) translates by +shift
    Vec neg = shift;
    for (double& v : neg) v = -v;
    return img.rescaled(neg, 1.0);
  };
  return make_map(F.n, F.m, image);
}

SetValuedMap function_as_map(const VectorFn& g) {
  const VectorFn fn = g;
  auto image = [fn](const Vec& x) -> SetRepr {
    Vec y = fn.eval(x);
    if (fn.m == 1) {
      if (!std::isfinite(y[0])) return SetRepr::empty(1);
      return SetRepr::singleton(y[0]);
    }
    return SetRepr::point(y);
  };
  return make_map(g.n, g.m, image);
}

}  // namespace holderreg
