#include "decolab/verify.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace decolab {

namespace {

using cd = std::complex<double>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// Uniform-grid nearest neighbor over a fixed point set.
class NnGrid {
 public:
  explicit NnGrid(const std::vector<cd>& pts) : pts_(pts) {
    xlo_ = ylo_ = kInf;
    double xhi = -kInf, yhi = -kInf;
    for (const cd& p : pts) {
      xlo_ = std::min(xlo_, p.real());
      xhi = std::max(xhi, p.real());
      ylo_ = std::min(ylo_, p.imag());
      yhi = std::max(yhi, p.imag());
    }
    double span = std::max(xhi - xlo_, yhi - ylo_);
    int n = static_cast<int>(std::ceil(std::sqrt(double(pts.size()))));
    n = std::clamp(n, 1, 1024);
    cell_ = span > 0 ? span / n : 1.0;
    nx_ = span > 0 ? std::min<int>(int((xhi - xlo_) / cell_) + 1, 1025) : 1;
    ny_ = span > 0 ? std::min<int>(int((yhi - ylo_) / cell_) + 1, 1025) : 1;
    buckets_.resize(static_cast<std::size_t>(nx_) * ny_);
    for (std::size_t i = 0; i < pts.size(); ++i)
      buckets_[cell_of(pts[i])].push_back(static_cast<int>(i));
  }

  // Nearest point to q, optionally excluding one index. Returns {index, dist}.
  std::pair<int, double> query(cd q, int exclude = -1) const {
    int cx = coord(q.real() - xlo_, nx_);
    int cy = coord(q.imag() - ylo_, ny_);
    int best = -1;
    double best2 = kInf;
    int rmax = std::max(nx_, ny_);
    for (int r = 0;; ++r) {
      bool any = scan_ring(q, cx, cy, r, exclude, &best, &best2);
      (void)any;
      if (best >= 0 && std::sqrt(best2) <= double(r) * cell_) break;
      if (r > rmax) break;
    }
    return {best, best >= 0 ? std::sqrt(best2) : kInf};
  }

 private:
  int coord(double v, int n) const {
    int c = static_cast<int>(std::floor(v / cell_));
    return std::clamp(c, 0, n - 1);
  }
  std::size_t cell_of(cd p) const {
    return static_cast<std::size_t>(coord(p.imag() - ylo_, ny_)) * nx_ +
           coord(p.real() - xlo_, nx_);
  }
  bool scan_ring(cd q, int cx, int cy, int r, int exclude, int* best,
                 double* best2) const {
    bool any = false;
    for (int dy = -r; dy <= r; ++dy) {
      int y = cy + dy;
      if (y < 0 || y >= ny_) continue;
      int step = (std::abs(dy) == r) ? 1 : 2 * r;
      if (step == 0) step = 1;
      for (int dx = -r; dx <= r; dx += step) {
        int x = cx + dx;
        if (x < 0 || x >= nx_) continue;
        any = true;
        for (int i : buckets_[static_cast<std::size_t>(y) * nx_ + x]) {
          if (i == exclude) continue;
          double d2 = std::norm(pts_[i] - q);
          if (d2 < *best2) {
            *best2 = d2;
            *best = i;
          }
        }
      }
    }
    return any;
  }

  const std::vector<cd>& pts_;
  double xlo_, ylo_, cell_;
  int nx_, ny_;
  std::vector<std::vector<int>> buckets_;
};

double directed_hausdorff(const std::vector<cd>& a, const NnGrid& bgrid) {
  double worst = 0.0;
#pragma omp parallel for schedule(static) reduction(max : worst)
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, bgrid.query(a[i]).second);
  return worst;
}

cd centroid_of(const std::vector<cd>& pts) {
  cd s(0, 0);
  for (const cd& p : pts) s += p;
  return s / double(pts.size());
}

// Half-angle of the principal axis via the complex second moment.
double principal_phase(const std::vector<cd>& pts, cd mean) {
  cd m2(0, 0);
  for (const cd& p : pts) {
    cd d = p - mean;
    m2 += d * d;
  }
  return std::abs(m2) == 0 ? 0.0 : 0.5 * std::arg(m2);
}

}  // namespace

AffineMap AffineMap::inverse() const {
  if (a == cd(0, 0)) throw error("singular affine map");
  return {cd(1, 0) / a, -b / a};
}

PointCloud extract_boundary(const FrameSpec& frame, double de_threshold_px) {
  FrameSpec f = frame;
  f.coloring = Coloring::Distance;
  Image img = render(f);
  cd c0 = f.center.to_std();
  double cut = de_threshold_px * f.pitch();
  PointCloud out;
  out.label = "boundary";
  for (int y = 0; y < f.px_h; ++y)
    for (int x = 0; x < f.px_w; ++x) {
      std::size_t k = img.idx(x, y);
      if (img.iters[k] == kInterior) continue;
      float d = img.dist[k];
      if (d >= 0 && d < cut) out.append(c0 + pixel_offset(f, x, y));
    }
  if (out.empty()) throw error("no boundary in frame");
  return out;
}

double hausdorff_directed(const PointCloud& from, const PointCloud& to) {
  if (from.empty() || to.empty()) throw error("hausdorff of empty cloud");
  NnGrid g(to.points);
  return directed_hausdorff(from.points, g);
}

double hausdorff(const PointCloud& a, const PointCloud& b) {
  if (a.empty() || b.empty()) throw error("hausdorff of empty cloud");
  NnGrid ga(a.points), gb(b.points);
  return std::max(directed_hausdorff(a.points, gb),
                  directed_hausdorff(b.points, ga));
}

AlignResult align_similarity(const PointCloud& model, const PointCloud& target,
                             int iterations) {
  double dm = model.diameter(), dt = target.diameter();
  if (dm == 0 || dt == 0) throw error("degenerate cloud");
  const auto& mp = model.points;
  const auto& tp = target.points;
  cd mbar = centroid_of(mp), tbar = centroid_of(tp);
  double dphi = principal_phase(tp, tbar) - principal_phase(mp, mbar);
  cd a0 = std::polar(dt / dm, dphi);
  NnGrid tgrid(tp);

  AlignResult best;
  best.residual = kInf;
  for (cd seed : {a0, -a0}) {
    cd a = seed, b = tbar - a * mbar;
    std::vector<cd> matched(mp.size());
    for (int it = 0; it < iterations; ++it) {
#pragma omp parallel for schedule(static)
      for (std::size_t i = 0; i < mp.size(); ++i)
        matched[i] = tp[tgrid.query(a * mp[i] + b).first];
      cd tm = centroid_of(matched);
      cd num(0, 0);
      double den = 0;
      for (std::size_t i = 0; i < mp.size(); ++i) {
        cd dmi = mp[i] - mbar;
        num += (matched[i] - tm) * std::conj(dmi);
        den += std::norm(dmi);
      }
      if (den == 0) break;
      a = num / den;
      b = tm - a * mbar;
    }
    PointCloud mapped;
    mapped.points.resize(mp.size());
    double ss = 0;
#pragma omp parallel for schedule(static) reduction(+ : ss)
    for (std::size_t i = 0; i < mp.size(); ++i) {
      mapped.points[i] = a * mp[i] + b;
      ss += std::norm(mapped.points[i] - tp[tgrid.query(mapped.points[i]).first]);
    }
    AlignResult r;
    r.map = {a, b};
    r.residual = hausdorff(mapped, target) / dt;
    r.rms = std::sqrt(ss / double(mp.size())) / dt;
    r.iterations = iterations;
    if (r.residual < best.residual) best = r;
  }
  return best;
}

std::optional<int> classify_decoration_level(std::complex<double> c,
                                             const AffineMap& window_map,
                                             const PointCloud& model_cloud,
                                             double tol) {
  if (model_cloud.empty() || window_map.a == cd(0, 0)) return std::nullopt;
  NnGrid grid(model_cloud.points);
  if (tol <= 0) {
    // Three median nearest-neighbor spacings over a deterministic subsample.
    std::vector<double> gaps;
    std::size_t stride = std::max<std::size_t>(1, model_cloud.size() / 256);
    for (std::size_t i = 0; i < model_cloud.size(); i += stride)
      gaps.push_back(
          grid.query(model_cloud.points[i], static_cast<int>(i)).second);
    std::sort(gaps.begin(), gaps.end());
    tol = 3.0 * gaps[gaps.size() / 2];
  }
  cd m = (c - window_map.b) / window_map.a;
  auto [idx, dist] = grid.query(m);
  if (idx < 0 || dist > tol) return std::nullopt;
  return model_cloud.has_levels() ? model_cloud.levels[idx] : 0;
}

VerificationReport semihyperbolic_test(const HPComplex& c, long n_iter,
                                       double delta, long transient) {
  if (n_iter <= transient) throw error("n_iter must exceed transient");
  cd cc = c.to_std();
  double bail = std::max(2.0, std::abs(cc));

  std::vector<cd> orbit;
  orbit.reserve(static_cast<std::size_t>(n_iter) + 1);
  cd z(0, 0);
  orbit.push_back(z);
  bool escaped = false;
  long esc_at = 0;
  for (long n = 1; n <= n_iter; ++n) {
    z = z * z + cc;
    orbit.push_back(z);
    if (std::abs(z) > bail) {
      escaped = true;
      esc_at = n;
      break;
    }
  }

  if (delta <= 0) {
    PointCloud oc;
    oc.points = orbit;
    delta = std::max(1e-3 * oc.diameter(), 1e-12);
  }

  double min_d = kInf;
  std::vector<long> hits;
  long last = static_cast<long>(orbit.size()) - 1;
  for (long n = transient + 1; n <= last; ++n) {
    double d = std::abs(orbit[static_cast<std::size_t>(n)]);
    min_d = std::min(min_d, d);
    if (d < delta) hits.push_back(n);
  }
  if (!std::isfinite(min_d)) min_d = bail;  // escaped before the transient

  std::string cls;
  long period = 0;
  if (escaped) {
    cls = "heuristically semihyperbolic";
  } else if (hits.empty()) {
    cls = min_d > delta ? "heuristically semihyperbolic" : "recurrent-suspect";
  } else {
    long g = 0;
    for (long h : hits) g = std::gcd(g, h);
    bool complete = g > 0;
    for (long n = ((transient / g) + 1) * g; complete && n <= last; n += g)
      complete = std::binary_search(hits.begin(), hits.end(), n);
    if (complete) {
      cls = "superattracting-like";
      period = g;
    } else {
      cls = "recurrent-suspect";
    }
  }

  VerificationReport rep;
  rep.test_name = "semihyperbolic_test";
  rep.metrics["critical_min_distance"] = min_d;
  rep.metrics["delta"] = delta;
  rep.metrics["bounded"] = escaped ? 0.0 : 1.0;
  rep.metrics["escaped_at"] = static_cast<double>(esc_at);
  rep.metrics["detected_period"] = static_cast<double>(period);
  rep.metrics["semihyperbolic"] =
      cls == "heuristically semihyperbolic" ? 1.0 : 0.0;
  rep.thresholds["min:semihyperbolic"] = 0.5;
  rep.classification = cls;
  rep.notes =
      "finite-orbit heuristic over " + std::to_string(n_iter) +
      " iterations; evidence of non-recurrence, not a proof";
  rep.evaluate();
  return rep;
}

}  // namespace decolab
