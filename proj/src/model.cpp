#include "decolab/model.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_set>

namespace decolab {

void ModelSpec::resolve() {
  if (rho > 0.0 && rho_prime > 0.0) {
    if (rho <= rho_prime) throw error("need rho > rho_prime");
    R = rho / rho_prime;
  } else if (R > 1.0) {
    rho = std::sqrt(R);
    rho_prime = 1.0 / std::sqrt(R);
  } else {
    throw error("ModelSpec needs either R > 1 or explicit radii");
  }
  if (R <= 1.0) throw error("need R > 1");
  if (m_max < 0) throw error("m_max must be >= 0");
  if (samples_per_level == 0) throw error("samples_per_level must be positive");
}

namespace {
std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct CellKey {
  long long x, y;
  bool operator==(const CellKey& o) const { return x == o.x && y == o.y; }
};
struct CellHash {
  std::size_t operator()(const CellKey& k) const {
    return std::hash<long long>()(k.x * 1000003LL ^ k.y);
  }
};
}  // namespace

PointCloud sample_julia(const HPComplex& c, std::size_t n_points,
                        std::uint64_t seed_rng) {
  if (n_points == 0) throw error("n_points must be positive");
  std::complex<double> cd = c.to_std();
  std::complex<double> beta =
      (1.0 + std::sqrt(std::complex<double>(1.0, 0.0) - 4.0 * cd)) / 2.0;
  std::mt19937_64 rng(seed_rng);

  auto step = [&](std::complex<double> z) {
    std::complex<double> w = std::sqrt(z - cd);
    return (rng() & 1) ? w : -w;
  };

  // Pre-pass to estimate the diameter for the dedup grid.
  std::complex<double> z = beta;
  for (int i = 0; i < 20; ++i) z = step(z);
  double lo_re = z.real(), hi_re = z.real(), lo_im = z.imag(),
         hi_im = z.imag();
  std::complex<double> zp = z;
  for (int i = 0; i < 1024; ++i) {
    zp = step(zp);
    lo_re = std::min(lo_re, zp.real());
    hi_re = std::max(hi_re, zp.real());
    lo_im = std::min(lo_im, zp.imag());
    hi_im = std::max(hi_im, zp.imag());
  }
  double diam = std::hypot(hi_re - lo_re, hi_im - lo_im);
  if (diam == 0.0) diam = 1.0;
  double res = diam / 2048.0;

  PointCloud cloud;
  cloud.label = "julia";
  cloud.dedup_resolution = res;
  std::unordered_set<CellKey, CellHash> seen;
  rng.seed(seed_rng);  // the estimation pass must not perturb the sample
  z = beta;
  for (int i = 0; i < 20; ++i) z = step(z);
  std::size_t max_steps = 200 * n_points + 10000;
  for (std::size_t it = 0; it < max_steps && cloud.size() < n_points; ++it) {
    z = step(z);
    CellKey key{static_cast<long long>(std::floor(z.real() / res)),
                static_cast<long long>(std::floor(z.imag() / res))};
    if (seen.insert(key).second) cloud.append(z);
  }
  if (cloud.size() < n_points && cloud.size() < (n_points + 1) / 2)
    throw error("Julia sampling stalled (too few distinct cells)");
  return cloud;
}

PointCloud rescale_gamma0(const PointCloud& julia, const ModelSpec& spec_in) {
  ModelSpec spec = spec_in;
  spec.resolve();
  double lo = spec.rho_prime * (1.0 - 1e-9);
  double hi = spec.rho * (1.0 + 1e-9);
  for (const auto& p : julia.points) {
    double m = std::abs(p);
    if (m < lo || m > hi) throw error("radii do not bracket J_{c'}");
  }
  PointCloud out;
  out.label = "gamma0";
  out.dedup_resolution = julia.dedup_resolution * spec.scale_factor();
  double f = spec.scale_factor();
  out.points.reserve(julia.size());
  for (const auto& p : julia.points) out.append(p * f);
  return out;
}

PointCloud gamma_m(const PointCloud& gamma0, int m) {
  if (m < 0) throw error("m must be >= 0");
  if (m == 0) return gamma0;
  PointCloud out;
  out.label = "gamma" + std::to_string(m);
  std::size_t branches = std::size_t(1) << m;
  double inv = 1.0 / static_cast<double>(branches);
  out.points.reserve(gamma0.size() * branches);
  for (const auto& w : gamma0.points) {
    double r = std::pow(std::abs(w), inv);
    double th = std::arg(w);
    for (std::size_t j = 0; j < branches; ++j) {
      double a = (th + 2.0 * M_PI * static_cast<double>(j)) * inv;
      out.append(std::polar(r, a));
    }
  }
  return out;
}

PointCloud gamma_m_sampled(const PointCloud& gamma0, int m,
                           std::size_t n_samples, std::uint64_t seed) {
  if (m < 0) throw error("m must be >= 0");
  PointCloud out;
  out.label = "gamma" + std::to_string(m);
  std::size_t branches = std::size_t(1) << m;
  double inv = 1.0 / static_cast<double>(branches);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, gamma0.size() - 1);
  std::uniform_int_distribution<std::size_t> branch(0, branches - 1);
  out.points.reserve(n_samples);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto& w = gamma0.points[pick(rng)];
    std::size_t j = branch(rng);
    double r = std::pow(std::abs(w), inv);
    double a = (std::arg(w) + 2.0 * M_PI * static_cast<double>(j)) * inv;
    out.append(std::polar(r, a));
  }
  return out;
}

namespace {

// Shared tower pipeline for the decorated models: invert each sampled
// Gamma_m point through the supplied Böttcher inverse.
template <typename Invert>
PointCloud build_tower(const PointCloud& base_scaled, const ModelSpec& spec,
                       const char* label, Invert&& invert) {
  PointCloud out;
  out.label = label;
  mpfr_prec_t prec = default_precision();
  for (int m = 0; m <= spec.m_max; ++m) {
    PointCloud gm =
        (m == 0 && base_scaled.size() <= spec.samples_per_level)
            ? base_scaled
            : gamma_m_sampled(base_scaled, m, spec.samples_per_level,
                              splitmix64(spec.rng_seed ^
                                         (0x100 + static_cast<unsigned>(m))));
    std::size_t n = gm.size();
    std::vector<std::complex<double>> res(n);
    std::vector<char> ok(n, 0);
#pragma omp parallel for schedule(dynamic, 16)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      HPComplex w(gm.points[i], prec);
      try {
        HPComplex c = invert(w);
        res[i] = c.to_std();
        ok[i] = 1;
      } catch (const error&) {
        ok[i] = 0;
      }
    }
    std::size_t dropped = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (ok[i])
        out.append(res[i], m);
      else
        ++dropped;
    }
    if (dropped * 10 > n)
      throw error("model level " + std::to_string(m) +
                  ": more than 10% of inversions failed");
  }
  return out;
}

}  // namespace

PointCloud build_model_M(const ModelSpec& spec_in) {
  ModelSpec spec = spec_in;
  spec.resolve();
  PointCloud julia =
      sample_julia(spec.c_prime, spec.samples_per_level, spec.rng_seed);
  PointCloud g0 = rescale_gamma0(julia, spec);
  return build_tower(g0, spec, "model_M", [](const HPComplex& w) {
    return inverse_phi_M(w, std::nullopt, 1e-12);
  });
}

PointCloud build_model_K(const HPComplex& c, const ModelSpec& spec_in) {
  ModelSpec spec = spec_in;
  spec.resolve();
  PointCloud julia =
      sample_julia(spec.c_prime, spec.samples_per_level, spec.rng_seed);
  PointCloud g0 = rescale_gamma0(julia, spec);
  return build_tower(g0, spec, "model_K", [&c](const HPComplex& w) {
    return inverse_phi_c(c, w, std::nullopt, 1e-12);
  });
}

PointCloud build_nested_model(const ModelSpec& spec_in,
                              const PointCloud& inner_cloud) {
  ModelSpec spec = spec_in;
  spec.resolve();
  PointCloud g0 = rescale_gamma0(inner_cloud, spec);
  return build_tower(g0, spec, "model_nested", [](const HPComplex& w) {
    return inverse_phi_M(w, std::nullopt, 1e-12);
  });
}

PointCloud sample_M_equipotential(double green, std::size_t n, double tol) {
  if (green <= 0.0) throw error("equipotential level must be positive");
  if (n == 0) throw error("need at least one sample");
  PointCloud out;
  out.label = "equipotential";
  mpfr_prec_t prec = default_precision();
  std::vector<std::complex<double>> res(n);
  std::vector<char> ok(n, 0);
#pragma omp parallel for schedule(dynamic, 8)
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    double th = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(n);
    HPComplex w = exp(HPComplex(HPReal(green, prec), HPReal(th, prec)));
    try {
      res[i] = inverse_phi_M(w, std::nullopt, tol).to_std();
      ok[i] = 1;
    } catch (const error&) {
      ok[i] = 0;
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (ok[i]) out.append(res[i]);
  if (out.size() * 10 < n * 9)
    throw error("equipotential sampling: more than 10% of inversions failed");
  return out;
}

}  // namespace decolab
