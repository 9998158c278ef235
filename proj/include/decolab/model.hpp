#pragma once
// Decorated model sets: Julia sampling by inverse iteration, the rescaled
// Cantor set Gamma_0 = J_{c'} * rho/rho'^2 in A(R, R^2), its 2^m-th root
// preimage towers Gamma_m, and the decorated models M(c') / K_c(c') obtained
// by pulling the tower back through the Böttcher coordinates.

#include <cstdint>
#include <optional>

#include "decolab/bottcher.hpp"
#include "decolab/cloud.hpp"
#include "decolab/hp.hpp"

namespace decolab {

struct ModelSpec {
  HPComplex c_prime;       // parameter outside M (Cantor Julia set)
  double rho_prime = 0.0;  // 0 selects the default R^{-1/2}
  double rho = 0.0;        // 0 selects the default R^{+1/2}
  double R = 0.0;          // escape-line modulus; derived from radii if 0
  int m_max = 6;
  std::size_t samples_per_level = 4096;
  std::uint64_t rng_seed = 1;

  // Resolves defaults: radii from R or R from radii; validates rho > rho',
  // R > 1.
  void resolve();
  double scale_factor() const { return rho / (rho_prime * rho_prime); }
};

// Random inverse iteration from the beta fixed point: repeatedly apply
// z -> +-sqrt(z - c), drop a burn-in of 20 steps, deduplicate on a grid of
// pitch diameter/2048, and collect n_points points.
PointCloud sample_julia(const HPComplex& c, std::size_t n_points,
                        std::uint64_t seed_rng);

// Gamma_0: pointwise multiplication by rho/rho'^2 after checking the annulus
// containment J_{c'} in A(rho', rho).
PointCloud rescale_gamma0(const PointCloud& julia, const ModelSpec& spec);

// All 2^m-th roots of every input point (m = 0 returns the input unchanged).
PointCloud gamma_m(const PointCloud& gamma0, int m);

// As gamma_m but emitting exactly n_samples points, drawn deterministically
// from the (point, branch) product space with a seed derived per level.
PointCloud gamma_m_sampled(const PointCloud& gamma0, int m,
                           std::size_t n_samples, std::uint64_t seed);

// Decoration cloud of the decorated Mandelbrot set M(c'): union over
// m <= m_max of inverse_phi_M(Gamma_m) with level labels. Inversion failures
// are dropped with a count; more than 10% drops at any level is an error.
PointCloud build_model_M(const ModelSpec& spec);

// Decoration cloud of K_c(c'): same tower through inverse_phi_c in the
// dynamical plane of c.
PointCloud build_model_K(const HPComplex& c, const ModelSpec& spec);

// Remark-style nested model: the tower pipeline applied to an arbitrary
// inner cloud (e.g. a decorated K) in place of the plain Julia sample.
PointCloud build_nested_model(const ModelSpec& spec_outer,
                              const PointCloud& inner_cloud);

// Boundary-of-M surrogate: inverse_phi_M along the equipotential
// |w| = exp(green), sampled at n uniformly spaced angles. Used to give the
// similarity pipeline the copy body, not just the decorations.
PointCloud sample_M_equipotential(double green, std::size_t n,
                                  double tol = 1e-10);

}  // namespace decolab
