#pragma once
// Böttcher coordinates and Green's functions for K_c and M, via the
// telescoping product Phi(z) = z * prod (1 + c/z_n^2)^(1/2^(n+1)) with
// principal logs throughout. The real part (the Green's function) is
// branch-independent, and the functional equation Phi(P_c(z)) = Phi(z)^2
// holds exactly for the computed value by construction.

#include <optional>

#include "decolab/hp.hpp"

namespace decolab {

struct PotentialValue {
  double green = 0.0;           // log |Phi|; 0 when the orbit never escaped
  double external_angle = 0.0;  // arg Phi in radians, meaningful when escaped
  bool escaped = false;
  std::size_t iterations = 0;   // orbit length consumed
};

// Green's function of K_c at z (and of M at c when z = c).
PotentialValue green_K(const HPComplex& c, const HPComplex& z,
                       std::size_t n_max = 2048);

// Dynamical-plane Böttcher coordinate of z for P_c. Throws
// "Böttcher coordinate undefined (no escape)" when the orbit stays bounded
// for n_max steps.
HPComplex phi_c(const HPComplex& c, const HPComplex& z,
                std::size_t n_max = 2048);

// Parameter-plane Böttcher coordinate: Phi_M(c) = Phi_c(c).
HPComplex phi_M(const HPComplex& c, std::size_t n_max = 2048);

// Newton inversion with radial continuation from large modulus: the target
// angle stays fixed while the modulus steps down geometrically, each solve
// seeding the next. |w| must exceed 1.
HPComplex inverse_phi_c(const HPComplex& c, const HPComplex& w,
                        std::optional<HPComplex> seed = {}, double tol = 1e-12,
                        std::size_t n_max = 2048);
HPComplex inverse_phi_M(const HPComplex& w,
                        std::optional<HPComplex> seed = {}, double tol = 1e-12,
                        std::size_t n_max = 2048);

}  // namespace decolab
