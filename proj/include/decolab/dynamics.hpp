#pragma once
// Core quadratic dynamics: orbits of z -> z^2 + c with optional first-order
// derivative tracking, and Newton location of periodic points.

#include <cstdint>
#include <optional>
#include <vector>

#include "decolab/hp.hpp"

namespace decolab {

struct OrbitState {
  HPComplex z;
  HPComplex dz_dc;   // d z_n / d c        (recursion C_{n+1} = 2 z C + 1)
  HPComplex dz_dz0;  // d z_n / d z_0      (recursion D_{n+1} = 2 z D)
};

struct OrbitRecord {
  HPComplex c;
  HPComplex z0;
  std::vector<OrbitState> states;  // states[n] is z_n; states[0] is z0
  bool with_derivatives = false;
  double escape_radius = 2.0;
  // Smallest n with |z_n| > escape_radius; iteration stops there.
  std::optional<std::size_t> escaped_at;
  // Set if |z_n| overflowed the working precision's exponent range; such
  // orbits are reported as escaped at the overflow index.
  bool overflowed = false;

  bool escaped() const { return escaped_at.has_value(); }
  const HPComplex& last_z() const { return states.back().z; }
};

// Iterates z_{k+1} = z_k^2 + c from z0, recording n+1 states (truncated at
// the first index whose modulus exceeds escape_radius). escape_radius must be
// >= 2 so escape is irreversible.
OrbitRecord iterate(const HPComplex& c, const HPComplex& z0, std::size_t n,
                    bool with_derivatives = false, double escape_radius = 2.0);

// Critical orbit: starts at z0 = 0.
inline OrbitRecord critical_orbit(const HPComplex& c, std::size_t n,
                                  bool with_derivatives = false,
                                  double escape_radius = 2.0) {
  return iterate(c, HPComplex(c.prec()), n, with_derivatives, escape_radius);
}

struct CycleRecord {
  HPComplex c;
  std::size_t period = 0;
  std::vector<HPComplex> points;  // the cycle in orbit order from the root
  HPComplex multiplier;           // (P_c^p)'(points[0])
  HPReal residual;                // |P_c^p(z) - z| at the accepted root
  std::size_t newton_steps = 0;
};

// Newton's method on z -> P_c^p(z) - z from seed_z. Damped (step halved when
// the residual would grow), at most 200 steps. Throws decolab::error with
// "no cycle near seed" on non-convergence and "degenerate seed" when the
// Newton derivative (P^p)'(z) - 1 vanishes at the seed.
CycleRecord find_cycle(const HPComplex& c, std::size_t p,
                       const HPComplex& seed_z, double tol = 1e-12,
                       std::size_t max_steps = 200);

// Value and c-derivative of the critical orbit point z_n(c), plus the full
// state list when needed by callers; cheap helper used by the solvers.
struct CriticalPoint {
  HPComplex z;      // z_n
  HPComplex dz_dc;  // C_n
  bool finite = true;
};
CriticalPoint critical_point(const HPComplex& c, std::size_t n);

}  // namespace decolab
