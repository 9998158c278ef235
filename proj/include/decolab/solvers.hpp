#pragma once
// Newton solvers for special parameters of z^2 + c: superattracting centers,
// Misiurewicz (preperiodic) parameters, parabolic roots, tuned copies of
// Misiurewicz parameters inside small copies, and center cascades
// accumulating on those parameters.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decolab/dynamics.hpp"
#include "decolab/hp.hpp"

namespace decolab {

struct MisiurewiczType {
  std::size_t l = 0;  // preperiod (>= 1)
  std::size_t k = 0;  // eventual period (>= 1)
};

// Root of z_q(c) = P_c^q(0) with q the exact period of the critical orbit.
// Throws "no center near seed" on Newton failure and "period collapse" when
// the root found has exact period a proper divisor of q.
HPComplex solve_superattracting_center(std::size_t q, const HPComplex& seed,
                                       double tol = 1e-12);

// Root of z_{l+k}(c) - z_l(c) that is strictly preperiodic with minimal
// preperiod l and minimal period k. Throws on Newton failure and
// "degenerate: not a strict (l,k) parameter" when the root violates
// strictness or minimality.
HPComplex solve_misiurewicz(MisiurewiczType t, const HPComplex& seed,
                            double tol = 1e-12);

// Multiplier of the period-k cycle the critical orbit lands on at a
// Misiurewicz parameter: product of 2 z_n over one period starting at z_l.
HPComplex multiplier_at_misiurewicz(const HPComplex& c, MisiurewiczType t);

struct ParabolicRoot {
  HPComplex c;
  HPComplex z;  // the parabolic periodic point
  HPComplex lambda;
  std::size_t period = 0;
  unsigned nu_prime = 0, nu = 1;
  HPReal residual;
};

// Solves the 2x2 system P_c^p(z) = z, (P_c^p)'(z) = lambda with
// lambda = exp(2 pi i nu'/nu), nu'/nu reduced. Damped Newton from
// (seed_c, seed_z); throws "singular Jacobian at seed" / "no parabolic root
// near seed".
ParabolicRoot solve_parabolic_root(std::size_t p, unsigned nu_prime,
                                   unsigned nu, const HPComplex& seed_c,
                                   const HPComplex& seed_z,
                                   double tol = 1e-10);

struct TuneResult {
  HPComplex c;                 // the tuned Misiurewicz parameter
  MisiurewiczType tuned_type;  // equation type (l*p, k*p)
  MisiurewiczType minimal_type;  // measured strict type; l can be < l*p
  HPComplex copy_center_2p;    // nearest period-2p center, sets the scale
  HPComplex scale;             // linear tuning scale estimate
  HPComplex ref_point;         // the reference parameter that was tuned
};

// Tuned image of a reference (l,k) Misiurewicz parameter inside the copy
// rooted at the period-p center s0. The reference point is solved from
// ref_seed when given; a small table of canonical reference parameters
// covers common types otherwise.
TuneResult tune_misiurewicz(const HPComplex& s0, std::size_t p,
                            MisiurewiczType t, double tol = 1e-12,
                            std::optional<HPComplex> ref_seed = {});

struct CenterHit {
  HPComplex c;
  std::size_t q = 0;
  double dist = 0.0;
};

// Scans periods q = 1..q_max, Newton from seed for each, and returns the
// exact-period center closest to the seed among those within max_dist
// (smallest q on ties). Throws "no center within reach of seed" when the
// scan comes up empty.
CenterHit find_center_near(const HPComplex& seed, std::size_t q_max,
                           double tol = 1e-12, double max_dist = 0.05);

enum class CascadeLaw { Geometric, InverseLinear, InverseSquare, Inconclusive };

struct CascadeStep {
  std::size_t q = 0;
  HPComplex s;
  double dist = 0.0;  // |s - c1|
};

struct CascadeRecord {
  HPComplex c1;
  std::vector<CascadeStep> steps;  // steps[0] is the supplied base
  std::vector<std::complex<double>> ratios;  // (s_{j+1}-c1)/(s_j-c1)
  CascadeLaw fitted_law = CascadeLaw::Inconclusive;
  double fitted_exponent = 0.0;  // power-law exponent, or log|ratio| if geometric
  std::complex<double> fitted_constant{0.0, 0.0};
  double fit_residual = 0.0;  // rms residual of the winning fit, log space
  long fit_offset = 0;        // index offset n0 of the winning power fit
  bool aborted = false;       // ladder stopped early on a Newton failure
  std::string abort_reason;
};

const char* cascade_law_name(CascadeLaw law);

// Follows the ladder of centers of period q_base + j*dq from s_base toward
// the accumulation parameter c1, seeding each Newton solve from the scaled
// previous step (using 1/mu when the Misiurewicz multiplier is supplied).
// A Newton failure aborts the ladder; the partial sequence is fitted and
// returned with the aborted flag set.
CascadeRecord cascade(const HPComplex& c1, const HPComplex& s_base,
                      std::size_t q_base, std::size_t dq, std::size_t count,
                      std::optional<HPComplex> mu = {}, double tol = 1e-12);

enum class ParamMapKind { CenterPoly, MisiurewiczPoly };

// A parameter-plane map whose roots are the special parameters: z_q(c) for
// centers, z_{l+k}(c) - z_l(c) for Misiurewicz parameters.
struct ParamMap {
  ParamMapKind kind = ParamMapKind::CenterPoly;
  std::size_t q = 0;
  MisiurewiczType t;

  static ParamMap center(std::size_t q) { return {ParamMapKind::CenterPoly, q, {}}; }
  static ParamMap misiurewicz(MisiurewiczType t) {
    return {ParamMapKind::MisiurewiczPoly, 0, t};
  }
  HPComplex eval(const HPComplex& c) const;
};

// Winding number of f along the circle |c - center| = radius, by summed
// argument increments; the sample count doubles until every increment is
// below pi/2. Throws "zero on contour" when a sample (nearly) vanishes.
long winding_number(const ParamMap& f, const HPComplex& center, double radius,
                    std::size_t samples = 1024);

// True when the critical orbit of c is exactly periodic with exact period q
// (all proper-divisor residuals above tol).
bool has_exact_period(const HPComplex& c, std::size_t q, double tol = 1e-8);

}  // namespace decolab
