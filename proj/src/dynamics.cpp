#include "decolab/dynamics.hpp"

namespace decolab {

OrbitRecord iterate(const HPComplex& c, const HPComplex& z0, std::size_t n,
                    bool with_derivatives, double escape_radius) {
  if (escape_radius < 2.0) throw error("escape_radius must be >= 2");
  mpfr_prec_t p = std::max(c.prec(), z0.prec());
  OrbitRecord rec;
  rec.c = c;
  rec.z0 = z0;
  rec.with_derivatives = with_derivatives;
  rec.escape_radius = escape_radius;
  rec.states.reserve(n + 1);

  HPReal r2(escape_radius * escape_radius, p);
  HPComplex z = z0;
  HPComplex dc(0.0, 0.0, p);   // d z / d c, starts at 0
  HPComplex dz(1.0, 0.0, p);   // d z / d z0, starts at 1
  HPComplex one(1.0, 0.0, p);

  for (std::size_t k = 0;; ++k) {
    OrbitState st;
    st.z = z;
    if (with_derivatives) {
      st.dz_dc = dc;
      st.dz_dz0 = dz;
    }
    rec.states.push_back(std::move(st));
    if (!z.is_finite()) {
      rec.overflowed = true;
      rec.escaped_at = k;
      break;
    }
    if (z.norm2() > r2) {
      rec.escaped_at = k;
      break;
    }
    if (k == n) break;
    if (with_derivatives) {
      HPComplex two_z = 2.0 * z;
      dc = two_z * dc + one;
      dz = two_z * dz;
    }
    z = z.sqr() + c;
  }
  return rec;
}

CriticalPoint critical_point(const HPComplex& c, std::size_t n) {
  mpfr_prec_t p = c.prec();
  CriticalPoint out;
  HPComplex z(p);
  HPComplex dc(0.0, 0.0, p);
  HPComplex one(1.0, 0.0, p);
  for (std::size_t k = 0; k < n; ++k) {
    dc = 2.0 * (z * dc) + one;
    z = z.sqr() + c;
    if (!z.is_finite() || !dc.is_finite()) {
      out.finite = false;
      break;
    }
  }
  out.z = z;
  out.dz_dc = dc;
  return out;
}

namespace {
// P_c^p(z) and its z-derivative in one pass.
void iterate_p(const HPComplex& c, std::size_t p, const HPComplex& z_in,
               HPComplex& z_out, HPComplex& dz_out) {
  HPComplex z = z_in;
  HPComplex d(1.0, 0.0, z_in.prec());
  for (std::size_t k = 0; k < p; ++k) {
    d = 2.0 * (z * d);
    z = z.sqr() + c;
  }
  z_out = z;
  dz_out = d;
}
}  // namespace

CycleRecord find_cycle(const HPComplex& c, std::size_t p,
                       const HPComplex& seed_z, double tol,
                       std::size_t max_steps) {
  if (p == 0) throw error("cycle period must be positive");
  mpfr_prec_t prec = std::max(c.prec(), seed_z.prec());
  HPComplex z = seed_z;
  HPComplex fz(prec), dfz(prec);
  HPComplex one(1.0, 0.0, prec);
  HPReal tol_hp(tol, prec);

  iterate_p(c, p, z, fz, dfz);
  HPComplex f = fz - z;
  HPReal res = abs(f);
  if (abs(dfz - one) < HPReal(1e-14, prec) && res > tol_hp)
    throw error("degenerate seed");

  std::size_t steps = 0;
  while (res > tol_hp) {
    if (steps++ >= max_steps) throw error("no cycle near seed");
    HPComplex denom = dfz - one;
    if (denom.norm2().is_zero()) throw error("degenerate seed");
    HPComplex step = f / denom;
    // Damping: halve the step while the residual grows.
    HPComplex z_new(prec), f_new(prec), fz_new(prec), dfz_new(prec);
    HPReal res_new(prec);
    int halves = 0;
    for (;; ++halves) {
      z_new = z - step;
      iterate_p(c, p, z_new, fz_new, dfz_new);
      f_new = fz_new - z_new;
      res_new = abs(f_new);
      if (res_new.is_finite() && (res_new < res || halves >= 30)) break;
      step = HPReal(0.5, prec) * step;
    }
    if (!(res_new < res)) throw error("no cycle near seed");
    z = z_new;
    f = f_new;
    fz = fz_new;
    dfz = dfz_new;
    res = res_new;
  }

  CycleRecord rec;
  rec.c = c;
  rec.period = p;
  rec.newton_steps = steps;
  rec.residual = res;
  rec.points.reserve(p);
  HPComplex w = z;
  HPComplex mult(1.0, 0.0, prec);
  for (std::size_t k = 0; k < p; ++k) {
    rec.points.push_back(w);
    mult = mult * (2.0 * w);
    w = w.sqr() + c;
  }
  rec.multiplier = mult;
  return rec;
}

}  // namespace decolab
