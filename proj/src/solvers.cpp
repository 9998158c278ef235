#include "decolab/solvers.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

namespace decolab {

namespace {

struct Eval {
  HPComplex f, df;
};

// Damped Newton in the parameter plane with precision escalation: the step
// is halved while the residual would grow, and if the residual fails to halve
// over a 5-step window the working precision doubles (capped at 4096 bits).
HPComplex newton_c(const std::function<Eval(const HPComplex&)>& eval,
                   const HPComplex& seed, double tol, std::size_t max_steps,
                   const char* fail_msg, double wander_limit = 0.0) {
  mpfr_prec_t prec = std::max(seed.prec(), default_precision());
  const mpfr_prec_t max_prec = 4096;
  HPComplex c = seed.at_prec(prec);
  HPReal tol_hp(tol, prec);
  Eval e = eval(c);
  HPReal res = abs(e.f);
  std::vector<double> window;

  for (std::size_t steps = 0; steps < max_steps; ++steps) {
    if (res.is_finite() && res <= tol_hp) break;
    if (!e.df.is_finite() || e.df.norm2().is_zero())
      throw error(std::string(fail_msg) + " (vanishing derivative)");
    HPComplex step = e.f / e.df;
    HPComplex c_new(prec);
    Eval e_new;
    HPReal res_new(prec);
    bool accepted = false;
    for (int halves = 0; halves < 40; ++halves) {
      c_new = c - step;
      e_new = eval(c_new);
      res_new = abs(e_new.f);
      if (res_new.is_finite() && (!res.is_finite() || res_new < res)) {
        accepted = true;
        break;
      }
      step = HPReal(0.5, prec) * step;
    }
    if (!accepted) throw error(fail_msg);
    c = c_new;
    e = e_new;
    res = res_new;
    if (wander_limit > 0.0 && abs(c - seed).to_double() > wander_limit)
      throw error(fail_msg);

    window.push_back(res.to_double());
    std::size_t w = window.size();
    if (w >= 6 && window[w - 1] > 0.5 * window[w - 6] &&
        window[w - 1] > tol) {
      if (prec < max_prec) {
        prec = std::min<mpfr_prec_t>(prec * 2, max_prec);
        c = c.at_prec(prec);
        tol_hp = HPReal(tol, prec);
        e = eval(c);
        res = abs(e.f);
        window.clear();
      }
    }
  }
  if (!(res <= tol_hp)) throw error(fail_msg);
  // One polishing step past the tolerance; quadratic convergence makes the
  // parameter error negligible against the residual threshold.
  if (e.df.is_finite() && !e.df.norm2().is_zero()) {
    HPComplex c_new = c - e.f / e.df;
    Eval e_new = eval(c_new);
    if (e_new.f.is_finite() && abs(e_new.f) < res) c = c_new;
  }
  return c;
}

Eval eval_center(const HPComplex& c, std::size_t q) {
  CriticalPoint cp = critical_point(c, q);
  return {cp.z, cp.dz_dc};
}

Eval eval_misiurewicz(const HPComplex& c, MisiurewiczType t) {
  mpfr_prec_t p = c.prec();
  HPComplex z(p), dc(0.0, 0.0, p), one(1.0, 0.0, p);
  HPComplex zl(p), dl(p);
  for (std::size_t n = 0; n < t.l + t.k; ++n) {
    dc = 2.0 * (z * dc) + one;
    z = z.sqr() + c;
    if (n + 1 == t.l) {
      zl = z;
      dl = dc;
    }
  }
  return {z - zl, dc - dl};
}

std::vector<std::size_t> proper_divisors(std::size_t q) {
  std::vector<std::size_t> out;
  for (std::size_t d = 1; d < q; ++d)
    if (q % d == 0) out.push_back(d);
  return out;
}

}  // namespace

bool has_exact_period(const HPComplex& c, std::size_t q, double tol) {
  mpfr_prec_t p = c.prec();
  HPReal tol_hp(tol, p);
  HPComplex z(p);
  auto divs = proper_divisors(q);
  std::size_t di = 0;
  for (std::size_t n = 1; n <= q; ++n) {
    z = z.sqr() + c;
    if (!z.is_finite()) return false;
    if (di < divs.size() && n == divs[di]) {
      ++di;
      if (abs(z) <= tol_hp) return false;
    }
  }
  return abs(z) <= tol_hp;
}

HPComplex solve_superattracting_center(std::size_t q, const HPComplex& seed,
                                       double tol) {
  if (q == 0) throw error("period must be positive");
  HPComplex c = newton_c([q](const HPComplex& x) { return eval_center(x, q); },
                         seed, tol, 200, "no center near seed");
  if (!has_exact_period(c, q, std::max(tol, 1e-9) * 10))
    throw error("period collapse: root has exact period dividing " +
                std::to_string(q));
  return c;
}

namespace {

// Root of z_{l+k}(c) - z_l(c) = 0 with no strictness or minimality demands;
// tuned parameters generically satisfy the equation with a non-minimal l.
HPComplex solve_misiurewicz_equation(MisiurewiczType t, const HPComplex& seed,
                                     double tol) {
  if (t.l < 1 || t.k < 1) throw error("Misiurewicz type needs l,k >= 1");
  return newton_c([t](const HPComplex& x) { return eval_misiurewicz(x, t); },
                  seed, tol, 200, "no Misiurewicz parameter near seed");
}

// Minimal strict (l,k) of a root of the (t.l, t.k) equation: the cycle
// period is the smallest divisor of t.k closing the loop at z_{t.l}, and the
// preperiod is the first orbit index already on that cycle.
MisiurewiczType measured_minimal_type(const HPComplex& c, MisiurewiczType t) {
  OrbitRecord orb = iterate(c, HPComplex(c.prec()), t.l + t.k, false, 1e6);
  if (orb.states.size() < t.l + t.k + 1)
    throw error("degenerate: orbit escaped during classification");
  const double strict_tol = 1e-8;
  auto dist = [&](std::size_t a, std::size_t b) {
    return abs(orb.states[a].z - orb.states[b].z).to_double();
  };
  std::size_t k_min = t.k;
  for (std::size_t kp = 1; kp < t.k; ++kp)
    if (t.k % kp == 0 && dist(t.l + kp, t.l) <= strict_tol) {
      k_min = kp;
      break;
    }
  std::size_t l_min = t.l;
  while (l_min > 1 && dist(l_min - 1 + k_min, l_min - 1) <= strict_tol)
    --l_min;
  return {l_min, k_min};
}

}  // namespace

HPComplex solve_misiurewicz(MisiurewiczType t, const HPComplex& seed,
                            double tol) {
  HPComplex c = solve_misiurewicz_equation(t, seed, tol);
  MisiurewiczType m = measured_minimal_type(c, t);
  if (m.k != t.k)
    throw error("degenerate: not a strict (l,k) parameter (smaller period)");
  if (m.l != t.l)
    throw error("degenerate: not a strict (l,k) parameter (smaller preperiod)");
  return c;
}

HPComplex multiplier_at_misiurewicz(const HPComplex& c, MisiurewiczType t) {
  mpfr_prec_t p = c.prec();
  HPComplex z(p);
  for (std::size_t n = 0; n < t.l; ++n) z = z.sqr() + c;
  HPComplex zl = z;
  HPComplex mult(1.0, 0.0, p);
  for (std::size_t n = 0; n < t.k; ++n) {
    mult = mult * (2.0 * z);
    z = z.sqr() + c;
  }
  if (abs(z - zl).to_double() > 1e-6)
    throw error("input not Misiurewicz for spec");
  if (abs(mult).to_double() <= 1.0)
    throw error("not repelling: input not Misiurewicz for spec");
  return mult;
}

ParabolicRoot solve_parabolic_root(std::size_t p, unsigned nu_prime,
                                   unsigned nu, const HPComplex& seed_c,
                                   const HPComplex& seed_z, double tol) {
  if (p == 0) throw error("cycle period must be positive");
  if (nu == 0) throw error("nu must be positive");
  if (std::gcd(static_cast<unsigned>(nu_prime), nu) != 1)
    throw error("nu'/nu must be in lowest terms");

  mpfr_prec_t prec = std::max({seed_c.prec(), seed_z.prec(),
                               default_precision()});
  HPReal two_pi = 2.0 * HPReal::pi(prec);
  HPComplex lambda =
      HPComplex::cis(two_pi * HPReal(static_cast<double>(nu_prime), prec) /
                     HPReal(static_cast<double>(nu), prec));

  HPComplex c = seed_c.at_prec(prec), z = seed_z.at_prec(prec);
  HPReal tol_hp(tol, prec);

  // One orbit pass produces the system values and the full 2x2 Jacobian:
  //   w' = w^2 + c,  A = dw/dz,  B = dw/dc,  E = dA/dz,  F = dA/dc.
  struct Sys {
    HPComplex g1, g2;  // P^p(z)-z, (P^p)'(z)-lambda
    HPComplex j_zz, j_zc, j_az, j_ac;
    HPReal res;
  };
  auto eval = [&](const HPComplex& cc, const HPComplex& zz) {
    HPComplex w = zz;
    HPComplex A(1.0, 0.0, prec), B(0.0, 0.0, prec);
    HPComplex E(0.0, 0.0, prec), F(0.0, 0.0, prec);
    HPComplex one(1.0, 0.0, prec);
    for (std::size_t n = 0; n < p; ++n) {
      HPComplex E_new = 2.0 * (A * A + w * E);
      HPComplex F_new = 2.0 * (B * A + w * F);
      HPComplex A_new = 2.0 * (w * A);
      HPComplex B_new = 2.0 * (w * B) + one;
      E = E_new;
      F = F_new;
      A = A_new;
      B = B_new;
      w = w.sqr() + cc;
    }
    Sys s;
    s.g1 = w - zz;
    s.g2 = A - lambda;
    s.j_zz = A - one;  // d g1 / d z
    s.j_zc = B;        // d g1 / d c
    s.j_az = E;        // d g2 / d z
    s.j_ac = F;        // d g2 / d c
    s.res = hypot(abs(s.g1), abs(s.g2));
    return s;
  };

  Sys s = eval(c, z);
  for (std::size_t steps = 0; steps < 200 && s.res > tol_hp; ++steps) {
    HPComplex det = s.j_zz * s.j_ac - s.j_zc * s.j_az;
    if (!det.is_finite() || det.norm2().is_zero())
      throw error("degenerate configuration: singular Jacobian");
    HPComplex dz = (s.g1 * s.j_ac - s.g2 * s.j_zc) / det;
    HPComplex dcp = (s.j_zz * s.g2 - s.j_az * s.g1) / det;
    bool accepted = false;
    for (int halves = 0; halves < 40; ++halves) {
      Sys s_new = eval(c - dcp, z - dz);
      if (s_new.res.is_finite() && s_new.res < s.res) {
        c = c - dcp;
        z = z - dz;
        s = s_new;
        accepted = true;
        break;
      }
      dz = HPReal(0.5, prec) * dz;
      dcp = HPReal(0.5, prec) * dcp;
    }
    if (!accepted)
      throw error("no parabolic root near seed; residual " + s.res.str(3));
  }
  if (!(s.res <= tol_hp))
    throw error("no parabolic root near seed; residual " + s.res.str(3));

  ParabolicRoot out{c, z, lambda, p, nu_prime, nu, s.res};
  return out;
}

CenterHit find_center_near(const HPComplex& seed, std::size_t q_max,
                           double tol, double max_dist) {
  bool found = false;
  CenterHit best;
  double wander = std::max(4.0 * max_dist, 0.25);
  for (std::size_t q = 1; q <= q_max; ++q) {
    HPComplex c(seed.prec());
    try {
      c = newton_c([q](const HPComplex& x) { return eval_center(x, q); },
                   seed, tol, 80, "no center near seed", wander);
    } catch (const error&) {
      continue;
    }
    if (!has_exact_period(c, q, std::max(tol, 1e-9) * 10)) continue;
    double d = abs(c - seed).to_double();
    if (d > max_dist) continue;
    if (!found || d < best.dist) {
      best = {c, q, d};
      found = true;
    }
  }
  if (!found) throw error("no center within reach of seed");
  return best;
}

namespace {

// Nearest superattracting parameter of period tp around s0, located by a
// deterministic ring of Newton seeds at dyadic radii.
HPComplex nearest_center_of_period(const HPComplex& s0, std::size_t tp) {
  bool found = false;
  HPComplex best(s0.prec());
  double best_d = 0.0;
  for (int j = 0; j <= 14; ++j) {
    double delta = 0.25 * std::pow(2.0, -j);
    for (int d = 0; d < 8; ++d) {
      double th = 2.0 * M_PI * d / 8.0;
      HPComplex seed = s0 + HPComplex(delta * std::cos(th),
                                      delta * std::sin(th), s0.prec());
      HPComplex c(s0.prec());
      try {
        c = solve_superattracting_center(tp, seed, 1e-14);
      } catch (const error&) {
        continue;
      }
      double dist = abs(c - s0).to_double();
      if (dist < 1e-12 || dist > 0.5) continue;
      if (!found || dist < best_d) {
        best = c;
        best_d = dist;
        found = true;
      }
    }
  }
  if (!found)
    throw error("no period-" + std::to_string(tp) + " center found near s0");
  return best;
}

// Reference parameters for common Misiurewicz types, used when no seed for
// the unrenormalized reference point is supplied.
std::optional<HPComplex> canonical_misiurewicz_seed(MisiurewiczType t,
                                                    mpfr_prec_t prec) {
  if (t.l == 2 && t.k == 1) return HPComplex(-2.0, 0.0, prec);
  if (t.l == 2 && t.k == 2) return HPComplex(0.0, 1.0, prec);
  if (t.l == 4 && t.k == 1)
    return HPComplex::from_strings("-0.1010963638456221",
                                   "0.9562865108091415", prec);
  return std::nullopt;
}

}  // namespace

TuneResult tune_misiurewicz(const HPComplex& s0, std::size_t p,
                            MisiurewiczType t, double tol,
                            std::optional<HPComplex> ref_seed) {
  if (p == 0) throw error("copy period must be positive");
  mpfr_prec_t prec = std::max(s0.prec(), default_precision());

  std::optional<HPComplex> seed = ref_seed;
  if (!seed) seed = canonical_misiurewicz_seed(t, prec);
  if (!seed)
    throw error("no canonical reference for this Misiurewicz type; "
                "supply a reference seed");
  HPComplex ref = solve_misiurewicz(t, seed->at_prec(prec), tol);

  HPComplex s_double = nearest_center_of_period(s0, 2 * p);
  // The copy map sends 0 -> s0 and the period-2 center -1 -> the period-2p
  // satellite center, fixing the linear scale.
  HPComplex scale = -(s_double - s0);
  HPComplex seed_c = s0 + scale * ref;

  // Second-order correction fitted from a period-3p anchor. The linear model
  // drifts near the edge of M (|ref| ~ 2) and can seed the basin of a
  // different root of the tuned equation.
  try {
    static const double thirds[3][2] = {
        {-1.754877666246693, 0.0},
        {-0.122561166876654, 0.744861766619744},
        {-0.122561166876654, -0.744861766619744}};
    double best_d = 1e30;
    HPComplex c3_seed(prec);
    for (const auto& t3 : thirds) {
      HPComplex cand(t3[0], t3[1], prec);
      double d = abs(cand - ref).to_double();
      if (d < best_d) {
        best_d = d;
        c3_seed = cand;
      }
    }
    HPComplex c3 = solve_superattracting_center(3, c3_seed, 1e-20);
    HPComplex s_triple = nearest_center_of_period(s0 + scale * c3, 3 * p);
    HPComplex quad = (s_triple - s0 - scale * c3) / c3.sqr();
    HPComplex corr = quad * ref.sqr();
    if (abs(corr).to_double() < 0.5 * abs(scale * ref).to_double())
      seed_c = seed_c + corr;
  } catch (const error&) {
    // anchor not found; keep the linear seed
  }

  // The tuned point satisfies the (l*p, k*p) equation but is usually not
  // strict at that preperiod (the orbit joins the cycle earlier), so only the
  // equation is solved here and the realized strict type is measured after.
  MisiurewiczType tuned{t.l * p, t.k * p};
  HPComplex c = solve_misiurewicz_equation(tuned, seed_c, tol);
  MisiurewiczType minimal = measured_minimal_type(c, tuned);

  // Copy-radius ball: 10x the distance from s0 to its period-2p satellite.
  if (abs(c - s0).to_double() > 10.0 * abs(s_double - s0).to_double())
    throw error("tuning escaped the small copy; refine seed");
  return {c, tuned, minimal, s_double, scale, ref};
}

namespace {

struct LineFit {
  double slope = 0.0, intercept = 0.0, rms = 0.0;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  double det = n * sxx - sx * sx;
  LineFit f;
  f.slope = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  double ss = 0;
  for (std::size_t i = 0; i < n; ++i) {
    double e = y[i] - (f.intercept + f.slope * x[i]);
    ss += e * e;
  }
  f.rms = std::sqrt(ss / n);
  return f;
}

}  // namespace

const char* cascade_law_name(CascadeLaw law) {
  switch (law) {
    case CascadeLaw::Geometric: return "geometric";
    case CascadeLaw::InverseLinear: return "inverse_linear";
    case CascadeLaw::InverseSquare: return "inverse_square";
    default: return "inconclusive";
  }
}

CascadeRecord cascade(const HPComplex& c1, const HPComplex& s_base,
                      std::size_t q_base, std::size_t dq, std::size_t count,
                      std::optional<HPComplex> mu, double tol) {
  if (dq == 0) throw error("cascade period step must be positive");
  mpfr_prec_t prec = std::max({c1.prec(), s_base.prec(), default_precision()});
  HPComplex c1p = c1.at_prec(prec);

  CascadeRecord rec;
  rec.c1 = c1p;
  rec.steps.push_back(
      {q_base, s_base.at_prec(prec), abs(s_base - c1p).to_double()});

  std::optional<HPComplex> inv_mu;
  if (mu) inv_mu = HPComplex(1.0, 0.0, prec) / mu->at_prec(prec);

  for (std::size_t j = 1; j <= count; ++j) {
    std::size_t q = q_base + j * dq;
    const HPComplex& s_prev = rec.steps.back().s;
    HPComplex off_prev = s_prev - c1p;
    double d_prev = rec.steps.back().dist;

    // Candidate complex ratios for seeding the next rung.
    std::vector<std::complex<double>> cands;
    if (inv_mu) {
      std::complex<double> r = inv_mu->to_std();
      for (double f : {1.0, 0.95, 1.05, 0.9, 1.1}) cands.push_back(r * f);
    } else if (rec.ratios.size() >= 2) {
      std::complex<double> r = rec.ratios.back();
      std::complex<double> rp = rec.ratios[rec.ratios.size() - 2];
      std::complex<double> extrap = r * (r / rp);
      for (auto base : {extrap, r})
        for (double f : {1.0, 0.95, 1.05, 0.9, 1.1, 0.8})
          cands.push_back(base * f);
    } else if (!rec.ratios.empty()) {
      std::complex<double> r = rec.ratios.back();
      for (double f : {1.0, 0.95, 1.05, 0.9, 1.1, 0.85, 0.8})
        cands.push_back(r * f);
    } else {
      for (double f :
           {0.9, 0.8, 0.95, 0.7, 0.85, 0.6, 0.75, 0.5, 0.65, 0.4, 0.3})
        cands.emplace_back(f, 0.0);
    }

    bool placed = false;
    for (const auto& rho : cands) {
      HPComplex seed = c1p + HPComplex(rho, prec) * off_prev;
      HPComplex s(prec);
      try {
        s = solve_superattracting_center(q, seed, tol);
      } catch (const error&) {
        continue;
      }
      HPComplex off = s - c1p;
      double d = abs(off).to_double();
      if (!(d < d_prev * 0.999) || d < d_prev * 0.002) continue;
      // Reject jumps to an unrelated branch: the realized complex ratio must
      // stay near the candidate that seeded it (cascades spiral when the
      // multiplier is complex, so the raw direction is no guide).
      std::complex<double> r = (off / off_prev).to_std();
      if (std::abs(r - rho) > 0.4 * std::abs(rho)) continue;
      rec.ratios.push_back(r);
      rec.steps.push_back({q, s, d});
      placed = true;
      break;
    }
    if (!placed) {
      rec.aborted = true;
      rec.abort_reason = "Newton failed at period " + std::to_string(q);
      break;
    }
  }

  // Fit the distance sequence in log space: geometric vs power law with an
  // index offset.
  std::size_t n = rec.steps.size();
  if (n >= 4) {
    std::vector<double> idx(n), logd(n);
    for (std::size_t i = 0; i < n; ++i) {
      idx[i] = static_cast<double>(i);
      logd[i] = std::log(rec.steps[i].dist);
    }
    LineFit geo = fit_line(idx, logd);

    LineFit best_pow;
    long best_n0 = 0;
    bool have_pow = false;
    for (long n0 = 0; n0 <= 200; ++n0) {
      std::vector<double> lx(n);
      for (std::size_t i = 0; i < n; ++i)
        lx[i] = std::log(static_cast<double>(i + 1 + n0));
      LineFit f = fit_line(lx, logd);
      if (!have_pow || f.rms < best_pow.rms) {
        best_pow = f;
        best_n0 = n0;
        have_pow = true;
      }
    }

    const double good = 0.05;
    if (geo.rms <= best_pow.rms && geo.rms < good) {
      rec.fitted_law = CascadeLaw::Geometric;
      rec.fitted_exponent = geo.slope;  // log of the modulus ratio per rung
      rec.fit_residual = geo.rms;
      std::complex<double> logr{0.0, 0.0};
      for (const auto& r : rec.ratios)
        logr += std::complex<double>(std::log(std::abs(r)), std::arg(r));
      logr /= static_cast<double>(rec.ratios.size());
      std::complex<double> K{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        K += (rec.steps[i].s - c1p).to_std() *
             std::exp(-static_cast<double>(i) * logr);
      rec.fitted_constant = K / static_cast<double>(n);
    } else if (have_pow && best_pow.rms < good) {
      double a = best_pow.slope;
      rec.fit_residual = best_pow.rms;
      rec.fit_offset = best_n0;
      rec.fitted_exponent = a;
      if (a >= -1.5 && a <= -0.5)
        rec.fitted_law = CascadeLaw::InverseLinear;
      else if (a >= -2.5 && a < -1.5)
        rec.fitted_law = CascadeLaw::InverseSquare;
      else
        rec.fitted_law = CascadeLaw::Inconclusive;
      std::complex<double> K{0.0, 0.0};
      for (std::size_t i = 0; i < n; ++i)
        K += (rec.steps[i].s - c1p).to_std() *
             std::pow(static_cast<double>(i + 1 + best_n0), -a);
      rec.fitted_constant = K / static_cast<double>(n);
    } else {
      rec.fitted_law = CascadeLaw::Inconclusive;
      rec.fit_residual = std::min(geo.rms, best_pow.rms);
    }
  }
  return rec;
}

HPComplex ParamMap::eval(const HPComplex& c) const {
  if (kind == ParamMapKind::CenterPoly) {
    mpfr_prec_t p = c.prec();
    HPComplex z(p);
    for (std::size_t n = 0; n < q; ++n) z = z.sqr() + c;
    return z;
  }
  mpfr_prec_t p = c.prec();
  HPComplex z(p), zl(p);
  for (std::size_t n = 0; n < t.l + t.k; ++n) {
    z = z.sqr() + c;
    if (n + 1 == t.l) zl = z;
  }
  return z - zl;
}

long winding_number(const ParamMap& f, const HPComplex& center, double radius,
                    std::size_t samples) {
  if (radius <= 0.0) throw error("contour radius must be positive");
  mpfr_prec_t prec = std::max(center.prec(), default_precision());
  std::size_t n = std::max<std::size_t>(samples, 16);
  const std::size_t cap = std::size_t(1) << 20;

  while (true) {
    std::vector<double> args(n);
    std::vector<long> expo(n);
    int bad = 0;
    HPReal two_pi = 2.0 * HPReal::pi(prec);
    HPReal rad(radius, prec);
#pragma omp parallel for schedule(static) reduction(| : bad)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      HPReal th = two_pi * HPReal(static_cast<double>(i), prec) /
                  HPReal(static_cast<double>(n), prec);
      HPComplex c = center + rad * HPComplex::cis(th);
      HPComplex v = f.eval(c);
      HPReal m = abs(v);
      if (!v.is_finite() || m.is_zero()) {
        bad = 1;
        continue;
      }
      args[i] = arg(v).to_double();
      expo[i] = mpfr_get_exp(m.raw());
    }
    if (bad) throw error("zero on contour");
    long emin = *std::min_element(expo.begin(), expo.end());
    long emax = *std::max_element(expo.begin(), expo.end());
    if (emin < emax - 83)  // dynamic range ~1e25: effectively through a root
      throw error("zero on contour");

    double total = 0.0;
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      double d = args[(i + 1) % n] - args[i];
      while (d > M_PI) d -= 2.0 * M_PI;
      while (d < -M_PI) d += 2.0 * M_PI;
      if (std::abs(d) >= M_PI / 2.0) {
        ok = false;
        break;
      }
      total += d;
    }
    if (ok) {
      double w = total / (2.0 * M_PI);
      long rounded = std::lround(w);
      if (std::abs(w - rounded) < 0.01) return rounded;
    }
    if (n >= cap) throw error("winding number did not stabilize");
    n *= 2;
  }
}

}  // namespace decolab
