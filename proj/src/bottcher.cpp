#include "decolab/bottcher.hpp"

#include <cmath>
#include <functional>

namespace decolab {

namespace {

struct LogPhi {
  HPComplex value;  // log z0 + sum 2^{-(n+1)} Log(1 + c/z_n^2)
  bool escaped = false;
  bool degenerate = false;  // orbit ran through 0 or overflowed
  std::size_t iterations = 0;
};

LogPhi log_phi(const HPComplex& c, const HPComplex& z0, std::size_t n_max) {
  mpfr_prec_t p = std::max(c.prec(), z0.prec());
  LogPhi out;
  if (z0.norm2().is_zero()) {
    out.degenerate = true;
    return out;
  }
  HPComplex z = z0;
  HPComplex sum = log(z0);
  double abs_c = abs(c).to_double();
  // Outside this radius the orbit modulus grows monotonically.
  double esc = std::max(2.0, 1.0 + std::sqrt(1.0 + abs_c));
  HPReal esc2(esc * esc, p);
  double w = 1.0;  // running 2^{-(n+1)}

  for (std::size_t n = 0; n < n_max; ++n) {
    w *= 0.5;
    HPComplex zsq = z.sqr();
    if (!zsq.is_finite() || zsq.norm2().is_zero()) {
      out.degenerate = true;
      return out;
    }
    HPComplex z_next = zsq + c;
    HPComplex u = z_next / zsq;  // 1 + c/z_n^2 = z_{n+1}/z_n^2
    if (!u.is_finite() || u.norm2().is_zero()) {
      out.degenerate = true;
      return out;
    }
    sum += HPReal(w, p) * log(u);
    z = z_next;
    out.iterations = n + 1;
    if (z.norm2() > esc2) {
      out.escaped = true;
      // Tail bound: once |c/z^2| <= 1/2 each remaining term is at most
      // 2^{-(n+2)} * 2|c|/|z|^2 and |z| squares every step.
      double zm2 = z.norm2().to_double();
      if (std::isfinite(zm2) && abs_c / zm2 <= 0.5 &&
          w * 0.5 * 2.0 * abs_c / zm2 < 1e-20)
        break;
    }
  }
  out.value = sum;
  return out;
}

using EvalFn = std::function<std::optional<HPComplex>(const HPComplex&)>;

// Damped Newton with finite-difference derivative for targets of the
// Böttcher maps; nullopt from eval means "left the escape region".
std::optional<HPComplex> newton_inverse(const EvalFn& eval, HPComplex x,
                                        const HPComplex& w, double tol,
                                        std::size_t max_steps) {
  mpfr_prec_t p = std::max(x.prec(), w.prec());
  HPReal target(tol, p);
  target = target * abs(w);
  auto fx = eval(x);
  if (!fx) return std::nullopt;
  HPReal res = abs(*fx - w);
  for (std::size_t s = 0; s < max_steps; ++s) {
    if (res <= target) return x;
    double hx = 1e-10 * std::max(1.0, abs(x).to_double());
    HPComplex h(hx, 0.0, p);
    auto fxh = eval(x + h);
    if (!fxh) return std::nullopt;
    HPComplex deriv = (*fxh - *fx) / h;
    if (!deriv.is_finite() || deriv.norm2().is_zero()) return std::nullopt;
    HPComplex step = (*fx - w) / deriv;
    bool ok = false;
    for (int halves = 0; halves < 25; ++halves) {
      HPComplex x_new = x - step;
      auto f_new = eval(x_new);
      if (f_new) {
        HPReal r_new = abs(*f_new - w);
        if (r_new.is_finite() && r_new < res) {
          x = x_new;
          fx = f_new;
          res = r_new;
          ok = true;
          break;
        }
      }
      step = HPReal(0.5, p) * step;
    }
    if (!ok) return std::nullopt;
  }
  return res <= target ? std::optional<HPComplex>(x) : std::nullopt;
}

HPComplex invert_with_continuation(const EvalFn& eval, const HPComplex& w,
                                   std::optional<HPComplex> seed, double tol,
                                   const char* what) {
  mpfr_prec_t p = std::max(w.prec(), default_precision());
  double wmod = abs(w).to_double();
  if (!(wmod > 1.0 + 1e-12))
    throw error(std::string(what) + ": target modulus must exceed 1");

  if (seed) {
    auto hit = newton_inverse(eval, seed->at_prec(p), w, tol, 60);
    if (hit) return *hit;
  }

  // Radial continuation: start where the map is the identity to first order,
  // then walk the modulus down at fixed angle.
  double lw = std::log(wmod);
  double lt = std::log(std::max(16.0, 2.0 * wmod));
  HPReal ang = arg(w);
  HPComplex x = exp(HPComplex(HPReal(lt, p), ang));  // seed = target itself
  double step = 0.5;
  while (true) {
    double lnext = std::max(lw, lt - step);
    HPComplex w_t = exp(HPComplex(HPReal(lnext, p), ang));
    auto hit = newton_inverse(eval, x, w_t, tol, 60);
    if (hit) {
      x = *hit;
      lt = lnext;
      if (lt <= lw) return x;
      step = std::min(step * 1.3, 0.6);
    } else {
      step *= 0.5;
      if (step < 1e-5)
        throw error(std::string(what) +
                    ": inversion failed; raise precision or move the target");
    }
  }
}

}  // namespace

PotentialValue green_K(const HPComplex& c, const HPComplex& z,
                       std::size_t n_max) {
  PotentialValue out;
  if (z.norm2().is_zero()) {
    // log z0 is singular at the origin; step once through the map and halve.
    HPComplex z1 = c;
    if (z1.norm2().is_zero()) return out;  // c = 0, z = 0: interior
    LogPhi lp = log_phi(c, z1, n_max);
    if (!lp.escaped || lp.degenerate) return out;
    out.escaped = true;
    out.iterations = lp.iterations + 1;
    out.green = 0.5 * lp.value.real().to_double();
    out.external_angle = 0.5 * lp.value.imag().to_double();
    return out;
  }
  LogPhi lp = log_phi(c, z, n_max);
  if (!lp.escaped || lp.degenerate) return out;
  out.escaped = true;
  out.iterations = lp.iterations;
  out.green = lp.value.real().to_double();
  double a = std::fmod(lp.value.imag().to_double(), 2.0 * M_PI);
  if (a > M_PI) a -= 2.0 * M_PI;
  if (a <= -M_PI) a += 2.0 * M_PI;
  out.external_angle = a;
  return out;
}

HPComplex phi_c(const HPComplex& c, const HPComplex& z, std::size_t n_max) {
  LogPhi lp = log_phi(c, z, n_max);
  if (lp.degenerate)
    throw error("Böttcher coordinate undefined (orbit through 0)");
  if (!lp.escaped) throw error("Böttcher coordinate undefined (no escape)");
  return exp(lp.value);
}

HPComplex phi_M(const HPComplex& c, std::size_t n_max) {
  return phi_c(c, c, n_max);
}

HPComplex inverse_phi_c(const HPComplex& c, const HPComplex& w,
                        std::optional<HPComplex> seed, double tol,
                        std::size_t n_max) {
  EvalFn eval = [&c, n_max](const HPComplex& z) -> std::optional<HPComplex> {
    LogPhi lp = log_phi(c, z, n_max);
    if (!lp.escaped || lp.degenerate) return std::nullopt;
    return exp(lp.value);
  };
  return invert_with_continuation(eval, w, seed, tol, "inverse_phi_c");
}

HPComplex inverse_phi_M(const HPComplex& w, std::optional<HPComplex> seed,
                        double tol, std::size_t n_max) {
  EvalFn eval = [n_max](const HPComplex& cc) -> std::optional<HPComplex> {
    LogPhi lp = log_phi(cc, cc, n_max);
    if (!lp.escaped || lp.degenerate) return std::nullopt;
    return exp(lp.value);
  };
  return invert_with_continuation(eval, w, seed, tol, "inverse_phi_M");
}

}  // namespace decolab
