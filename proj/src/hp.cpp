#include "decolab/hp.hpp"

#include <atomic>
#include <cstdlib>
#include <vector>

namespace decolab {

namespace {
mpfr_prec_t initial_default() {
  if (const char* env = std::getenv("DECOLAB_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v > 0) return HPReal::clamp(v);
  }
  return 256;
}
std::atomic<mpfr_prec_t> g_default{0};
}  // namespace

mpfr_prec_t default_precision() {
  mpfr_prec_t p = g_default.load(std::memory_order_relaxed);
  if (p == 0) {
    p = initial_default();
    g_default.store(p, std::memory_order_relaxed);
  }
  return p;
}

void set_default_precision(mpfr_prec_t bits) {
  if (bits <= 0) throw error("precision must be a positive bit count");
  g_default.store(HPReal::clamp(bits), std::memory_order_relaxed);
}

HPReal HPReal::from_string(const std::string& s, mpfr_prec_t prec) {
  HPReal r(prec);
  if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
    throw error("invalid numeric literal: '" + s + "'");
  return r;
}

std::string HPReal::str(int digits) const {
  if (digits <= 0) {
    // bits * log10(2), rounded up, plus slack for round-trip.
    digits = static_cast<int>(prec() * 0.30103) + 3;
  }
  char fmt[32];
  std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
  char* out = nullptr;
  if (mpfr_asprintf(&out, fmt, v_) < 0) throw error("mpfr formatting failed");
  std::string res(out);
  mpfr_free_str(out);
  return res;
}

HPComplex sqrt(const HPComplex& a) {
  mpfr_prec_t p = a.prec();
  if (a.imag().is_zero()) {
    if (a.real().sign() >= 0) return {sqrt(a.real()), HPReal(0.0, p)};
    return {HPReal(0.0, p), sqrt(-a.real())};
  }
  HPReal m = abs(a);
  HPReal u = sqrt(0.5 * (m + abs(a.real())));
  HPReal v = a.imag() / (2.0 * u);
  if (a.real().sign() >= 0) return {u, v};
  HPReal w = abs(v);
  HPReal x = a.imag() / (2.0 * w);  // carries the sign of Im(a), magnitude u
  return {w, x};
}

HPComplex parse_complex(const std::string& s, mpfr_prec_t prec) {
  std::string t;
  t.reserve(s.size());
  for (char ch : s)
    if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
  if (t.empty()) throw error("empty complex literal");

  auto comma = t.find(',');
  if (comma != std::string::npos)
    return HPComplex::from_strings(t.substr(0, comma), t.substr(comma + 1),
                                   prec);

  // Split "a+bi"/"a-bi" at the last +/- that is not an exponent sign and not
  // the leading sign.
  size_t split = std::string::npos;
  for (size_t i = t.size(); i-- > 1;) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  bool has_i = !t.empty() && (t.back() == 'i' || t.back() == 'I');
  if (split == std::string::npos) {
    if (has_i) {
      std::string im = t.substr(0, t.size() - 1);
      if (im.empty() || im == "+" || im == "-") im += "1";
      return HPComplex(HPReal(0.0, prec), HPReal::from_string(im, prec));
    }
    return HPComplex(HPReal::from_string(t, prec), HPReal(0.0, prec));
  }
  if (!has_i)
    throw error("invalid complex literal (expected trailing 'i'): '" + s +
                "'");
  std::string re = t.substr(0, split);
  std::string im = t.substr(split, t.size() - split - 1);
  if (im == "+" || im == "-") im += "1";
  return HPComplex::from_strings(re, im, prec);
}

}  // namespace decolab
