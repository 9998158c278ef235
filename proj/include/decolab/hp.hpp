#pragma once
// Arbitrary-precision real/complex values on top of MPFR.
// Every value carries its own precision; binary operations produce results at
// the max precision of the operands, so precision never silently degrades.

#include <mpfr.h>

#include <complex>
#include <stdexcept>
#include <string>
#include <utility>

namespace decolab {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Process-wide default precision in bits. Initialised once from
// DECOLAB_PRECISION_BITS (if set and valid), otherwise 256. Read-only after
// startup except through set_default_precision, which callers use before
// spawning work.
mpfr_prec_t default_precision();
void set_default_precision(mpfr_prec_t bits);

class HPReal {
 public:
  HPReal() : HPReal(default_precision()) {}
  explicit HPReal(mpfr_prec_t prec) {
    mpfr_init2(v_, clamp(prec));
    mpfr_set_zero(v_, 1);
  }
  HPReal(double d, mpfr_prec_t prec) {
    mpfr_init2(v_, clamp(prec));
    mpfr_set_d(v_, d, MPFR_RNDN);
  }
  // Intentionally implicit so doubles mix into expressions at default prec.
  HPReal(double d) : HPReal(d, default_precision()) {}
  HPReal(int i) : HPReal(static_cast<double>(i), default_precision()) {}

  HPReal(const HPReal& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  HPReal(HPReal&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  HPReal& operator=(const HPReal& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  HPReal& operator=(HPReal&& o) noexcept {
    if (this != &o) mpfr_swap(v_, o.v_);
    return *this;
  }
  ~HPReal() { mpfr_clear(v_); }

  // Parses a decimal literal at the given precision (correctly rounded), so
  // frozen constants in tests and configs survive beyond double accuracy.
  static HPReal from_string(const std::string& s,
                            mpfr_prec_t prec = default_precision());

  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  HPReal at_prec(mpfr_prec_t p) const {
    HPReal r(p);
    mpfr_set(r.v_, v_, MPFR_RNDN);
    return r;
  }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // digits == 0 selects enough digits to round-trip the full precision.
  std::string str(int digits = 0) const;

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  friend HPReal operator+(const HPReal& a, const HPReal& b) {
    HPReal r(maxp(a, b));
    mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal operator-(const HPReal& a, const HPReal& b) {
    HPReal r(maxp(a, b));
    mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal operator*(const HPReal& a, const HPReal& b) {
    HPReal r(maxp(a, b));
    mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal operator/(const HPReal& a, const HPReal& b) {
    HPReal r(maxp(a, b));
    mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  HPReal operator-() const {
    HPReal r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }
  HPReal& operator+=(const HPReal& o) { return *this = *this + o; }
  HPReal& operator-=(const HPReal& o) { return *this = *this - o; }
  HPReal& operator*=(const HPReal& o) { return *this = *this * o; }
  HPReal& operator/=(const HPReal& o) { return *this = *this / o; }

  friend bool operator<(const HPReal& a, const HPReal& b) {
    return mpfr_less_p(a.v_, b.v_) != 0;
  }
  friend bool operator>(const HPReal& a, const HPReal& b) { return b < a; }
  friend bool operator<=(const HPReal& a, const HPReal& b) {
    return mpfr_lessequal_p(a.v_, b.v_) != 0;
  }
  friend bool operator>=(const HPReal& a, const HPReal& b) { return b <= a; }
  friend bool operator==(const HPReal& a, const HPReal& b) {
    return mpfr_equal_p(a.v_, b.v_) != 0;
  }
  friend bool operator!=(const HPReal& a, const HPReal& b) {
    return !(a == b);
  }

  friend HPReal abs(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_abs(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal sqrt(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal log(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_log(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal log1p(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_log1p(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal exp(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_exp(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal hypot(const HPReal& a, const HPReal& b) {
    HPReal r(maxp(a, b));
    mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal atan2(const HPReal& y, const HPReal& x) {
    HPReal r(maxp(y, x));
    mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal cos(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_cos(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal sin(const HPReal& a) {
    HPReal r(a.prec());
    mpfr_sin(r.v_, a.v_, MPFR_RNDN);
    return r;
  }
  friend HPReal pow(const HPReal& a, const HPReal& b) {
    HPReal r(maxp(a, b));
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  static HPReal pi(mpfr_prec_t prec = default_precision()) {
    HPReal r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }
  // 2^e as an exact value.
  static HPReal pow2(long e, mpfr_prec_t prec = default_precision()) {
    HPReal r(prec);
    mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
    return r;
  }

  static mpfr_prec_t clamp(mpfr_prec_t p) {
    return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p;
  }

 private:
  static mpfr_prec_t maxp(const HPReal& a, const HPReal& b) {
    return std::max(mpfr_get_prec(a.v_), mpfr_get_prec(b.v_));
  }
  mpfr_t v_;
};

class HPComplex {
 public:
  HPComplex() = default;
  explicit HPComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}
  HPComplex(HPReal re, HPReal im) : re_(std::move(re)), im_(std::move(im)) {}
  HPComplex(double re, double im, mpfr_prec_t prec = default_precision())
      : re_(re, prec), im_(im, prec) {}
  HPComplex(std::complex<double> z, mpfr_prec_t prec = default_precision())
      : re_(z.real(), prec), im_(z.imag(), prec) {}

  static HPComplex from_strings(const std::string& re, const std::string& im,
                                mpfr_prec_t prec = default_precision()) {
    return HPComplex(HPReal::from_string(re, prec),
                     HPReal::from_string(im, prec));
  }

  const HPReal& real() const { return re_; }
  const HPReal& imag() const { return im_; }
  HPReal& real() { return re_; }
  HPReal& imag() { return im_; }
  mpfr_prec_t prec() const { return std::max(re_.prec(), im_.prec()); }
  HPComplex at_prec(mpfr_prec_t p) const {
    return {re_.at_prec(p), im_.at_prec(p)};
  }
  std::complex<double> to_std() const {
    return {re_.to_double(), im_.to_double()};
  }
  bool is_finite() const { return re_.is_finite() && im_.is_finite(); }
  std::string str(int digits = 0) const {
    return re_.str(digits) + (im_.sign() < 0 ? "" : "+") + im_.str(digits) +
           "i";
  }

  friend HPComplex operator+(const HPComplex& a, const HPComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend HPComplex operator-(const HPComplex& a, const HPComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend HPComplex operator*(const HPComplex& a, const HPComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend HPComplex operator*(const HPReal& s, const HPComplex& a) {
    return {s * a.re_, s * a.im_};
  }
  friend HPComplex operator/(const HPComplex& a, const HPComplex& b) {
    HPReal n = b.norm2();
    return {(a.re_ * b.re_ + a.im_ * b.im_) / n,
            (a.im_ * b.re_ - a.re_ * b.im_) / n};
  }
  HPComplex operator-() const { return {-re_, -im_}; }
  HPComplex& operator+=(const HPComplex& o) { return *this = *this + o; }
  HPComplex& operator-=(const HPComplex& o) { return *this = *this - o; }
  HPComplex& operator*=(const HPComplex& o) { return *this = *this * o; }
  HPComplex& operator/=(const HPComplex& o) { return *this = *this / o; }
  friend bool operator==(const HPComplex& a, const HPComplex& b) {
    return a.re_ == b.re_ && a.im_ == b.im_;
  }

  HPComplex sqr() const { return {re_ * re_ - im_ * im_, 2.0 * (re_ * im_)}; }
  HPReal norm2() const { return re_ * re_ + im_ * im_; }
  friend HPReal abs(const HPComplex& a) { return hypot(a.re_, a.im_); }
  friend HPReal arg(const HPComplex& a) { return atan2(a.im_, a.re_); }
  friend HPComplex conj(const HPComplex& a) { return {a.re_, -a.im_}; }

  // Principal branch: real part >= 0, with Im(sqrt) matching sign(Im) on the
  // branch cut.
  friend HPComplex sqrt(const HPComplex& a);
  // exp(i t).
  static HPComplex cis(const HPReal& t) { return {cos(t), sin(t)}; }
  // Principal log (arg in (-pi, pi]).
  friend HPComplex log(const HPComplex& a) { return {log(abs(a)), arg(a)}; }
  friend HPComplex exp(const HPComplex& a) {
    return exp(a.re_) * HPComplex::cis(a.im_);
  }

 private:
  HPReal re_, im_;
};

// Parses "a+bi", "a-bi", "a", "bi", or "a,b" decimal forms at full precision.
HPComplex parse_complex(const std::string& s,
                        mpfr_prec_t prec = default_precision());

}  // namespace decolab
