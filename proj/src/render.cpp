#include "decolab/render.hpp"

#include <mpfr.h>
#include <omp.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <cstring>

namespace decolab {

namespace {

using cd = std::complex<double>;

constexpr double kDeepWidth = 1e-6;

mpfr_rnd_t R = MPFR_RNDN;

// One pixel iterated entirely in mpfr. Used as the deep direct kernel and to
// resolve residual perturbation glitches exactly.
class HpPixelKernel {
 public:
  HpPixelKernel(const FrameSpec& f, mpfr_prec_t prec)
      : julia_(f.mode == RenderMode::Julia),
        distance_(f.coloring == Coloring::Distance),
        max_iter_(f.max_iter),
        r2_(f.escape_radius * f.escape_radius) {
    for (mpfr_ptr p : {zr_, zi_, cr_, ci_, dr_, di_, t0_, t1_, br_, bi_, jr_, ji_})
      mpfr_init2(p, prec);
    mpfr_set(br_, f.center.real().raw(), R);
    mpfr_set(bi_, f.center.imag().raw(), R);
    mpfr_set(jr_, f.julia_c.real().raw(), R);
    mpfr_set(ji_, f.julia_c.imag().raw(), R);
  }
  ~HpPixelKernel() {
    for (mpfr_ptr p : {zr_, zi_, cr_, ci_, dr_, di_, t0_, t1_, br_, bi_, jr_, ji_})
      mpfr_clear(p);
  }
  HpPixelKernel(const HpPixelKernel&) = delete;
  HpPixelKernel& operator=(const HpPixelKernel&) = delete;

  void run(double dx, double dy, std::uint32_t* iters, float* dist) {
    if (julia_) {
      mpfr_set(cr_, jr_, R);
      mpfr_set(ci_, ji_, R);
      mpfr_add_d(zr_, br_, dx, R);
      mpfr_add_d(zi_, bi_, dy, R);
      mpfr_set_ui(dr_, 1, R);
    } else {
      mpfr_add_d(cr_, br_, dx, R);
      mpfr_add_d(ci_, bi_, dy, R);
      mpfr_set_ui(zr_, 0, R);
      mpfr_set_ui(zi_, 0, R);
      mpfr_set_ui(dr_, 0, R);
    }
    mpfr_set_ui(di_, 0, R);

    std::uint32_t n = 0;
    for (;;) {
      mpfr_fmma(t0_, zr_, zr_, zi_, zi_, R);  // |z|^2
      if (mpfr_cmp_d(t0_, r2_) > 0) {
        *iters = n;
        *dist = distance_ ? escape_distance() : 0.0f;
        return;
      }
      if (n == max_iter_) {
        *iters = kInterior;
        *dist = -1.0f;
        return;
      }
      if (distance_) {
        mpfr_fmms(t0_, zr_, dr_, zi_, di_, R);
        mpfr_fmma(t1_, zr_, di_, zi_, dr_, R);
        mpfr_mul_2si(dr_, t0_, 1, R);
        if (!julia_) mpfr_add_ui(dr_, dr_, 1, R);
        mpfr_mul_2si(di_, t1_, 1, R);
      }
      mpfr_fmms(t0_, zr_, zr_, zi_, zi_, R);
      mpfr_add(t0_, t0_, cr_, R);
      mpfr_mul(t1_, zr_, zi_, R);
      mpfr_mul_2si(t1_, t1_, 1, R);
      mpfr_add(zi_, t1_, ci_, R);
      mpfr_swap(zr_, t0_);
      ++n;
    }
  }

 private:
  float escape_distance() {
    // d = |z| log|z| / |z'|, with t0_ holding |z|^2 on entry.
    mpfr_fmma(t1_, dr_, dr_, di_, di_, R);
    if (mpfr_zero_p(t1_)) return std::numeric_limits<float>::infinity();
    mpfr_div(t1_, t0_, t1_, R);
    mpfr_sqrt(t1_, t1_, R);
    mpfr_log(t0_, t0_, R);
    mpfr_mul(t1_, t1_, t0_, R);
    return static_cast<float>(0.5 * mpfr_get_d(t1_, R));
  }

  bool julia_, distance_;
  std::uint32_t max_iter_;
  double r2_;
  mpfr_t zr_, zi_, cr_, ci_, dr_, di_, t0_, t1_, br_, bi_, jr_, ji_;
};

void double_pixel(const FrameSpec& f, cd c, cd z, std::uint32_t* iters,
                  float* dist) {
  const bool julia = f.mode == RenderMode::Julia;
  const bool distance = f.coloring == Coloring::Distance;
  const double r2 = f.escape_radius * f.escape_radius;
  cd der = julia ? cd(1, 0) : cd(0, 0);
  std::uint32_t n = 0;
  for (;;) {
    double m2 = std::norm(z);
    if (m2 > r2) {
      *iters = n;
      if (distance) {
        double md = std::abs(der);
        *dist = md == 0 ? std::numeric_limits<float>::infinity()
                        : static_cast<float>(std::sqrt(m2) * 0.5 *
                                             std::log(m2) / md);
      } else {
        *dist = 0.0f;
      }
      return;
    }
    if (n == f.max_iter) {
      *iters = kInterior;
      *dist = -1.0f;
      return;
    }
    if (distance) der = 2.0 * z * der + (julia ? cd(0, 0) : cd(1, 0));
    z = z * z + c;
    ++n;
  }
}

Image make_image(const FrameSpec& f) {
  Image img(f.px_w, f.px_h);
  img.dist.assign(img.iters.size(), 0.0f);
  return img;
}

Image render_direct_double(const FrameSpec& f, bool parallel) {
  Image img = make_image(f);
  const cd c0 = f.center.to_std();
  const cd jc = f.julia_c.to_std();
  const bool julia = f.mode == RenderMode::Julia;
#pragma omp parallel for schedule(static) if (parallel)
  for (int y = 0; y < f.px_h; ++y) {
    for (int x = 0; x < f.px_w; ++x) {
      cd p = c0 + pixel_offset(f, x, y);
      std::size_t k = img.idx(x, y);
      double_pixel(f, julia ? jc : p, julia ? p : cd(0, 0), &img.iters[k],
                   &img.dist[k]);
    }
  }
  colorize(img, f);
  return img;
}

Image render_direct_hp(const FrameSpec& f, bool parallel) {
  Image img = make_image(f);
  const mpfr_prec_t prec = f.reference_precision();
#pragma omp parallel if (parallel)
  {
    HpPixelKernel kern(f, prec);
#pragma omp for schedule(static)
    for (int y = 0; y < f.px_h; ++y) {
      for (int x = 0; x < f.px_w; ++x) {
        cd off = pixel_offset(f, x, y);
        std::size_t k = img.idx(x, y);
        kern.run(off.real(), off.imag(), &img.iters[k], &img.dist[k]);
      }
    }
  }
  colorize(img, f);
  return img;
}

struct RefOrbit {
  std::vector<cd> z;  // rounded images of the high-precision orbit
};

// anchor_off is the pixel offset of the reference point from frame.center
// ((0,0) for the initial reference).
RefOrbit compute_reference(const FrameSpec& f, cd anchor_off,
                           mpfr_prec_t prec) {
  RefOrbit ref;
  ref.z.reserve(std::min<std::uint64_t>(f.max_iter + 1, 1u << 22));
  const bool julia = f.mode == RenderMode::Julia;
  const double stop2 = 16.0 * f.escape_radius * f.escape_radius;
  mpfr_t zr, zi, cr, ci, t0, t1;
  for (mpfr_ptr p : {zr, zi, cr, ci, t0, t1}) mpfr_init2(p, prec);
  if (julia) {
    mpfr_set(cr, f.julia_c.real().raw(), R);
    mpfr_set(ci, f.julia_c.imag().raw(), R);
    mpfr_add_d(zr, f.center.real().raw(), anchor_off.real(), R);
    mpfr_add_d(zi, f.center.imag().raw(), anchor_off.imag(), R);
  } else {
    mpfr_add_d(cr, f.center.real().raw(), anchor_off.real(), R);
    mpfr_add_d(ci, f.center.imag().raw(), anchor_off.imag(), R);
    mpfr_set_ui(zr, 0, R);
    mpfr_set_ui(zi, 0, R);
  }
  for (std::uint32_t n = 0;; ++n) {
    ref.z.emplace_back(mpfr_get_d(zr, R), mpfr_get_d(zi, R));
    if (n == f.max_iter) break;
    mpfr_fmma(t0, zr, zr, zi, zi, R);
    if (mpfr_cmp_d(t0, stop2) > 0) break;
    mpfr_fmms(t0, zr, zr, zi, zi, R);
    mpfr_add(t0, t0, cr, R);
    mpfr_mul(t1, zr, zi, R);
    mpfr_mul_2si(t1, t1, 1, R);
    mpfr_add(zi, t1, ci, R);
    mpfr_swap(zr, t0);
  }
  for (mpfr_ptr p : {zr, zi, cr, ci, t0, t1}) mpfr_clear(p);
  return ref;
}

// Returns true when the pixel resolved (escaped or interior), false on glitch.
bool perturb_pixel(const FrameSpec& f, const RefOrbit& ref, cd dc, cd d0,
                   std::uint32_t* iters, float* dist) {
  const bool julia = f.mode == RenderMode::Julia;
  const bool distance = f.coloring == Coloring::Distance;
  const double r2 = f.escape_radius * f.escape_radius;
  const std::size_t len = ref.z.size();
  cd delta = d0;
  cd der = julia ? cd(1, 0) : cd(0, 0);
  std::size_t n = 0;  // pixel iteration count
  std::size_t m = 0;  // reference orbit index
  for (;;) {
    cd zf = ref.z[m] + delta;
    double m2 = std::norm(zf);
    if (m2 > r2) {
      *iters = static_cast<std::uint32_t>(n);
      if (distance) {
        double md = std::abs(der);
        *dist = md == 0 ? std::numeric_limits<float>::infinity()
                        : static_cast<float>(std::sqrt(m2) * 0.5 *
                                             std::log(m2) / md);
      } else {
        *dist = 0.0f;
      }
      return true;
    }
    if (n == f.max_iter) {
      *iters = kInterior;
      *dist = -1.0f;
      return true;
    }
    if (!julia && (m2 < std::norm(delta) || m + 1 >= len)) {
      // Rebase onto the orbit start (z_ref = 0): the difference
      // representation stays exact and decorrelation stops mattering.
      delta = zf;
      m = 0;
    } else {
      // Cancellation glitch: the pixel value forms as a small difference of
      // large terms once |z| < |delta|/8 (reachable only by a one-step
      // collapse past the rebase guard, or in Julia mode).
      if (m2 * 64.0 < std::norm(delta)) return false;
      if (m + 1 >= len) return false;  // reference exhausted
    }
    if (distance) der = 2.0 * zf * der + (julia ? cd(0, 0) : cd(1, 0));
    delta = 2.0 * ref.z[m] * delta + delta * delta + dc;
    ++n;
    ++m;
  }
}

}  // namespace

std::complex<double> pixel_offset(const FrameSpec& frame, int x, int y) {
  double half = frame.pitch() * 0.5;
  // Integer multiples of half-pitch: negating the row index negates dy
  // exactly, so conjugation-symmetric frames come out pixel-exact.
  double dx = (2.0 * x + 1.0 - frame.px_w) * half;
  double dy = (frame.px_h - 1.0 - 2.0 * y) * half;
  return {dx, dy};
}

mpfr_prec_t FrameSpec::reference_precision() const {
  if (const char* env = std::getenv("DECOLAB_PRECISION_BITS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= MPFR_PREC_MIN) return static_cast<mpfr_prec_t>(v);
  }
  double w = std::max(width, 1e-290);
  long bits = 64;
  if (w < 4.0) bits += static_cast<long>(std::ceil(std::log2(4.0 / w)));
  return static_cast<mpfr_prec_t>(bits);
}

Image render_direct(const FrameSpec& frame, bool parallel) {
  if (frame.px_w <= 0 || frame.px_h <= 0 || frame.width <= 0)
    throw error("bad frame geometry");
  return frame.width < kDeepWidth ? render_direct_hp(frame, parallel)
                                  : render_direct_double(frame, parallel);
}

Image render_deep(const FrameSpec& frame) {
  if (frame.px_w <= 0 || frame.px_h <= 0 || frame.width <= 0)
    throw error("bad frame geometry");
  Image img = make_image(frame);
  const mpfr_prec_t prec = frame.reference_precision();
  const std::size_t total = img.iters.size();

  std::vector<std::uint32_t> todo(total);
  for (std::size_t i = 0; i < total; ++i) todo[i] = static_cast<std::uint32_t>(i);
  cd ref_off(0, 0);
  RefOrbit ref = compute_reference(frame, ref_off, prec);

  for (int round = 0;; ++round) {
    std::vector<std::uint8_t> glitched(todo.size(), 0);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::size_t t = 0; t < todo.size(); ++t) {
      std::uint32_t k = todo[t];
      int x = static_cast<int>(k % frame.px_w);
      int y = static_cast<int>(k / frame.px_w);
      cd off = pixel_offset(frame, x, y);
      cd rel = off - ref_off;
      cd dc = frame.mode == RenderMode::Julia ? cd(0, 0) : rel;
      cd d0 = frame.mode == RenderMode::Julia ? rel : cd(0, 0);
      if (!perturb_pixel(frame, ref, dc, d0, &img.iters[k], &img.dist[k]))
        glitched[t] = 1;
    }
    std::vector<std::uint32_t> next;
    for (std::size_t t = 0; t < todo.size(); ++t)
      if (glitched[t]) next.push_back(todo[t]);
    todo.swap(next);
    if (todo.empty() || round == 3) break;

    // Re-reference from the glitched pixel nearest the glitched centroid.
    double sx = 0, sy = 0;
    for (std::uint32_t k : todo) {
      sx += k % frame.px_w;
      sy += k / frame.px_w;
    }
    sx /= todo.size();
    sy /= todo.size();
    std::uint32_t pick = todo[0];
    double best = 1e300;
    for (std::uint32_t k : todo) {
      double ddx = k % frame.px_w - sx, ddy = k / frame.px_w - sy;
      double d2 = ddx * ddx + ddy * ddy;
      if (d2 < best) {
        best = d2;
        pick = k;
      }
    }
    ref_off = pixel_offset(frame, static_cast<int>(pick % frame.px_w),
                           static_cast<int>(pick / frame.px_w));
    ref = compute_reference(frame, ref_off, prec);
  }

  if (!todo.empty()) {
    if (todo.size() * 20 > total)
      throw error("re-reference failed; raise precision");
#pragma omp parallel
    {
      HpPixelKernel kern(frame, prec);
#pragma omp for schedule(dynamic, 4)
      for (std::size_t t = 0; t < todo.size(); ++t) {
        std::uint32_t k = todo[t];
        cd off = pixel_offset(frame, static_cast<int>(k % frame.px_w),
                              static_cast<int>(k / frame.px_w));
        kern.run(off.real(), off.imag(), &img.iters[k], &img.dist[k]);
      }
    }
  }
  colorize(img, frame);
  return img;
}

Image render(const FrameSpec& frame) {
  return frame.width < kDeepWidth ? render_deep(frame)
                                  : render_direct(frame, true);
}

std::vector<double> schedule_widths(const ZoomSchedule& s) {
  if (s.frames < 1 || s.width_start <= 0 || s.width_end <= 0)
    throw error("bad zoom schedule");
  std::vector<double> w(s.frames);
  if (s.frames == 1) {
    w[0] = s.width_start;
    return w;
  }
  double ratio = std::log(s.width_end / s.width_start) / (s.frames - 1);
  for (int i = 0; i < s.frames; ++i) w[i] = s.width_start * std::exp(ratio * i);
  w.back() = s.width_end;
  return w;
}

std::vector<Image> zoom_sequence(const ZoomSchedule& schedule,
                                 const FrameSpec& base) {
  std::vector<Image> frames;
  for (double w : schedule_widths(schedule)) {
    FrameSpec f = base;
    f.center = schedule.center;
    f.width = w;
    frames.push_back(render(f));
  }
  return frames;
}

std::size_t overlay(Image& img, const PointCloud& cloud,
                    const FrameSpec& frame) {
  cd c0 = frame.center.to_std();
  double pitch = frame.pitch();
  std::size_t outside = 0;
  for (const auto& p : cloud.points) {
    double fx = (p.real() - c0.real()) / pitch + 0.5 * (frame.px_w - 1);
    double fy = 0.5 * (frame.px_h - 1) - (p.imag() - c0.imag()) / pitch;
    long x = std::lround(fx), y = std::lround(fy);
    if (x < 0 || x >= frame.px_w || y < 0 || y >= frame.px_h) {
      ++outside;
      continue;
    }
    std::size_t k = img.idx(static_cast<int>(x), static_cast<int>(y)) * 3;
    img.rgb[k] = 255;
    img.rgb[k + 1] = 0;
    img.rgb[k + 2] = 0;
  }
  return outside;
}

void colorize(Image& img, const FrameSpec& frame) {
  const double pitch = frame.pitch();
  for (std::size_t k = 0; k < img.iters.size(); ++k) {
    std::uint8_t* px = &img.rgb[k * 3];
    if (img.iters[k] == kInterior) {
      std::uint8_t v = frame.coloring == Coloring::Distance ? 255 : 0;
      px[0] = px[1] = px[2] = v;
      continue;
    }
    switch (frame.coloring) {
      case Coloring::Binary:
        px[0] = px[1] = px[2] = 255;
        break;
      case Coloring::Distance: {
        double d = img.dist[k];
        if (!std::isfinite(d) || d < 0) d = frame.width;
        double s = std::tanh(0.25 * d / pitch);
        std::uint8_t v = static_cast<std::uint8_t>(
            std::clamp(255.0 * s, 0.0, 255.0));
        px[0] = px[1] = px[2] = v;
        break;
      }
      case Coloring::Escape: {
        double u = 0.0157 * img.iters[k];
        px[0] = static_cast<std::uint8_t>(128.0 + 127.0 * std::sin(u));
        px[1] = static_cast<std::uint8_t>(128.0 + 127.0 * std::sin(u + 2.094));
        px[2] = static_cast<std::uint8_t>(128.0 + 127.0 * std::sin(u + 4.188));
        break;
      }
    }
  }
}

}  // namespace decolab
