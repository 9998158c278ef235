#pragma once
// Escape-time / distance-estimator rendering of M and K_c with three kernels:
// a machine-double direct kernel, an arbitrary-precision direct kernel (the
// deep oracle), and a perturbation kernel iterating per-pixel deltas against
// a shared high-precision reference orbit.

#include <cstdint>
#include <vector>

#include "decolab/cloud.hpp"
#include "decolab/hp.hpp"
#include "decolab/image.hpp"

namespace decolab {

enum class RenderMode { Mandelbrot, Julia };
enum class Coloring { Escape, Distance, Binary };

struct FrameSpec {
  HPComplex center;
  double width = 4.0;
  int px_w = 512, px_h = 512;
  std::uint32_t max_iter = 1000;
  RenderMode mode = RenderMode::Mandelbrot;
  HPComplex julia_c;  // used in Julia mode
  Coloring coloring = Coloring::Escape;
  double escape_radius = 1e6;

  double pitch() const { return width / px_w; }
  // Reference-orbit precision: 64 + ceil(log2(4/width)) bits, overridden
  // entirely by DECOLAB_PRECISION_BITS when set.
  mpfr_prec_t reference_precision() const;
};

struct ZoomSchedule {
  HPComplex center;
  double width_start = 4.0;
  double width_end = 1e-3;
  int frames = 2;
};

// Direct per-pixel iteration; switches from machine doubles to the
// arbitrary-precision kernel below the deep-width threshold (1e-6). The
// serial flavor exists as the reference implementation for the parallel one.
Image render_direct(const FrameSpec& frame, bool parallel = true);

// Perturbation rendering: one reference orbit at frame precision, per-pixel
// double deltas rebased onto the orbit start whenever the full value drops
// below the delta (so decorrelation never accumulates), glitch detection on
// one-step cancellation |z| < |delta|/8, up to 3 re-references, residual
// glitches resolved by exact per-pixel high-precision iteration. Throws
// "re-reference failed; raise precision" when >5% of pixels are still
// glitched after the re-reference rounds.
Image render_deep(const FrameSpec& frame);

// Width-dispatched render: perturbation below 1e-6, direct otherwise.
Image render(const FrameSpec& frame);

std::vector<Image> zoom_sequence(const ZoomSchedule& schedule,
                                 const FrameSpec& base);

// Widths of the schedule (geometric interpolation), exposed for callers that
// stream frames to disk instead of holding them all.
std::vector<double> schedule_widths(const ZoomSchedule& schedule);

// Marks cloud points falling inside the frame in red; returns the number of
// points outside the frame.
std::size_t overlay(Image& img, const PointCloud& cloud,
                    const FrameSpec& frame);

// Fills img.rgb from iteration/distance data per frame.coloring.
void colorize(Image& img, const FrameSpec& frame);

// Plane coordinates of a pixel center (exact double offsets off the frame
// center; used by renderers, overlay and boundary extraction alike).
std::complex<double> pixel_offset(const FrameSpec& frame, int x, int y);

}  // namespace decolab
