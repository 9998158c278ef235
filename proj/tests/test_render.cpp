#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>

#include "decolab/render.hpp"
#include "decolab/verify.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace decolab;
using tu::cd;

namespace {

FrameSpec wide_frame() {
  FrameSpec f;
  f.center = HPComplex(-0.5, 0.0);
  f.width = 3.0;
  f.px_w = 96;
  f.px_h = 64;
  f.max_iter = 512;
  return f;
}

std::size_t mismatches_over_1(const Image& a, const Image& b) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.iters.size(); ++i) {
    std::uint32_t x = a.iters[i], y = b.iters[i];
    if (x == kInterior || y == kInterior) {
      n += x != y;
    } else {
      n += (x > y ? x - y : y - x) > 1;
    }
  }
  return n;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("pixel grid geometry") {
  FrameSpec f = wide_frame();
  CHECK(f.pitch() == doctest::Approx(3.0 / 96));
  // offsets are point-symmetric through the frame center, exactly in doubles
  for (int y : {0, 13, 31}) {
    for (int x : {0, 40, 95}) {
      cd a = pixel_offset(f, x, y);
      cd b = pixel_offset(f, f.px_w - 1 - x, f.px_h - 1 - y);
      CHECK(std::abs(a + b) == 0.0);
      CHECK(std::abs(std::conj(a) - pixel_offset(f, x, f.px_h - 1 - y)) == 0.0);
    }
  }
}

TEST_CASE("reference precision scales with depth") {
  unsetenv("DECOLAB_PRECISION_BITS");
  FrameSpec f = wide_frame();
  f.width = 1e-8;
  CHECK(f.reference_precision() >= 92);
  f.width = 4.0;
  CHECK(f.reference_precision() >= 64);
  setenv("DECOLAB_PRECISION_BITS", "333", 1);
  CHECK(f.reference_precision() == 333);
  unsetenv("DECOLAB_PRECISION_BITS");
}

TEST_CASE("serial and parallel kernels are identical") {
  FrameSpec f = wide_frame();
  Image a = render_direct(f, false);
  Image b = render_direct(f, true);
  CHECK(a.iters == b.iters);
  f.coloring = Coloring::Distance;
  Image c = render_direct(f, false);
  Image d = render_direct(f, true);
  CHECK(c.iters == d.iters);
  CHECK(c.dist == d.dist);
}

TEST_CASE("real-axis mirror symmetry") {
  FrameSpec f = wide_frame();
  Image img = render_direct(f);
  for (int y = 0; y < f.px_h / 2; ++y)
    for (int x = 0; x < f.px_w; ++x)
      CHECK(img.iters[img.idx(x, y)] == img.iters[img.idx(x, f.px_h - 1 - y)]);
}

TEST_CASE("julia frame has central symmetry") {
  FrameSpec f;
  f.center = HPComplex(0.0, 0.0);
  f.width = 3.5;
  f.px_w = f.px_h = 64;
  f.max_iter = 300;
  f.mode = RenderMode::Julia;
  f.julia_c = HPComplex(-1.0, 0.0);
  Image img = render_direct(f);
  for (int y = 0; y < f.px_h; ++y)
    for (int x = 0; x < f.px_w; ++x)
      CHECK(img.iters[img.idx(x, y)] ==
            img.iters[img.idx(f.px_w - 1 - x, f.px_h - 1 - y)]);
}

TEST_CASE("interior frame saturates the budget") {
  FrameSpec f;
  f.center = HPComplex(0.0, 0.0);
  f.width = 0.5;
  f.px_w = f.px_h = 16;
  f.max_iter = 256;
  Image img = render_direct(f);
  for (auto v : img.iters) CHECK(v == kInterior);
}

TEST_CASE("deep kernel agrees with the high-precision oracle") {
  FrameSpec f;
  f.center = parse_complex("0.3626684938191616+0.6450238859863952i");
  f.width = 2e-7;
  f.px_w = f.px_h = 48;
  f.max_iter = 5000;
  Image pert = render_deep(f);
  Image direct = render_direct(f);  // dispatches to the arbitrary-precision kernel
  std::size_t bad = mismatches_over_1(pert, direct);
  CHECK(double(bad) / double(pert.iters.size()) < 0.01);
  // dispatching render() picks the perturbation path below 1e-6
  Image auto_img = render(f);
  CHECK(auto_img.iters == pert.iters);
}

TEST_CASE("iteration dump round trip") {
  FrameSpec f = wide_frame();
  f.px_w = f.px_h = 24;
  Image img = render_direct(f);
  const char* path = "rt_dump.iter";
  write_iter_dump(img, path);
  CHECK(read_iter_dump(path) == img.iters);
  std::remove(path);
}

TEST_CASE("colorize fills rgb per mode") {
  FrameSpec f = wide_frame();
  f.px_w = f.px_h = 32;
  for (Coloring c : {Coloring::Escape, Coloring::Distance, Coloring::Binary}) {
    f.coloring = c;
    Image img = render_direct(f);
    colorize(img, f);
    REQUIRE(img.rgb.size() == std::size_t(3) * 32 * 32);
    bool any = false;
    for (auto v : img.rgb) any |= v != 0;
    CHECK(any);
  }
}

TEST_CASE("overlay marks in-frame points") {
  FrameSpec f = wide_frame();
  f.px_w = f.px_h = 32;
  Image img = render_direct(f);
  colorize(img, f);
  PointCloud cloud;
  cloud.append(f.center.to_std());
  cloud.append({40.0, 40.0});
  CHECK(overlay(img, cloud, f) == 1);
  std::size_t c = img.idx(16, 16);
  CHECK(img.rgb[3 * c + 0] == 255);
  CHECK(img.rgb[3 * c + 1] == 0);
}

TEST_CASE("zoom schedules are geometric") {
  ZoomSchedule s;
  s.center = HPComplex(0.0, 0.0);
  s.width_start = std::pow(10.0, -1.5);
  s.width_end = std::pow(10.0, -11.9);
  s.frames = 15;
  auto w = schedule_widths(s);
  REQUIRE(w.size() == 15);
  CHECK(w.front() == doctest::Approx(s.width_start).epsilon(1e-12));
  CHECK(w.back() == doctest::Approx(s.width_end).epsilon(1e-12));
  double r = w[1] / w[0];
  for (std::size_t i = 1; i + 1 < w.size(); ++i)
    CHECK(w[i + 1] / w[i] == doctest::Approx(r).epsilon(1e-9));

  ZoomSchedule tiny;
  tiny.center = HPComplex(-0.5, 0.0);
  tiny.width_start = 4.0;
  tiny.width_end = 1.0;
  tiny.frames = 3;
  FrameSpec base = wide_frame();
  base.px_w = base.px_h = 24;
  auto seq = zoom_sequence(tiny, base);
  REQUIRE(seq.size() == 3);
  for (const Image& img : seq) {
    CHECK(img.w == 24);
    CHECK(img.h == 24);
  }
}

}  // TEST_SUITE
