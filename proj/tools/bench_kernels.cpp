// Serial vs OpenMP kernel comparison: the serial flavor is the reference
// implementation; this target reports timings and asserts identical output.

#include <chrono>
#include <cstdio>
#include <cstring>

#include "decolab/render.hpp"

using namespace decolab;

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int compare(const char* name, const FrameSpec& f) {
  auto t0 = std::chrono::steady_clock::now();
  Image serial = render_direct(f, false);
  double t_serial = ms_since(t0);
  t0 = std::chrono::steady_clock::now();
  Image parallel = render_direct(f, true);
  double t_parallel = ms_since(t0);
  bool same = serial.iters == parallel.iters &&
              std::memcmp(serial.dist.data(), parallel.dist.data(),
                          serial.dist.size() * sizeof(float)) == 0;
  std::printf("%-24s serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
              name, t_serial, t_parallel, t_serial / t_parallel,
              same ? "identical" : "MISMATCH");
  return same ? 0 : 1;
}

}  // namespace

int main() {
  int rc = 0;

  FrameSpec wide;
  wide.center = parse_complex("-0.75,0");
  wide.width = 3.0;
  wide.px_w = wide.px_h = 512;
  wide.max_iter = 2000;
  wide.coloring = Coloring::Distance;
  rc |= compare("direct double 512^2", wide);

  FrameSpec deep = wide;
  deep.center = parse_complex("0.3626684938191616+0.6450238859863952i");
  deep.width = 1e-7;
  deep.px_w = deep.px_h = 128;
  deep.max_iter = 20000;
  rc |= compare("direct mpfr 128^2", deep);

  auto t0 = std::chrono::steady_clock::now();
  Image pert = render_deep(deep);
  std::printf("%-24s          %8.1f ms (one reference orbit)\n",
              "perturbation 128^2", ms_since(t0));
  (void)pert;

  return rc;
}
