#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>

#include "decolab/bottcher.hpp"
#include "decolab/cloud.hpp"
#include "decolab/model.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace decolab;
using tu::cd;

namespace {

bool same_cloud(const PointCloud& a, const PointCloud& b) {
  return a.points == b.points && a.levels == b.levels;
}

ModelSpec small_spec() {
  ModelSpec s;
  s.c_prime = HPComplex(-0.10, 0.97);
  s.R = 220.0;
  s.m_max = 3;
  s.samples_per_level = 128;
  s.rng_seed = 1;
  return s;
}

}  // namespace

TEST_SUITE("cloud_model") {

TEST_CASE("cloud basics") {
  PointCloud c;
  CHECK(c.empty());
  c.append({0, 0});
  c.append({3, 0});
  c.append({0, 4});
  CHECK(c.size() == 3);
  CHECK(!c.has_levels());
  CHECK(std::abs(c.centroid() - cd(1.0, 4.0 / 3.0)) < 1e-15);
  CHECK(c.diameter() == doctest::Approx(5.0));
}

TEST_CASE("csv and binary round trips") {
  PointCloud c;
  c.append({0.125, -3.5}, 0);
  c.append({1e-17, 2.0}, 3);
  c.append({-0.3626684938191616, 0.6450238859863952}, 6);
  const char* csv = "rt_cloud.csv";
  const char* bin = "rt_cloud.bin";
  write_cloud_csv(c, csv);
  write_cloud_bin(c, bin);
  CHECK(same_cloud(read_cloud_csv(csv), c));
  CHECK(same_cloud(read_cloud_bin(bin), c));
  std::remove(csv);
  std::remove(bin);

  PointCloud plain;
  plain.append({1.5, 2.5});
  write_cloud_csv(plain, csv);
  PointCloud back = read_cloud_csv(csv);
  CHECK(!back.has_levels());
  CHECK(back.points == plain.points);
  std::remove(csv);
  CHECK_THROWS_AS(read_cloud_csv("does_not_exist.csv"), error);
}

TEST_CASE("unit circle Julia sample") {
  PointCloud j = sample_julia(HPComplex(0.0, 0.0), 512, 7);
  CHECK(j.size() == 512);
  for (cd p : j.points) CHECK(std::abs(std::abs(p) - 1.0) < 1e-10);
  CHECK(same_cloud(j, sample_julia(HPComplex(0.0, 0.0), 512, 7)));
  CHECK(!same_cloud(j, sample_julia(HPComplex(0.0, 0.0), 512, 8)));
  // dedup grid leaves no duplicates
  auto pts = j.points;
  std::sort(pts.begin(), pts.end(), [](cd a, cd b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  CHECK(std::adjacent_find(pts.begin(), pts.end()) == pts.end());
}

TEST_CASE("spec resolution") {
  ModelSpec s;
  s.c_prime = HPComplex(-0.10, 0.97);
  s.R = 16.0;
  s.resolve();
  CHECK(s.rho == doctest::Approx(4.0));
  CHECK(s.rho_prime == doctest::Approx(0.25));
  CHECK(s.scale_factor() == doctest::Approx(64.0));

  ModelSpec r;
  r.c_prime = s.c_prime;
  r.rho = 4.0;
  r.rho_prime = 0.25;
  r.resolve();
  CHECK(r.R == doctest::Approx(16.0));

  ModelSpec bad;
  bad.c_prime = s.c_prime;
  bad.rho = 0.25;
  bad.rho_prime = 4.0;
  CHECK_THROWS_AS(bad.resolve(), error);
}

TEST_CASE("gamma tower radii and provenance") {
  ModelSpec s = small_spec();
  s.resolve();
  PointCloud julia = sample_julia(s.c_prime, 64, 3);
  PointCloud g0 = rescale_gamma0(julia, s);
  REQUIRE(g0.size() == julia.size());
  double R = s.R;
  for (cd p : g0.points) {
    CHECK(std::abs(p) >= R * (1 - 1e-9));
    CHECK(std::abs(p) <= R * R * (1 + 1e-9));
  }
  CHECK(same_cloud(gamma_m(g0, 0), g0));

  PointCloud g2 = gamma_m(g0, 2);
  CHECK(g2.size() == 4 * g0.size());
  for (cd w : g2.points) {
    double r = std::abs(w);
    CHECK(r >= std::pow(R, 0.25) * (1 - 1e-9));
    CHECK(r <= std::pow(R, 0.5) * (1 + 1e-9));
    // w^(2^m) recovers a member of gamma_0
    cd back = w;
    for (int i = 0; i < 2; ++i) back *= back;
    double best = 1e9;
    for (cd q : g0.points) best = std::min(best, std::abs(back - q));
    CHECK(best < 1e-7);
  }

  PointCloud gs = gamma_m_sampled(g0, 2, 96, s.rng_seed);
  CHECK(gs.size() == 96);
  CHECK(same_cloud(gs, gamma_m_sampled(g0, 2, 96, s.rng_seed)));
  for (cd w : gs.points) {
    cd back = w;
    for (int i = 0; i < 2; ++i) back *= back;
    double best = 1e9;
    for (cd q : g0.points) best = std::min(best, std::abs(back - q));
    CHECK(best < 1e-7);
  }
}

TEST_CASE("decorated model of M") {
  ModelSpec s = small_spec();
  PointCloud m = build_model_M(s);
  REQUIRE(m.has_levels());
  REQUIRE(!m.empty());
  double logR = std::log(s.R);
  std::size_t in_band = 0, per_level[4] = {0, 0, 0, 0};
  for (std::size_t i = 0; i < m.size(); ++i) {
    int lev = m.levels[i];
    REQUIRE(lev >= 0);
    REQUIRE(lev <= 3);
    ++per_level[lev];
    double g = green_K(HPComplex(m.points[i]), HPComplex(m.points[i])).green;
    double lo = std::ldexp(logR, -lev), hi = 2 * lo;
    if (g > lo && g < hi) ++in_band;
  }
  for (int lev = 0; lev <= 3; ++lev) {
    CHECK(per_level[lev] > 0);
    CHECK(per_level[lev] <= s.samples_per_level);
  }
  CHECK(double(in_band) / double(m.size()) > 0.95);
  CHECK(same_cloud(m, build_model_M(s)));
}

TEST_CASE("decorated model of K and nested model") {
  ModelSpec s = small_spec();
  s.m_max = 2;
  s.samples_per_level = 64;
  PointCloud k = build_model_K(HPComplex(-1.0, 0.0), s);
  CHECK(!k.empty());
  CHECK(k.has_levels());

  PointCloud inner = sample_julia(HPComplex(0.3, 0.5), 64, 5);
  PointCloud nested = build_nested_model(s, inner);
  CHECK(!nested.empty());
}

TEST_CASE("equipotential sampling of the M boundary surrogate") {
  PointCloud eq = sample_M_equipotential(0.05, 64);
  REQUIRE(eq.size() == 64);
  for (cd p : eq.points) {
    double g = green_K(HPComplex(p), HPComplex(p)).green;
    CHECK(std::abs(g - 0.05) < 1e-8);
  }
}

}  // TEST_SUITE
