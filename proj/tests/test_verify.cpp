#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <random>

#include "decolab/model.hpp"
#include "decolab/verify.hpp"
#include "doctest.h"
#include "json.hpp"
#include "testutil.hpp"

using namespace decolab;
using tu::cd;

namespace {

PointCloud random_cloud(std::size_t n, std::uint64_t seed, cd shift = {}) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PointCloud c;
  for (std::size_t i = 0; i < n; ++i) c.append(cd(u(rng), u(rng)) + shift);
  return c;
}

PointCloud mapped(const PointCloud& in, cd a, cd b) {
  PointCloud out;
  for (cd p : in.points) out.append(a * p + b);
  return out;
}

}  // namespace

TEST_SUITE("verify") {

TEST_CASE("hausdorff examples") {
  PointCloud a, b;
  a.append({0, 0});
  b.append({3, 0});
  b.append({0, 4});
  CHECK(hausdorff(a, b) == doctest::Approx(4.0));
  CHECK(hausdorff_directed(a, b) == doctest::Approx(3.0));
  CHECK(hausdorff_directed(b, a) == doctest::Approx(4.0));
  CHECK(hausdorff(a, a) == 0.0);
  PointCloud e;
  CHECK_THROWS_AS(hausdorff(a, e), error);
  CHECK_THROWS_AS(hausdorff_directed(e, a), error);
}

TEST_CASE("hausdorff is a metric on clouds") {
  PointCloud A = random_cloud(60, 1), B = random_cloud(50, 2, {0.3, 0.1}),
             C = random_cloud(70, 3, {-0.2, 0.4});
  CHECK(hausdorff(A, B) == doctest::Approx(hausdorff(B, A)));
  CHECK(hausdorff(A, C) <= hausdorff(A, B) + hausdorff(B, C) + 1e-12);
  CHECK(hausdorff_directed(A, B) <= hausdorff(A, B) + 1e-12);
}

TEST_CASE("alignment recovers an exact affine map") {
  PointCloud model = random_cloud(200, 11);
  for (cd a : {cd(0, 2), cd(-1, 0.5), cd(0.001, 0.0005)}) {
    PointCloud target = mapped(model, a, {5, -1});
    AlignResult r = align_similarity(model, target);
    CHECK(r.residual < 1e-9);
    CHECK(r.rms < 1e-9);
    CHECK(std::abs(r.map.a - a) < 1e-9 * std::abs(a));
    CHECK(std::abs(r.map.b - cd(5, -1)) < 1e-8 * std::abs(a));
    AffineMap inv = r.map.inverse();
    CHECK(std::abs(inv(r.map(cd(0.3, 0.7))) - cd(0.3, 0.7)) < 1e-12);
  }
}

TEST_CASE("alignment residual is invariant under common affine motion") {
  PointCloud model = random_cloud(150, 21);
  PointCloud target = mapped(model, {1.1, 0.2}, {0.4, 0.0});
  // roughen the correspondence so the residual is nontrivial
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-5e-3, 5e-3);
  for (auto& p : target.points) p += cd(u(rng), u(rng));
  double r0 = align_similarity(model, target).residual;
  cd g(0.7, -0.4), h(2.0, 1.0);
  double r1 = align_similarity(mapped(model, g, h), mapped(target, g, h)).residual;
  CHECK(std::abs(r0 - r1) < 1e-9);
  CHECK(r0 < 0.02);
  CHECK(r0 > 0.0);
}

TEST_CASE("classify_decoration_level round trip") {
  ModelSpec s;
  s.c_prime = HPComplex(-0.10, 0.97);
  s.R = 220.0;
  s.m_max = 2;
  s.samples_per_level = 64;
  s.rng_seed = 1;
  PointCloud m = build_model_M(s);
  REQUIRE(m.has_levels());
  AffineMap w{{2e-3, 1e-3}, {0.36, 0.64}};
  for (std::size_t i = 0; i < m.size(); i += 7) {
    auto lev = classify_decoration_level(w(m.points[i]), w, m);
    REQUIRE(lev.has_value());
    CHECK(*lev == m.levels[i]);
  }
  CHECK(!classify_decoration_level(w(cd(500, 500)), w, m).has_value());
}

TEST_CASE("semihyperbolic classifications") {
  VerificationReport two = semihyperbolic_test(HPComplex(-2.0, 0.0), 10000, 0.5);
  CHECK(two.classification == "heuristically semihyperbolic");
  CHECK(two.metrics.at("critical_min_distance") == doctest::Approx(2.0));
  CHECK(two.passed);

  CHECK(semihyperbolic_test(HPComplex(0.0, 0.0), 2000, 0.0).classification ==
        "superattracting-like");
  CHECK(semihyperbolic_test(HPComplex(-1.0, 0.0), 2000, 0.0).classification ==
        "superattracting-like");

  // chaotic real orbit re-enters the delta disk at irregular times
  VerificationReport chaotic = semihyperbolic_test(HPComplex(-1.9, 0.0), 4000, 0.3);
  CHECK(chaotic.classification == "recurrent-suspect");
  CHECK(!chaotic.passed);
}

TEST_CASE("semihyperbolic determinism and monotonicity") {
  HPComplex c(0.0, 1.0);
  VerificationReport a = semihyperbolic_test(c, 5000, 1e-3, 100);
  VerificationReport b = semihyperbolic_test(c, 5000, 1e-3, 100);
  CHECK(a.metrics == b.metrics);
  CHECK(a.classification == b.classification);
  CHECK(a.metrics.at("critical_min_distance") == doctest::Approx(1.0));
  // longer horizons can only lower the reported minimum
  HPComplex ch(-1.77, 0.0);
  double m1 = semihyperbolic_test(ch, 2000, 1e-3, 100).metrics.at("critical_min_distance");
  double m2 = semihyperbolic_test(ch, 9000, 1e-3, 100).metrics.at("critical_min_distance");
  CHECK(m2 <= m1);
}

TEST_CASE("report thresholds and serialization") {
  VerificationReport r;
  r.test_name = "demo";
  r.metrics["x"] = 0.5;
  r.thresholds["max:x"] = 1.0;
  r.evaluate();
  CHECK(r.passed);
  r.thresholds["min:x"] = 0.6;
  r.evaluate();
  CHECK(!r.passed);

  r.artifacts = {"a.csv"};
  nlohmann::json j = nlohmann::json::parse(r.to_json());
  CHECK(j.at("test") == "demo");
  CHECK(j.at("metrics").at("x") == 0.5);
  CHECK(j.at("thresholds").contains("max:x"));
  CHECK(j.at("passed") == false);
  CHECK(j.at("artifacts").size() == 1);

  const char* path = "rt_report.json";
  r.write_json(path);
  std::ifstream in(path);
  CHECK(in.good());
  in.close();
  std::remove(path);
}

TEST_CASE("boundary extraction") {
  FrameSpec f;
  f.center = HPComplex(-0.5, 0.0);
  f.width = 3.0;
  f.px_w = f.px_h = 128;
  f.max_iter = 512;
  PointCloud b = extract_boundary(f);
  REQUIRE(!b.empty());
  for (cd p : b.points) {
    CHECK(std::abs(p.real() + 0.5) <= 1.5 + 1e-12);
    CHECK(std::abs(p.imag()) <= 1.5 + 1e-12);
  }
  // clean interior and clean exterior frames have no boundary
  FrameSpec inside = f;
  inside.center = HPComplex(-0.1, 0.0);
  inside.width = 0.02;
  inside.px_w = inside.px_h = 32;
  CHECK_THROWS_WITH_AS(extract_boundary(inside), doctest::Contains("no boundary"), error);
  FrameSpec outside = f;
  outside.center = HPComplex(40.0, 0.0);
  outside.width = 1.0;
  outside.px_w = outside.px_h = 32;
  CHECK_THROWS_WITH_AS(extract_boundary(outside), doctest::Contains("no boundary"), error);
}

}  // TEST_SUITE
