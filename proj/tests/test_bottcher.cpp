#include <cmath>
#include <complex>
#include <random>

#include "decolab/bottcher.hpp"
#include "doctest.h"
#include "testutil.hpp"

using namespace decolab;
using tu::cd;

namespace {

// Deterministic exterior sample: c in the square [-2,2]^2, z safely escaping.
struct Sampler {
  std::mt19937_64 rng{42};
  std::uniform_real_distribution<double> u{0.0, 1.0};
  HPComplex c, z;
  void next() {
    double cr = 4 * u(rng) - 2, ci = 4 * u(rng) - 2;
    c = HPComplex(cr, ci);
    double r = std::hypot(cr, ci) + 2.2 + 3 * u(rng);
    double t = 2 * 3.14159265358979323846 * u(rng);
    z = HPComplex(r * std::cos(t), r * std::sin(t));
  }
};

}  // namespace

TEST_SUITE("bottcher") {

TEST_CASE("green examples") {
  CHECK(green_K(HPComplex(0.0, 0.0), HPComplex(4.0, 0.0)).green ==
        doctest::Approx(std::log(4.0)).epsilon(1e-12));
  PotentialValue inside = green_K(HPComplex(0.0, 0.0), HPComplex(0.3, 0.2));
  CHECK(inside.green == 0.0);
  CHECK(!inside.escaped);
  PotentialValue bounded = green_K(HPComplex(-1.0, 0.0), HPComplex(0.0, 0.0));
  CHECK(bounded.green == 0.0);
  CHECK(!bounded.escaped);
}

TEST_CASE("external angle at c=0") {
  PotentialValue p = green_K(HPComplex(0.0, 0.0), HPComplex(2.0 * std::cos(0.7), 2.0 * std::sin(0.7)));
  CHECK(p.escaped);
  CHECK(p.external_angle == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("phi closed forms") {
  CHECK(tu::dist(phi_c(HPComplex(0.0, 0.0), HPComplex(3.0, 0.5)), cd(3.0, 0.5)) < 1e-50);
  // Chebyshev conjugacy at c=-2
  CHECK(tu::dist(phi_c(HPComplex(-2.0, 0.0), HPComplex(3.0, 0.0)),
                 cd((3.0 + std::sqrt(5.0)) / 2.0, 0)) < 1e-13);
  CHECK_THROWS_AS(phi_c(HPComplex(0.0, 0.0), HPComplex(0.5, 0.0)), error);
  // bounded orbit away from 0: the budget runs out without escape
  CHECK_THROWS_WITH_AS(phi_c(HPComplex(0.1, 0.0), HPComplex(0.3, 0.0), 300),
                       doctest::Contains("no escape"), error);
}

TEST_CASE("functional equation") {
  Sampler s;
  for (int i = 0; i < 200; ++i) {
    s.next();
    HPComplex lhs = phi_c(s.c, s.z.sqr() + s.c);
    HPComplex rhs = phi_c(s.c, s.z).sqr();
    CHECK(abs(lhs - rhs).to_double() / abs(rhs).to_double() < 1e-10);
    double g2 = green_K(s.c, s.z.sqr() + s.c).green;
    double g1 = green_K(s.c, s.z).green;
    CHECK(std::abs(g2 - 2 * g1) < 1e-10);
  }
}

TEST_CASE("phi_M matches green and asymptotics") {
  HPComplex c(1e6, 0.0);
  CHECK(abs(phi_M(c) / c - HPComplex(1.0, 0.0)).to_double() < 1e-5);
  HPComplex m3 = phi_M(HPComplex(-3.0, 0.0));
  CHECK(std::abs(m3.imag().to_double()) < 1e-20);
  CHECK(m3.real().to_double() < -2.0);
  // |Phi_M| = exp(G_M)
  HPComplex c2(0.3, 1.2);
  CHECK(std::abs(std::log(std::abs(phi_M(c2).to_std())) - green_K(c2, c2).green) < 1e-10);
}

TEST_CASE("round trips") {
  Sampler s;
  for (int i = 0; i < 30; ++i) {
    s.next();
    HPComplex w = phi_c(s.c, s.z);
    CHECK(tu::dist(inverse_phi_c(s.c, w), s.z) < 1e-10 * std::abs(s.z.to_std()));
  }
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 30; ++i) {
    double r = 2.05 + 4 * u(rng), t = 2 * 3.14159265358979323846 * u(rng);
    HPComplex c(r * std::cos(t), r * std::sin(t));
    CHECK(tu::dist(inverse_phi_M(phi_M(c)), c) < 1e-10 * r);
  }
  for (double rw : {1.5, 2.0, 10.0}) {
    for (int j = 0; j < 12; ++j) {
      double t = j * (2 * 3.14159265358979323846 / 12.0) + 0.02;
      HPComplex w(rw * std::cos(t), rw * std::sin(t));
      HPComplex c = inverse_phi_M(w);
      CHECK(abs(phi_M(c) - w).to_double() < 1e-10 * rw);
    }
  }
}

TEST_CASE("inverse domain and continuity") {
  CHECK_THROWS_AS(inverse_phi_M(HPComplex(0.9, 0.0)), error);
  CHECK_THROWS_AS(inverse_phi_c(HPComplex(0.3, 0.1), HPComplex(0.5, 0.5)), error);
  // radial continuation: consecutive outputs track the segment
  double t = 0.4;
  HPComplex prev;
  bool first = true;
  for (int i = 0; i <= 50; ++i) {
    double rw = 3.0 - i * (1.8 / 50.0);
    HPComplex c = inverse_phi_M(HPComplex(rw * std::cos(t), rw * std::sin(t)));
    if (!first) CHECK(abs(c - prev).to_double() < 0.4);
    prev = c;
    first = false;
  }
}

TEST_CASE("inverse at large modulus is near identity") {
  HPComplex w(1e6, 0.0);
  CHECK(abs(inverse_phi_M(w) - w).to_double() / 1e6 < 1e-5);
  HPComplex wneg(-5.0, 0.0);
  HPComplex c = inverse_phi_M(wneg);
  CHECK(std::abs(c.imag().to_double()) < 1e-12);
  CHECK(c.real().to_double() < -2.0);
}

}  // TEST_SUITE
