// Copyright (c) 2026 the acoustodg authors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "acoustodg/coefficients.hpp"
#include "acoustodg/errors.hpp"

using namespace adg;

namespace {
const std::array<double, 4> kBox{0.0, 0.0, 1.0, 1.1};
}

TEST_CASE("rho1 bounds: analytic extrema at the corners") {
  const CoefficientField rho1 = builtin_density("rho1");
  const DensityBounds b = density_bounds(rho1, kBox, 512);
  CHECK(b.upper == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(b.lower == doctest::Approx(1.0 / 3.21).epsilon(1e-14));
  // grid refinement does not move the corner extrema
  const DensityBounds fine = density_bounds(rho1, kBox, 1024);
  CHECK(fine.upper == doctest::Approx(b.upper).epsilon(1e-14));
  CHECK(fine.lower == doctest::Approx(b.lower).epsilon(1e-14));
}

TEST_CASE("rho2 bounds: e and e^2.1") {
  const CoefficientField rho2 = builtin_density("rho2");
  const DensityBounds b = density_bounds(rho2, kBox, 512);
  CHECK(b.lower == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(b.upper == doctest::Approx(std::exp(2.1)).epsilon(1e-14));
  const DensityBounds fine = density_bounds(rho2, kBox, 1024);
  CHECK(fine.lower == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(fine.upper == doctest::Approx(std::exp(2.1)).epsilon(1e-14));
}

TEST_CASE("constant density bounds") {
  const DensityBounds b = density_bounds(builtin_density("const1"), kBox, 64);
  CHECK(b.lower == 1.0);
  CHECK(b.upper == 1.0);
}

TEST_CASE("bounds are monotone under grid refinement within the Lipschitz slack") {
  struct Case {
    const char* id;
    double lipschitz;
  };
  const double diag = std::sqrt(1.0 + 1.1 * 1.1);
  for (const auto& c : {Case{"rho1", 3.0}, Case{"rho2", 13.0}, Case{"coscos-inv", 7.0}}) {
    const CoefficientField f = builtin_density(c.id);
    for (int m : {64, 128, 256}) {
      const DensityBounds coarse = density_bounds(f, kBox, m);
      const DensityBounds fine = density_bounds(f, kBox, 2 * m);
      const double slack = c.lipschitz * diag / m;
      CHECK(fine.lower >= coarse.lower - slack);
      CHECK(fine.upper <= coarse.upper + slack);
      // refinement can only widen the sampled range
      CHECK(fine.lower <= coarse.lower + 1e-15);
      CHECK(fine.upper >= coarse.upper - 1e-15);
    }
  }
}

TEST_CASE("bounds preconditions and positivity violation") {
  CHECK_THROWS_AS(density_bounds(builtin_density("const1"), kBox, 32), std::invalid_argument);
  const CoefficientField bad = parse_density("x - 1");
  CHECK_THROWS_AS(density_bounds(bad, kBox, 64), PositivityError);
}

TEST_CASE("builtin density point values") {
  CHECK(builtin_density("rho1")(0.0, 0.0) == doctest::Approx(1.0));
  CHECK(builtin_density("rho2")(1.0, 1.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(builtin_density("coscos-inv")(0.5, 0.5) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(builtin_density("expxy")(1.0, 1.0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(builtin_density("sincos")(0.5, 0.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(builtin_density("nope"), UnknownIdError);
}

TEST_CASE("stabilization presets") {
  const CoefficientField rho1 = builtin_density("rho1");
  const CoefficientField rho2 = builtin_density("rho2");
  const DensityBounds b1 = density_bounds(rho1, kBox, 512);
  const DensityBounds b2 = density_bounds(rho2, kBox, 512);

  CHECK(stabilization_preset("sum2", b1, 1, 0.0) ==
        doctest::Approx(2.0 * (1.0 + 1.0 / 3.21)).epsilon(1e-12));
  CHECK(stabilization_preset("max4", b2, 2, 0.0) ==
        doctest::Approx(4.0 * std::exp(2.1) * 4.0).epsilon(1e-12));
  CHECK(stabilization_preset("raw", b1, 1, 10.0) == doctest::Approx(10.0));
  CHECK(stabilization_preset("raw4", b1, 1, 0.0) == doctest::Approx(4.0));
  CHECK(stabilization_preset("8rhobar", b2, 1, 0.0) ==
        doctest::Approx(8.0 * std::exp(2.1)).epsilon(1e-12));
  CHECK(stabilization_preset("plus1-10", b1, 1, 0.0) ==
        doctest::Approx(10.0 * 2.0).epsilon(1e-12));
  CHECK(stabilization_preset("sum1", b1, 1, 0.0) ==
        doctest::Approx(1.0 + 1.0 / 3.21).epsilon(1e-12));

  CHECK_THROWS_AS(stabilization_preset("whatever", b1, 1, 1.0), UnknownIdError);
  CHECK_THROWS_AS(stabilization_preset("raw", b1, 1, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(stabilization_preset("raw", b1, 0, 1.0), std::invalid_argument);
}

TEST_CASE("preset scales linearly in a and quadratically in k") {
  const DensityBounds b = density_bounds(builtin_density("rho2"), kBox, 64);
  const double base = stabilization_preset("raw", b, 1, 3.0);
  CHECK(stabilization_preset("raw", b, 1, 6.0) == doctest::Approx(2.0 * base));
  for (int k : {2, 3, 4}) {
    CHECK(stabilization_preset("raw", b, k, 3.0) == doctest::Approx(base * k * k));
    CHECK(stabilization_preset("plus1-4", b, k, 0.0) ==
          doctest::Approx(stabilization_preset("plus1-4", b, 1, 0.0) * k * k));
  }
}

TEST_CASE("expression language reproduces the builtins") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const CoefficientField e1 = parse_density("1/(x^2+y^2+1)");
  const CoefficientField e2 = parse_density("e^(x*y+1)");
  const CoefficientField e3 = parse_density("exp(sin(pi*x)*cos(pi*y))");
  const CoefficientField e4 = parse_density("1/(cos(pi*x)*cos(pi*y)+2)");
  const CoefficientField b1 = builtin_density("rho1");
  const CoefficientField b2 = builtin_density("rho2");
  const CoefficientField b3 = builtin_density("sincos");
  const CoefficientField b4 = builtin_density("coscos-inv");
  for (int i = 0; i < 50; ++i) {
    const double x = uni(rng), y = uni(rng);
    CHECK(e1(x, y) == doctest::Approx(b1(x, y)).epsilon(1e-14));
    CHECK(e2(x, y) == doctest::Approx(b2(x, y)).epsilon(1e-14));
    CHECK(e3(x, y) == doctest::Approx(b3(x, y)).epsilon(1e-14));
    CHECK(e4(x, y) == doctest::Approx(b4(x, y)).epsilon(1e-14));
  }
}

TEST_CASE("expression precedence and associativity") {
  CHECK(parse_density("2+3*4^2")(0, 0) == doctest::Approx(50.0));
  CHECK(parse_density("2^3^2")(0, 0) == doctest::Approx(512.0));  // right associative
  CHECK(parse_density("-x^2")(2, 0) == doctest::Approx(-4.0));
  CHECK(parse_density("(2+3)*4")(0, 0) == doctest::Approx(20.0));
  CHECK(parse_density("6/3/2")(0, 0) == doctest::Approx(1.0));  // left associative
  CHECK(parse_density("pi")(0, 0) == doctest::Approx(M_PI).epsilon(1e-15));
  CHECK(parse_density("--x")(3, 0) == doctest::Approx(3.0));
}

TEST_CASE("expression parse errors") {
  CHECK_THROWS_AS(parse_density("1 +"), ParseError);
  CHECK_THROWS_AS(parse_density("sin x"), ParseError);
  CHECK_THROWS_AS(parse_density("foo(1)"), ParseError);
  CHECK_THROWS_AS(parse_density("(1+2"), ParseError);
  CHECK_THROWS_AS(parse_density("1 2"), ParseError);
  CHECK_THROWS_AS(parse_density(""), ParseError);
}
