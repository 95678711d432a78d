#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fhnvem/model.hpp"

using namespace fhnvem;

TEST_CASE("the clamped diffusion law is positive, monotone, and kinks at the floor") {
  const DiffusionLaw law{0.01, 1e-4};
  CHECK(law(1.0) == doctest::Approx(0.01));
  CHECK(law(2.5) == doctest::Approx(0.025));
  // below the kink the floor takes over
  CHECK(law(0.005) == 1e-4);
  CHECK(law(0.0) == 1e-4);
  CHECK(law(-3.0) == 1e-4);
  // exactly at the kink both branches agree
  CHECK(law(0.01) == 1e-4);
  // Lipschitz bound |D(a) - D(b)| <= slope |a - b| across the kink
  CHECK(std::abs(law(0.5) - law(-0.5)) <= 0.01 * 1.0 + 1e-15);
}

TEST_CASE("ionic current values match hand evaluation of the cubic") {
  const IonicKinetics mild{0.2232, 0.9, -1.0, 0.004};
  // v = 0: the cubic vanishes, leaving -lambda * w
  CHECK(eval_ionic(mild, 0.0, 1.0) == doctest::Approx(1.0));
  CHECK(eval_ionic(mild, 0.0, -2.0) == doctest::Approx(-2.0));
  // v = 1: the (1 - v) factor kills the cubic as well
  CHECK(eval_ionic(mild, 1.0, 0.5) == doctest::Approx(0.5));
  // v = theta: third root
  CHECK(eval_ionic(mild, 0.004, 0.0) == doctest::Approx(0.0));

  const IonicKinetics stiff{0.16875, 1.0, -100.0, 0.25};
  // v (1 - v)(v - theta) = 0.5 * 0.5 * 0.25 = 0.0625; i = 100 (0 - 0.0625)
  CHECK(eval_ionic(stiff, 0.5, 0.0) == doctest::Approx(-6.25));
  CHECK(eval_ionic(stiff, 0.5, 0.1) == doctest::Approx(100.0 * (0.1 - 0.0625)));
}

TEST_CASE("recovery right-hand side is the linear combination a v - b w") {
  const IonicKinetics k{0.16875, 1.0, -100.0, 0.25};
  CHECK(eval_gating(k, 1.0, 0.0) == doctest::Approx(0.16875));
  CHECK(eval_gating(k, 0.0, 1.0) == doctest::Approx(-1.0));
  CHECK(eval_gating(k, 2.0, 0.5) == doctest::Approx(2.0 * 0.16875 - 0.5));
}

TEST_CASE("the applied current is a sharp disc inside a half-open time window") {
  Stimulus stim;
  stim.enabled = true;
  stim.amplitude = 1.0;
  stim.center = {0.5, 0.5};
  stim.radius = 0.25;  // exactly representable, so the circle test is exact
  stim.t_on = 4.0;
  stim.t_off = 6.0;

  CHECK(stim({0.5, 0.5}, 3.999) == 0.0);   // before onset
  CHECK(stim({0.5, 0.5}, 4.0) == 1.0);     // switches on exactly at t_on
  CHECK(stim({0.5, 0.5}, 5.0) == 1.0);
  CHECK(stim({0.5, 0.5}, 6.0) == 0.0);     // off boundary is exclusive
  CHECK(stim({0.625, 0.5}, 5.0) == 1.0);   // inside the disc
  CHECK(stim({0.75, 0.5}, 5.0) == 0.0);    // exactly on the circle: open disc
  CHECK(stim({0.8, 0.5}, 5.0) == 0.0);     // outside
  stim.enabled = false;
  CHECK(stim({0.5, 0.5}, 5.0) == 0.0);
}

TEST_CASE("oscillatory initial data evaluates the cosine products") {
  InitialData data;
  data.preset = InitialPreset::Example1;
  CHECK(data.v0({0.0, 0.0}) == doctest::Approx(1.5));
  CHECK(data.w0({0.0, 0.0}) == doctest::Approx(1.5));
  // cos(pi) = -1 in x, cos(0) = 1 in y
  CHECK(data.v0({0.25, 0.0}) == doctest::Approx(0.5));
  // w oscillates twice as fast: cos(2 pi) = 1
  CHECK(data.w0({0.25, 0.0}) == doctest::Approx(1.5));
  CHECK(data.v0({0.125, 0.125}) == doctest::Approx(1.0));  // cos(pi/2) factor
}

TEST_CASE("sigmoid front initial data matches hand evaluation at the corner") {
  InitialData data;
  data.preset = InitialPreset::Example2;
  // at the origin the exponent is -0.1
  CHECK(data.v0({0.0, 0.0}) == doctest::Approx(1.0 - 1.0 / (1.0 + std::exp(-0.1))));
  // far from the corner the profile decays to zero
  CHECK(data.v0({1.0, 1.0}) < 1e-25);
  CHECK(data.v0({1.0, 1.0}) >= 0.0);
  // monotone decay along the diagonal
  CHECK(data.v0({0.1, 0.1}) < data.v0({0.0, 0.0}));
  CHECK(data.w0({0.3, 0.7}) == 0.0);
}

TEST_CASE("quadrant initial data excites and blocks the right quarters") {
  InitialData data;
  data.preset = InitialPreset::Example3;
  CHECK(data.v0({0.25, 0.25}) == 1.4);
  CHECK(data.w0({0.25, 0.25}) == 0.0);
  CHECK(data.v0({0.75, 0.25}) == 0.0);
  CHECK(data.w0({0.75, 0.25}) == 0.15);
  CHECK(data.v0({0.75, 0.75}) == 0.0);
  CHECK(data.w0({0.75, 0.75}) == 0.0);
  CHECK(data.v0({0.25, 0.75}) == 0.0);
  CHECK(data.w0({0.25, 0.75}) == 0.0);
  // the quarter boundaries use strict comparisons: x = 0.5 belongs to neither
  CHECK(data.v0({0.5, 0.25}) == 0.0);
  CHECK(data.w0({0.5, 0.25}) == 0.0);
  CHECK(data.v0({0.25, 0.5}) == 0.0);
}

TEST_CASE("constant initial data returns the stored constants everywhere") {
  InitialData data;
  data.preset = InitialPreset::Constant;
  data.v_const = 0.3;
  data.w_const = 0.1;
  CHECK(data.v0({0.1, 0.9}) == 0.3);
  CHECK(data.w0({0.77, 0.13}) == 0.1);
}

TEST_CASE("initial preset names round-trip and unknown names are rejected") {
  for (const char* name : {"example1", "example2", "example3", "constant"}) {
    CHECK(to_string(initial_preset_from_string(name)) == name);
  }
  CHECK_THROWS((void)initial_preset_from_string("example9"));
}

TEST_CASE("structural assumptions hold for the standard kinetics") {
  for (const IonicKinetics& k :
       {IonicKinetics{0.2232, 0.9, -1.0, 0.004}, IonicKinetics{0.16875, 1.0, -100.0, 0.25}}) {
    const IonicAssumptionReport report = check_ionic_assumptions(k);
    CHECK(report.decomposition_ok);
    CHECK(report.growth_ok);
    CHECK(report.alpha1 > 0.0);
    CHECK(report.alpha2 > 0.0);
    CHECK(report.alpha3 > 0.0);
    CHECK(report.alpha4 > 0.0);
    // the recovery rhs constant cannot exceed the larger coefficient
    CHECK(report.alpha4 <= std::max(k.a, k.b) + 1e-12);
    CHECK(std::isfinite(report.one_sided_lipschitz));
    CHECK(report.one_sided_lipschitz > 0.0);  // the cubic has downhill slopes
  }
}

TEST_CASE("degenerate kinetics fail the growth condition") {
  const IonicKinetics flat{0.2232, 0.9, 0.0, 0.004};  // lambda = 0: no cubic term
  const IonicAssumptionReport report = check_ionic_assumptions(flat);
  CHECK_FALSE(report.growth_ok);
}
