#pragma once

#include <limits>
#include <string>

#include "fhnvem/geometry.hpp"

namespace fhnvem {

// Nonlocal diffusion coefficient D(J) as a function of the total amount of
// the excitation variable. The affine law slope * J is clamped from below by
// the floor d1 > 0 so the coefficient stays uniformly positive (a raw linear
// law would lose ellipticity whenever J <= 0); the clamped law is Lipschitz
// with constant |slope|.
struct DiffusionLaw {
  double slope = 0.01;
  double floor = 1e-4;

  double operator()(double total) const { return std::max(floor, slope * total); }
};

// Cubic excitation / linear recovery kinetics:
//   ionic(v, w)  = -lambda * (w - v (1 - v) (v - theta))
//   gating(v, w) = a v - b w
struct IonicKinetics {
  double a = 0.2232;
  double b = 0.9;
  double lambda = -1.0;
  double theta = 0.004;
};

inline double eval_ionic(const IonicKinetics& k, double v, double w) {
  return -k.lambda * (w - v * (1.0 - v) * (v - k.theta));
}

inline double eval_gating(const IonicKinetics& k, double v, double w) {
  return k.a * v - k.b * w;
}

// Applied current: a constant-amplitude disc switched on at t_on (and off at
// t_off, default never).
struct Stimulus {
  bool enabled = false;
  double amplitude = 1.0;
  Vec2 center{0.5, 0.5};
  double radius = 0.2;
  double t_on = 4.0;
  double t_off = std::numeric_limits<double>::infinity();

  double operator()(const Vec2& p, double t) const {
    if (!enabled || t < t_on || t >= t_off) return 0.0;
    return (p - center).squared_norm() < radius * radius ? amplitude : 0.0;
  }
};

// Initial data catalog. The named presets are the standard experiment setups;
// "constant" takes the two constants directly.
enum class InitialPreset { Example1, Example2, Example3, Constant };

struct InitialData {
  InitialPreset preset = InitialPreset::Example1;
  double v_const = 0.0;
  double w_const = 0.0;

  double v0(const Vec2& p) const;
  double w0(const Vec2& p) const;
};

InitialPreset initial_preset_from_string(const std::string& name);
std::string to_string(InitialPreset preset);

// Full model description consumed by the time stepper.
struct ModelSpec {
  DiffusionLaw diffusion;
  IonicKinetics kinetics;
  Stimulus stimulus;
  InitialData initial;
};

// Empirical check of the structural assumptions on the kinetics over a
// sampling box: the ionic current splits as i1(v) + i2(w) with i2 linear, i1
// satisfies the quartic growth bracket |i1(v) v| ~ |v|^4 for large |v|, i1 is
// one-sided Lipschitz (bounded below slope), and the recovery rhs grows at
// most linearly. All constants are measured by dense sampling of
// v, w in [-10, 10].
struct IonicAssumptionReport {
  bool decomposition_ok = false;  // ionic(v,w) - ionic(v,0) linear in w
  bool growth_ok = false;         // quartic bracket holds for |v| >= v_star
  double v_star = 2.0;
  double alpha1 = 0.0;  // |v|^4 <= alpha1 |i1(v) v| on |v| >= v_star
  double alpha2 = 0.0;  // |i1(v) v| <= alpha2 (|v|^4 + 1) everywhere
  double alpha3 = 0.0;  // |i2(w)| <= alpha3 (|w| + 1)
  double alpha4 = 0.0;  // |gating(v,w)| <= alpha4 (|v| + |w| + 1)
  double one_sided_lipschitz = 0.0;  // max of -(i1(z)-i1(s))/(z-s) over samples
};

IonicAssumptionReport check_ionic_assumptions(const IonicKinetics& kinetics);

}  // namespace fhnvem
