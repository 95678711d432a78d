#include "fhnvem/model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fhnvem {

double InitialData::v0(const Vec2& p) const {
  using std::numbers::pi;
  switch (preset) {
    case InitialPreset::Example1:
      return 1.0 + 0.5 * std::cos(4.0 * pi * p.x) * std::cos(4.0 * pi * p.y);
    case InitialPreset::Example2:
      return 1.0 - 1.0 / (1.0 + std::exp(-50.0 * std::sqrt(p.x * p.x + p.y * p.y) - 0.1));
    case InitialPreset::Example3:
      return (p.x < 0.5 && p.y < 0.5) ? 1.4 : 0.0;
    case InitialPreset::Constant:
      return v_const;
  }
  return v_const;
}

double InitialData::w0(const Vec2& p) const {
  using std::numbers::pi;
  switch (preset) {
    case InitialPreset::Example1:
      return 1.0 + 0.5 * std::cos(8.0 * pi * p.x) * std::cos(8.0 * pi * p.y);
    case InitialPreset::Example2:
      return 0.0;
    case InitialPreset::Example3:
      return (p.x > 0.5 && p.y < 0.5) ? 0.15 : 0.0;
    case InitialPreset::Constant:
      return w_const;
  }
  return w_const;
}

InitialPreset initial_preset_from_string(const std::string& name) {
  if (name == "example1") return InitialPreset::Example1;
  if (name == "example2") return InitialPreset::Example2;
  if (name == "example3") return InitialPreset::Example3;
  if (name == "constant") return InitialPreset::Constant;
  throw std::invalid_argument("unknown initial data preset '" + name +
                              "' (expected example1|example2|example3|constant)");
}

std::string to_string(InitialPreset preset) {
  switch (preset) {
    case InitialPreset::Example1: return "example1";
    case InitialPreset::Example2: return "example2";
    case InitialPreset::Example3: return "example3";
    case InitialPreset::Constant: return "constant";
  }
  return "constant";
}

IonicAssumptionReport check_ionic_assumptions(const IonicKinetics& kinetics) {
  IonicAssumptionReport report;
  auto i1 = [&](double v) { return eval_ionic(kinetics, v, 0.0); };
  auto i2 = [&](double w) { return eval_ionic(kinetics, 0.0, w); };

  // decomposition: ionic(v, w) = i1(v) + i2(w) with i2 linear in w
  report.decomposition_ok = true;
  for (double v = -10.0; v <= 10.0; v += 0.5) {
    for (double w = -10.0; w <= 10.0; w += 0.5) {
      const double direct = eval_ionic(kinetics, v, w);
      const double split = i1(v) + i2(w);
      if (std::abs(direct - split) > 1e-12 * (1.0 + std::abs(direct)))
        report.decomposition_ok = false;
    }
  }

  const int samples = 4001;
  const double lo = -10.0, hi = 10.0;
  auto sample_v = [&](int k) { return lo + (hi - lo) * k / (samples - 1); };

  // quartic growth bracket on |v| >= v_star and global upper bound
  report.v_star = 2.0;
  double worst_lower = 0.0;  // max of |v|^4 / |i1 v|
  double worst_upper = 0.0;  // max of |i1 v| / (|v|^4 + 1)
  bool lower_ok = true;
  for (int k = 0; k < samples; ++k) {
    const double v = sample_v(k);
    const double prod = std::abs(i1(v) * v);
    worst_upper = std::max(worst_upper, prod / (std::pow(v, 4) + 1.0));
    if (std::abs(v) >= report.v_star) {
      if (prod == 0.0)
        lower_ok = false;
      else
        worst_lower = std::max(worst_lower, std::pow(v, 4) / prod);
    }
  }
  report.alpha1 = worst_lower;
  report.alpha2 = worst_upper;
  report.growth_ok = lower_ok && std::isfinite(worst_lower) && worst_lower > 0.0;

  // linear bound on the w part of the ionic current
  double a3 = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double w = sample_v(k);
    a3 = std::max(a3, std::abs(i2(w)) / (std::abs(w) + 1.0));
  }
  report.alpha3 = a3;

  // one-sided Lipschitz constant of i1 from difference quotients: the
  // largest descent rate -(i1(z) - i1(s)) / (z - s)
  double c = 0.0;
  for (int k = 0; k + 1 < samples; ++k) {
    const double s = sample_v(k);
    const double z = sample_v(k + 1);
    c = std::max(c, -(i1(z) - i1(s)) / (z - s));
  }
  report.one_sided_lipschitz = c;

  // linear growth of the recovery right-hand side
  double a4 = 0.0;
  for (double v = -10.0; v <= 10.0; v += 0.5)
    for (double w = -10.0; w <= 10.0; w += 0.5)
      a4 = std::max(a4, std::abs(eval_gating(kinetics, v, w)) /
                            (std::abs(v) + std::abs(w) + 1.0));
  report.alpha4 = a4;
  return report;
}

}  // namespace fhnvem
