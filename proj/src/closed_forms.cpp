#include "cskern/closed_forms.hpp"

#include <quadmath.h>

#include <cmath>

#include "cskern/kernels.hpp"

namespace cskern {

namespace {

using Quad = __float128;

bool same(double a, double b) { return std::abs(a - b) < 1e-12; }

ClosedFormEntry power_times_poly(double power, std::vector<double> coeffs, double scale = 1.0) {
  return {scale, power, {{Atom::One, 0, std::move(coeffs)}}};
}

std::optional<ClosedFormEntry> wendland_profile(int d, double delta) {
  if (d >= 2 && same(delta, 0.5 * (d + 1))) return power_times_poly(0.5 * (d + 1), {1.0});
  if (d == 1 && same(delta, 2.0)) return power_times_poly(3.0, {1.0, 3.0});
  if (d == 2 && same(delta, 2.0))
    return ClosedFormEntry{1.0, 0.0,
                           {{Atom::SqrtOneMinusR2, 0, {1.0, 0.0, 2.0}}, {Atom::LogRatio, 2, {-3.0}}}};
  // Checked against the defining integral in exact arithmetic; 1 - 2r + 8r^2 is wrong here.
  if (d == 1 && same(delta, 3.0)) return power_times_poly(5.0, {1.0, 5.0, 8.0});
  if (d == 2 && same(delta, 3.0))
    return ClosedFormEntry{0.25, 0.0,
                           {{Atom::SqrtOneMinusR2, 0, {4.0, 0.0, -28.0, 0.0, -81.0}},
                            {Atom::LogRatio, 4, {90.0, 0.0, 15.0}}}};
  if (d == 3 && same(delta, 3.0)) return power_times_poly(4.0, {1.0, 4.0});
  return std::nullopt;
}

std::optional<ClosedFormEntry> smooth_profile(int d, double delta) {
  if (same(delta, 0.5 * (d + 1))) return power_times_poly(d + 1.0, {1.0});
  if (d == 1) {
    if (same(delta, 1.5))
      return ClosedFormEntry{0.5, 0.0,
                             {{Atom::SqrtOneMinusR2, 0, {2.0, 0.0, 13.0}},
                              {Atom::LogRatio, 2, {-12.0, 0.0, -3.0}}}};
    if (same(delta, 2.0)) return power_times_poly(5.0, {1.0, 5.0});
    if (same(delta, 3.0)) return power_times_poly(8.0, {1.0, 8.0, 21.0});
  }
  if (d == 2) {
    if (same(delta, 2.5)) return power_times_poly(6.0, {1.0, 6.0});
    if (same(delta, 3.5)) return power_times_poly(9.0, {3.0, 27.0, 80.0}, 1.0 / 3.0);
    if (same(delta, 4.5)) return power_times_poly(12.0, {1.0, 12.0, 57.0, 112.0});
  }
  if (d == 3) {
    if (same(delta, 3.0)) return power_times_poly(7.0, {1.0, 7.0});
    if (same(delta, 4.0)) return power_times_poly(10.0, {1.0, 10.0, 33.0});
  }
  return std::nullopt;
}

// 120/r^4 (1 + cos r / 2) - 180 sin r / r^5, shared by W_2 and Lambda_{3,2}.
ClosedFormEntry w2_spectrum() {
  return {1.0, 0.0, {{Atom::One, -4, {120.0}}, {Atom::Cos, -4, {60.0}}, {Atom::Sin, -5, {-180.0}}}};
}

std::optional<ClosedFormEntry> spectrum_entry(const KernelSpec& spec) {
  const int d = spec.dimension;
  const double order = spec.order;
  switch (spec.family) {
    case Family::Askey:
      if (d == 1 && same(order, 2.0))
        return ClosedFormEntry{1.0, 0.0, {{Atom::One, -2, {6.0}}, {Atom::Sin, -3, {-6.0}}}};
      if (d == 1 && same(order, 3.0))
        return ClosedFormEntry{1.0, 0.0, {{Atom::One, -4, {-24.0, 0.0, 12.0}}, {Atom::Cos, -4, {24.0}}}};
      if (d == 3 && same(order, 2.0)) return w2_spectrum();
      return std::nullopt;
    case Family::WendlandType:
      if (same(order, 2.0)) return w2_spectrum();
      return std::nullopt;
    case Family::Smooth:
      if (same(order, 2.0))
        return ClosedFormEntry{1.0, 0.0,
                               {{Atom::One, -6, {-10080.0, 0.0, 840.0}},
                                {Atom::Cos, -6, {-2520.0}},
                                {Atom::Sin, -7, {12600.0}}}};
      return std::nullopt;
    case Family::BesselPotential:
      return std::nullopt;
  }
  return std::nullopt;
}

Quad atom_value(Atom atom, Quad r) {
  switch (atom) {
    case Atom::One: return 1;
    case Atom::SqrtOneMinusR2: return sqrtq((1 - r) * (1 + r));
    case Atom::LogRatio: return logq((1 + sqrtq((1 - r) * (1 + r))) / r);
    case Atom::Sin: return sinq(r);
    case Atom::Cos: return cosq(r);
  }
  return 0;
}

}  // namespace

std::optional<ClosedFormEntry> find_closed_form(const KernelSpec& spec, Side side) {
  if (side == Side::Spectrum) return spectrum_entry(spec);
  switch (spec.family) {
    case Family::Askey: return power_times_poly(spec.order, {1.0});
    case Family::WendlandType: return wendland_profile(spec.dimension, spec.order);
    case Family::Smooth: return smooth_profile(spec.dimension, spec.order);
    case Family::BesselPotential: return std::nullopt;
  }
  return std::nullopt;
}

double evaluate_closed_form(const ClosedFormEntry& entry, double r) {
  const Quad x = r;
  Quad total = 0;
  for (const ClosedFormTerm& term : entry.terms) {
    if (x == 0 && term.min_power > 0) continue;
    Quad poly = 0;
    for (auto it = term.coeffs.rbegin(); it != term.coeffs.rend(); ++it) poly = poly * x + *it;
    Quad scale = 1;
    const int p = term.min_power;
    for (int k = 0; k < std::abs(p); ++k) scale *= x;
    if (p < 0) scale = 1 / scale;
    total += poly * scale * atom_value(term.atom, x);
  }
  if (entry.one_minus_power != 0.0) total *= powq(1 - x, entry.one_minus_power);
  return static_cast<double>(total * entry.overall_scale);
}

std::optional<double> closed_form(const KernelSpec& spec, Side side, double r) {
  auto entry = find_closed_form(spec, side);
  if (!entry) return std::nullopt;
  r = std::abs(r);
  if (side == Side::Profile) {
    if (r >= 1.0) return 0.0;
    return evaluate_closed_form(*entry, r);
  }
  if (r < 1e-2) return spectrum(spec, r).value;
  return evaluate_closed_form(*entry, r);
}

}  // namespace cskern
