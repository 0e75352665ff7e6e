#pragma once

#include <optional>
#include <vector>

#include "cskern/kernel_spec.hpp"

namespace cskern {

enum class Side { Profile, Spectrum };

/// Elementary factor multiplying each polynomial block of a closed form.
enum class Atom { One, SqrtOneMinusR2, LogRatio, Sin, Cos };

/// coeffs[i] * r^(min_power + i), summed, times the atom evaluated at r.
/// LogRatio is log((1 + sqrt(1 - r^2)) / r).
struct ClosedFormTerm {
  Atom atom = Atom::One;
  int min_power = 0;
  std::vector<double> coeffs;
};

/// overall_scale * (1 - r)^one_minus_power * sum of terms.
struct ClosedFormEntry {
  double overall_scale = 1.0;
  double one_minus_power = 0.0;
  std::vector<ClosedFormTerm> terms;
};

/// Registry lookup. Profiles cover both published tables plus the
/// delta = (d+1)/2 rows and the Askey profile; spectra cover Lambda_{1,2},
/// Lambda_{1,3}, Lambda_{3,2}, W_2 and Q_2.
std::optional<ClosedFormEntry> find_closed_form(const KernelSpec& spec, Side side);

/// Evaluates an entry in quad precision. Terms vanishing at r = 0 are
/// skipped there.
double evaluate_closed_form(const ClosedFormEntry& entry, double r);

/// Closed-form value, or nullopt when the spec is not registered.
/// Profiles return 0 for r >= 1. Spectra below r = 1e-2 fall back to the
/// hypergeometric series, where the printed forms cancel catastrophically.
std::optional<double> closed_form(const KernelSpec& spec, Side side, double r);

}  // namespace cskern
