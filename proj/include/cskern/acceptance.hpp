#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cskern {

struct CriterionResult {
  int id = 0;
  std::string group;
  /// Worst observed error (or failure count) and the limit it is held to.
  double measured = 0.0;
  double threshold = 0.0;
  bool pass = false;
  std::string detail;
};

struct AcceptanceOptions {
  /// Run only this group; empty runs everything.
  std::string only;
  /// Multiplies every threshold.
  double tolerance_scale = 1.0;
  std::uint64_t seed = 20240611;
};

/// Group names in criterion order: tables, spectra, askey, forward, inversion,
/// orderwalk, positivity, asymptotics, gram, reproducing, bessel.
const std::vector<std::string>& acceptance_groups();

/// Throws DomainError for an unknown group name.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options = {});

/// "<id> <group> measured=<x> threshold=<y> PASS|FAIL <detail>"
std::string format_result(const CriterionResult& result);

}  // namespace cskern
