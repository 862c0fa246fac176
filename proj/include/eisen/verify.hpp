#pragma once

// Named verification suites behind `eisen verify <subject>`: each runs a
// default grid, evaluates its assertions and returns a JSON report.

#include "eisen/config.hpp"
#include "eisen/eisenstein.hpp"

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

namespace eisen {

const std::vector<std::string>& verify_subjects();

struct VerifyOptions {
  std::optional<double> x, y;  // point for pointwise and is-a12
  std::optional<double> N;     // amplifier or polynomial length
};

/// The report carries "subject", "passed", "assertions" (name, passed,
/// detail) and the fitted constants with their grids. DomainError for an
/// unknown subject.
nlohmann::ordered_json run_verify(const std::string& subject, const VerifyOptions& vo, const Config& cfg,
                                  const FourierOptions& opt);

}  // namespace eisen
