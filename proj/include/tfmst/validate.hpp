#pragma once

#include <string>
#include <vector>

#include "tfmst/model.hpp"

namespace tfmst {

enum class Severity { kError, kWarning };

std::string to_string(Severity severity);

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string location;  // e.g. "feature d.1", "usecase Deliver", "model"
  std::string message;

  bool operator==(const Diagnostic&) const = default;
  auto operator<=>(const Diagnostic&) const = default;
};

struct ValidationReport {
  std::vector<Diagnostic> diagnostics;  // sorted by (severity, location, message)

  bool empty() const { return diagnostics.empty(); }
  bool has_errors() const;
};

/// Checks every cross-reference and value invariant of the model.
/// Never throws for model defects; each one becomes a diagnostic.
ValidationReport validate_model(const Model& model);

}  // namespace tfmst
