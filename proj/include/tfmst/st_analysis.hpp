#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfmst/cer_graph.hpp"
#include "tfmst/model.hpp"

namespace tfmst {

/// Duration interval of features executed one after another.
struct PathDuration {
  Rational dmin_total;
  Rational dmax_total;

  bool operator==(const PathDuration&) const = default;
};

PathDuration operator+(const PathDuration& a, const PathDuration& b);

/// Interval sum of the members' duration bounds. Throws UnknownIdError.
PathDuration path_duration(const Model& model, const std::vector<std::string>& path);

enum class Verdict { kFeasible, kInfeasible, kUnconstrained };

std::string to_string(Verdict verdict);

/// Whether one periodic member of a functioning cycle can see the whole
/// cycle complete inside a single repetition window.
struct FeasibilityVerdict {
  Cycle cycle;
  std::string feature;
  Verdict verdict = Verdict::kUnconstrained;
  PathDuration cycle_duration;
  std::optional<Rational> period;

  bool operator==(const FeasibilityVerdict&) const = default;
};

/// One verdict per (cycle, periodic member), sorted by (cycle, feature).
/// Feasible iff the cycle's worst-case total fits within the period.
/// Propagates CycleLimitExceeded.
std::vector<FeasibilityVerdict> check_cycle_periods(const Model& model, const CerGraph& graph,
                                                    std::size_t cycle_limit = kDefaultCycleLimit);

struct SpatialDiagnostic {
  CerPair edge;
  std::string reason;

  bool operator==(const SpatialDiagnostic&) const = default;
};

/// Flags x -> y when Loc(x) and Loc(y) neither overlap nor touch through a
/// declared adjacency. Features without locations are never flagged.
std::vector<SpatialDiagnostic> check_spatial_consistency(const Model& model,
                                                         const CerGraph& graph);

}  // namespace tfmst
