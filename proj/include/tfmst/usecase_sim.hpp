#pragma once

#include <string>
#include <vector>

#include "tfmst/cer_graph.hpp"
#include "tfmst/model.hpp"

namespace tfmst {

/// Conditions currently holding during trace replay.
struct ConditionState {
  NameSet true_set;

  bool holds(const std::string& condition) const { return true_set.count(condition) != 0; }
  bool operator==(const ConditionState&) const = default;
};

struct StepResult {
  ConditionState state;
  NameSet missing_pre;
};

/// Fires one feature: missing_pre = Pre \ state, then Post is asserted and
/// every condition excluded by a Post member is retracted. The step is
/// applied even when preconditions are missing. Throws UnknownIdError.
StepResult apply_feature(const ConditionState& state, const Model& model,
                         const std::string& feature);

struct TraceStep {
  std::string feature;
  NameSet missing_pre;  // empty iff the step fired cleanly
  ConditionState state_after;

  bool operator==(const TraceStep&) const = default;
};

/// Left fold of apply_feature over `trace`. Throws Error when `initial`
/// holds two mutually exclusive conditions, UnknownIdError on bad ids.
std::vector<TraceStep> check_trace(const Model& model, const NameSet& initial,
                                   const std::vector<std::string>& trace);

/// Result of replaying one event flow (main or alternative).
struct FlowReport {
  std::vector<std::string> events;
  bool path_ok = true;
  std::vector<CerPair> missing_links;  // consecutive pairs without an edge
  NameSet missing_initial;
  std::vector<TraceStep> steps;

  bool ok() const { return path_ok && missing_initial.empty(); }
  bool operator==(const FlowReport&) const = default;
};

struct AltFlowReport {
  int at_index = 0;
  FlowReport flow;  // shared prefix followed by the alternative events

  bool operator==(const AltFlowReport&) const = default;
};

struct UseCaseReport {
  std::string use_case;
  FlowReport main;
  std::vector<AltFlowReport> alt_reports;

  bool path_ok() const { return main.path_ok; }
  const NameSet& missing_initial() const { return main.missing_initial; }
  /// Main flow and every alternative are clean.
  bool ok() const;

  bool operator==(const UseCaseReport&) const = default;
};

/// Checks that the event flow follows CER edges and that UCPre covers every
/// precondition not produced earlier in the flow. Alternatives are the
/// prefix up to and including `at_index` followed by the alternative list.
/// Throws UnknownIdError for an unknown use case.
UseCaseReport validate_use_case(const Model& model, const CerGraph& graph,
                                const std::string& name);

}  // namespace tfmst
