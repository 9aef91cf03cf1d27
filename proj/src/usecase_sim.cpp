#include "tfmst/usecase_sim.hpp"

#include <algorithm>

namespace tfmst {

StepResult apply_feature(const ConditionState& state, const Model& model,
                         const std::string& feature) {
  const auto& f = model.feature(feature);
  StepResult result;
  std::set_difference(f.pre.begin(), f.pre.end(), state.true_set.begin(), state.true_set.end(),
                      std::inserter(result.missing_pre, result.missing_pre.end()));

  NameSet next = state.true_set;
  next.insert(f.post.begin(), f.post.end());
  for (auto it = next.begin(); it != next.end();) {
    const bool retracted = std::any_of(f.post.begin(), f.post.end(), [&](const std::string& p) {
      return p != *it && model.excludes(p, *it);
    });
    it = retracted ? next.erase(it) : std::next(it);
  }
  result.state.true_set = std::move(next);
  return result;
}

std::vector<TraceStep> check_trace(const Model& model, const NameSet& initial,
                                   const std::vector<std::string>& trace) {
  for (auto a = initial.begin(); a != initial.end(); ++a)
    for (auto b = std::next(a); b != initial.end(); ++b)
      if (model.excludes(*a, *b))
        throw Error("initial state holds mutually exclusive conditions '" + *a + "' and '" + *b +
                    "'");

  std::vector<TraceStep> steps;
  steps.reserve(trace.size());
  ConditionState state{initial};
  for (const auto& id : trace) {
    auto [next, missing] = apply_feature(state, model, id);
    steps.push_back({id, std::move(missing), next});
    state = std::move(next);
  }
  return steps;
}

namespace {

FlowReport replay_flow(const Model& model, const CerGraph& graph, const NameSet& ucpre,
                       std::vector<std::string> events) {
  FlowReport report;
  for (std::size_t i = 0; i + 1 < events.size(); ++i) {
    if (!graph.has_edge(events[i], events[i + 1])) {
      report.path_ok = false;
      report.missing_links.emplace_back(events[i], events[i + 1]);
    }
  }
  report.steps = check_trace(model, ucpre, events);
  for (const auto& step : report.steps)
    report.missing_initial.insert(step.missing_pre.begin(), step.missing_pre.end());
  report.events = std::move(events);
  return report;
}

}  // namespace

bool UseCaseReport::ok() const {
  return main.ok() && std::all_of(alt_reports.begin(), alt_reports.end(),
                                  [](const AltFlowReport& a) { return a.flow.ok(); });
}

UseCaseReport validate_use_case(const Model& model, const CerGraph& graph,
                                const std::string& name) {
  const UseCase* uc = model.find_use_case(name);
  if (!uc) throw UnknownIdError("use case", name);

  std::vector<std::string> events;
  for (const auto& ev : uc->events) events.push_back(ev.feature);

  UseCaseReport report;
  report.use_case = uc->name;
  report.main = replay_flow(model, graph, uc->ucpre, events);
  for (const auto& alt : uc->alts) {
    const auto prefix_len = std::min<std::size_t>(std::max(alt.at_index, 0), events.size());
    std::vector<std::string> flow(events.begin(), events.begin() + prefix_len);
    flow.insert(flow.end(), alt.events.begin(), alt.events.end());
    report.alt_reports.push_back({alt.at_index, replay_flow(model, graph, uc->ucpre, flow)});
  }
  return report;
}

}  // namespace tfmst
