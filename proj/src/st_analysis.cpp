#include "tfmst/st_analysis.hpp"

#include <algorithm>

namespace tfmst {

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::kFeasible: return "feasible";
    case Verdict::kInfeasible: return "infeasible";
    case Verdict::kUnconstrained: return "unconstrained";
  }
  return "unconstrained";
}

PathDuration operator+(const PathDuration& a, const PathDuration& b) {
  return {a.dmin_total + b.dmin_total, a.dmax_total + b.dmax_total};
}

PathDuration path_duration(const Model& model, const std::vector<std::string>& path) {
  PathDuration total;
  for (const auto& id : path) {
    const auto& f = model.feature(id);
    total.dmin_total += f.duration.dmin;
    total.dmax_total += f.duration.dmax;
  }
  return total;
}

std::vector<FeasibilityVerdict> check_cycle_periods(const Model& model, const CerGraph& graph,
                                                    std::size_t cycle_limit) {
  std::vector<FeasibilityVerdict> out;
  for (const auto& cycle : find_functioning_cycles(graph, cycle_limit)) {
    const PathDuration total = path_duration(model, cycle);
    std::vector<std::string> members = cycle;
    std::sort(members.begin(), members.end());
    for (const auto& id : members) {
      const auto& timing = model.feature(id).timing;
      if (!timing.is_periodic() || !timing.period) continue;
      FeasibilityVerdict v{cycle, id, Verdict::kFeasible, total, timing.period};
      if (total.dmax_total > *timing.period) v.verdict = Verdict::kInfeasible;
      out.push_back(std::move(v));
    }
  }
  return out;
}

namespace {

std::string braced(const NameSet& names) {
  std::string out = "{";
  for (const auto& n : names) out += (out.size() > 1 ? ", " : "") + n;
  return out + "}";
}

}  // namespace

std::vector<SpatialDiagnostic> check_spatial_consistency(const Model& model,
                                                         const CerGraph& graph) {
  std::vector<SpatialDiagnostic> out;
  for (const auto& edge : graph.edges()) {
    const auto& from = model.feature(edge.first).loc;
    const auto& to = model.feature(edge.second).loc;
    if (from.empty() || to.empty()) continue;
    bool compatible = false;
    for (const auto& a : from) {
      for (const auto& b : to) {
        if (a == b || model.adjacent(a, b)) {
          compatible = true;
          break;
        }
      }
      if (compatible) break;
    }
    if (!compatible)
      out.push_back({edge, "locations " + braced(from) + " and " + braced(to) +
                               " neither overlap nor are adjacent"});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.edge < b.edge; });
  return out;
}

}  // namespace tfmst
