#include "tfmst/validate.hpp"

#include <algorithm>
#include <map>

namespace tfmst {

std::string to_string(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

bool ValidationReport::has_errors() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) { return d.severity == Severity::kError; });
}

namespace {

class Validator {
 public:
  explicit Validator(const Model& model) : model_(model) {}

  ValidationReport run() {
    check_sp_objects();
    check_locations();
    check_conditions();
    check_features();
    check_cers();
    check_use_cases();
    std::sort(out_.begin(), out_.end());
    out_.erase(std::unique(out_.begin(), out_.end()), out_.end());
    return {std::move(out_)};
  }

 private:
  void error(std::string where, std::string message) {
    out_.push_back({Severity::kError, std::move(where), std::move(message)});
  }
  void warning(std::string where, std::string message) {
    out_.push_back({Severity::kWarning, std::move(where), std::move(message)});
  }

  template <class T, class Key>
  void check_names(const std::vector<T>& items, Key key, const std::string& kind) {
    std::map<std::string, int> seen;
    for (const auto& item : items) {
      const std::string& name = item.*key;
      if (name.empty()) error(kind, kind + " with empty name");
      else if (++seen[name] == 2) error(kind + " " + name, "duplicate " + kind + " '" + name + "'");
    }
  }

  void check_sp_objects() {
    check_names(model_.sp_objects, &SpObject::name, "spobject");
    for (const auto& obj : model_.sp_objects) {
      if (obj.initial_location && !model_.find_location(*obj.initial_location))
        error("spobject " + obj.name,
              "initial location '" + *obj.initial_location + "' is not a declared location");
    }
  }

  void check_locations() {
    check_names(model_.locations, &Location::name, "location");
    for (const auto& loc : model_.locations) {
      for (const auto& other : loc.adjacent) {
        if (other == loc.name)
          error("location " + loc.name, "location is adjacent to itself");
        else if (!model_.find_location(other))
          error("location " + loc.name, "adjacent location '" + other + "' is not declared");
      }
    }
  }

  void check_conditions() {
    check_names(model_.conditions, &Condition::name, "condition");
    for (const auto& cond : model_.conditions) {
      for (const auto& other : cond.excludes) {
        if (other == cond.name)
          error("condition " + cond.name, "condition excludes itself");
        else if (!model_.find_condition(other))
          error("condition " + cond.name, "excluded condition '" + other + "' is not declared");
      }
    }
  }

  void check_condition_refs(const std::string& where, const NameSet& names,
                            const std::string& field) {
    for (const auto& name : names)
      if (!model_.find_condition(name))
        error(where, field + " condition '" + name + "' is not declared");
  }

  // Reports every pair once, in name order.
  void check_exclusive_pairs(const std::string& where, const NameSet& names,
                             const std::string& field) {
    for (auto a = names.begin(); a != names.end(); ++a)
      for (auto b = std::next(a); b != names.end(); ++b)
        if (model_.excludes(*a, *b))
          error(where, field + " contains mutually exclusive conditions '" + *a +
                           "' and '" + *b + "'");
  }

  void check_features() {
    check_names(model_.features, &FunctionalFeature::id, "feature");
    for (const auto& f : model_.features) {
      const std::string where = "feature " + f.id;
      if (f.objects.empty()) warning(where, "feature has no performing object");
      for (const auto& obj : f.objects)
        if (!model_.find_sp_object(obj))
          error(where, "performing object '" + obj + "' is not a declared spobject");
      for (const auto& ref : f.affected)
        if (!model_.find_sp_object(ref.object))
          error(where, "affected object '" + ref.object + "' is not a declared spobject");
      check_condition_refs(where, f.pre, "pre");
      check_condition_refs(where, f.post, "post");
      check_exclusive_pairs(where, f.post, "post");
      for (const auto& loc : f.loc)
        if (!model_.find_location(loc))
          error(where, "location '" + loc + "' is not declared");

      if (f.duration.dmin < Rational(0))
        error(where, "dmin " + f.duration.dmin.to_string() + " is negative");
      if (f.duration.dmin > f.duration.dmax)
        error(where, "dmin exceeds dmax (" + f.duration.dmin.to_string() + " > " +
                         f.duration.dmax.to_string() + ")");

      if (f.timing.is_periodic()) {
        if (!f.timing.period)
          error(where, "periodic timing without a period");
        else if (*f.timing.period <= Rational(0))
          error(where, "period must be positive, got " + f.timing.period->to_string());
      } else if (f.timing.period) {
        error(where, "period given for non-periodic timing");
      }
    }
  }

  void check_cers() {
    for (const auto& [from, to] : model_.declared_cers) {
      const std::string where = "cer " + from + " -> " + to;
      if (!model_.find_feature(from)) error(where, "unknown source feature '" + from + "'");
      if (!model_.find_feature(to)) error(where, "unknown target feature '" + to + "'");
    }
  }

  void check_use_cases() {
    check_names(model_.use_cases, &UseCase::name, "usecase");
    for (const auto& uc : model_.use_cases) {
      const std::string where = "usecase " + uc.name;
      for (const auto& actor : uc.actors)
        if (model_.find_sp_object(actor))
          error(where, "actor '" + actor + "' is an spobject; actors must be external");
      check_condition_refs(where, uc.ucpre, "pre");
      check_exclusive_pairs(where, uc.ucpre, "pre");
      for (std::size_t i = 0; i < uc.events.size(); ++i) {
        const auto& ev = uc.events[i];
        if (ev.index != static_cast<int>(i) + 1)
          error(where, "event at position " + std::to_string(i + 1) + " has index " +
                           std::to_string(ev.index));
        if (!model_.find_feature(ev.feature))
          error(where, "event " + std::to_string(ev.index) + " references unknown feature '" +
                           ev.feature + "'");
      }
      for (const auto& alt : uc.alts) {
        const std::string alt_where = "alt " + std::to_string(alt.at_index);
        if (alt.at_index < 1 || alt.at_index > static_cast<int>(uc.events.size()))
          error(where, alt_where + " branches from nonexistent event index");
        if (alt.events.empty()) error(where, alt_where + " has no events");
        for (const auto& id : alt.events)
          if (!model_.find_feature(id))
            error(where, alt_where + " references unknown feature '" + id + "'");
      }
    }
  }

  const Model& model_;
  std::vector<Diagnostic> out_;
};

}  // namespace

ValidationReport validate_model(const Model& model) { return Validator(model).run(); }

}  // namespace tfmst
