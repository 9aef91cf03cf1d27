#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tfmst/rational.hpp"

namespace tfmst {

using NameSet = std::set<std::string>;

/// Base of every hard failure raised by the library. Model defects that can
/// be reported are diagnostics instead (see validate.hpp).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A referenced feature, use case or condition does not exist.
class UnknownIdError : public Error {
 public:
  UnknownIdError(const std::string& kind, const std::string& id)
      : Error("unknown " + kind + " '" + id + "'"), id_(id) {}
  const std::string& id() const { return id_; }

 private:
  std::string id_;
};

/// A modeled component able to change its location in space.
struct SpObject {
  std::string name;
  std::optional<std::string> initial_location;

  bool operator==(const SpObject&) const = default;
};

struct Location {
  std::string name;
  NameSet adjacent;

  bool operator==(const Location&) const = default;
};

struct Condition {
  std::string name;
  NameSet excludes;  // mutual exclusion partners

  bool operator==(const Condition&) const = default;
};

struct DurationBounds {
  Rational dmin;
  Rational dmax;

  bool operator==(const DurationBounds&) const = default;
};

struct TimingConstraint {
  enum class Kind { kNone, kPeriodic };

  Kind kind = Kind::kNone;
  std::optional<Rational> period;  // set iff kind == kPeriodic

  static TimingConstraint none() { return {}; }
  static TimingConstraint every(Rational p) { return {Kind::kPeriodic, p}; }
  bool is_periodic() const { return kind == Kind::kPeriodic; }

  bool operator==(const TimingConstraint&) const = default;
};

/// Member of a feature's affected set; `optional` marks a
/// constraint-dependent member, written `[C]` in the text form.
struct AffectedRef {
  std::string object;
  bool optional = false;

  bool operator==(const AffectedRef&) const = default;
};

/// One functional feature: a node of the topological space.
///
/// `objects` holds the sp-object(s) performing the action. Most features
/// have exactly one; jointly performed actions (e.g. two robots carrying a
/// load together) list several. Prov and Exec are stored verbatim and take
/// no part in any analysis.
struct FunctionalFeature {
  std::string id;
  std::string action;
  std::vector<AffectedRef> affected;
  std::vector<std::string> objects;
  NameSet pre;
  NameSet post;
  NameSet prov;
  NameSet exec;
  DurationBounds duration;
  TimingConstraint timing;
  NameSet loc;

  bool operator==(const FunctionalFeature&) const = default;
};

struct EventEntry {
  int index = 0;  // 1-based, dense within its use case
  std::string feature;
  std::string description;

  bool operator==(const EventEntry&) const = default;
};

struct AltFlow {
  int at_index = 0;
  std::vector<std::string> events;

  bool operator==(const AltFlow&) const = default;
};

struct UseCase {
  std::string name;
  NameSet actors;
  NameSet ucpre;
  std::vector<EventEntry> events;
  std::vector<AltFlow> alts;

  bool operator==(const UseCase&) const = default;
};

using CerPair = std::pair<std::string, std::string>;

/// A complete TopFunST model. Feature order is the canonical node order for
/// every matrix built from it.
struct Model {
  std::vector<SpObject> sp_objects;
  std::vector<Location> locations;
  std::vector<Condition> conditions;
  std::vector<FunctionalFeature> features;
  std::set<CerPair> declared_cers;
  std::vector<UseCase> use_cases;

  const SpObject* find_sp_object(const std::string& name) const;
  const Location* find_location(const std::string& name) const;
  const Condition* find_condition(const std::string& name) const;
  const FunctionalFeature* find_feature(const std::string& id) const;
  const UseCase* find_use_case(const std::string& name) const;

  /// Throwing variant of find_feature.
  const FunctionalFeature& feature(const std::string& id) const;

  /// Symmetric: true if either side declares the other.
  bool excludes(const std::string& a, const std::string& b) const;
  bool adjacent(const std::string& a, const std::string& b) const;

  bool operator==(const Model&) const = default;
};

/// Makes location adjacency and condition exclusion symmetric. Names that
/// do not resolve are left alone; validate_model reports them.
/// Idempotent: close_relations(close_relations(m)) == close_relations(m).
Model close_relations(Model model);

}  // namespace tfmst
