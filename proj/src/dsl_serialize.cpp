#include <sstream>

#include "tfmst/dsl.hpp"

namespace tfmst {

namespace {

template <class Range>
std::string join(const Range& names, const char* sep = ", ") {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += sep;
    out += n;
  }
  return out;
}

std::string quote(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  return out + "\"";
}

void write_feature(std::ostream& os, const FunctionalFeature& f) {
  os << "feature " << f.id << " {\n";
  auto field = [&](const char* label, const std::string& value) {
    if (!value.empty()) os << "  " << label << ": " << value << "\n";
  };
  field("action", f.action);
  std::string affected;
  for (const auto& ref : f.affected) {
    if (!affected.empty()) affected += ", ";
    affected += ref.optional ? "[" + ref.object + "]" : ref.object;
  }
  field("affects", affected);
  field("obj", join(f.objects));
  field("pre", join(f.pre));
  field("post", join(f.post));
  field("prov", join(f.prov));
  field("exec", join(f.exec));
  if (f.duration != DurationBounds{})
    field("duration", f.duration.dmin.to_string() + ".." + f.duration.dmax.to_string());
  if (f.timing.is_periodic() && f.timing.period)
    field("timing", "every " + f.timing.period->to_string());
  field("loc", join(f.loc));
  os << "}\n";
}

void write_use_case(std::ostream& os, const UseCase& uc) {
  os << "usecase " << uc.name << " {\n";
  os << "  actors:" << (uc.actors.empty() ? "" : " " + join(uc.actors)) << "\n";
  os << "  pre:" << (uc.ucpre.empty() ? "" : " " + join(uc.ucpre)) << "\n";
  os << "  events: [\n";
  for (std::size_t i = 0; i < uc.events.size(); ++i) {
    const auto& ev = uc.events[i];
    os << "    " << ev.feature;
    if (!ev.description.empty()) os << " " << quote(ev.description);
    os << (i + 1 < uc.events.size() ? ",\n" : "\n");
  }
  os << "  ]\n";
  for (const auto& alt : uc.alts)
    os << "  alt " << alt.at_index << " -> [" << join(alt.events) << "]\n";
  os << "}\n";
}

}  // namespace

std::string serialize_model(const Model& model) {
  std::ostringstream os;
  bool first_section = true;
  auto section = [&](bool nonempty) {
    if (!nonempty) return false;
    if (!first_section) os << "\n";
    first_section = false;
    return true;
  };

  if (section(!model.sp_objects.empty())) {
    for (const auto& obj : model.sp_objects) {
      os << "spobject " << obj.name;
      if (obj.initial_location) os << " at " << *obj.initial_location;
      os << "\n";
    }
  }
  if (section(!model.locations.empty())) {
    for (const auto& loc : model.locations) {
      os << "location " << loc.name;
      if (!loc.adjacent.empty()) os << " adjacent " << join(loc.adjacent);
      os << "\n";
    }
  }
  if (section(!model.conditions.empty())) {
    for (const auto& cond : model.conditions) {
      os << "condition " << cond.name;
      if (!cond.excludes.empty()) os << " excludes " << join(cond.excludes);
      os << "\n";
    }
  }
  for (const auto& f : model.features) {
    section(true);
    write_feature(os, f);
  }
  if (section(!model.declared_cers.empty())) {
    for (const auto& [from, to] : model.declared_cers) os << "cer " << from << " -> " << to << "\n";
  }
  for (const auto& uc : model.use_cases) {
    section(true);
    write_use_case(os, uc);
  }
  return os.str();
}

}  // namespace tfmst
