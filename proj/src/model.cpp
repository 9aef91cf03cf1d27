#include "tfmst/model.hpp"

#include <algorithm>
#include <map>

namespace tfmst {

namespace {

template <class T, class Key>
const T* find_by(const std::vector<T>& items, Key key, const std::string& name) {
  auto it = std::find_if(items.begin(), items.end(),
                         [&](const T& item) { return item.*key == name; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

const SpObject* Model::find_sp_object(const std::string& name) const {
  return find_by(sp_objects, &SpObject::name, name);
}

const Location* Model::find_location(const std::string& name) const {
  return find_by(locations, &Location::name, name);
}

const Condition* Model::find_condition(const std::string& name) const {
  return find_by(conditions, &Condition::name, name);
}

const FunctionalFeature* Model::find_feature(const std::string& id) const {
  return find_by(features, &FunctionalFeature::id, id);
}

const UseCase* Model::find_use_case(const std::string& name) const {
  return find_by(use_cases, &UseCase::name, name);
}

const FunctionalFeature& Model::feature(const std::string& id) const {
  if (const auto* f = find_feature(id)) return *f;
  throw UnknownIdError("feature", id);
}

bool Model::excludes(const std::string& a, const std::string& b) const {
  const auto* ca = find_condition(a);
  if (ca && ca->excludes.count(b)) return true;
  const auto* cb = find_condition(b);
  return cb && cb->excludes.count(a);
}

bool Model::adjacent(const std::string& a, const std::string& b) const {
  const auto* la = find_location(a);
  if (la && la->adjacent.count(b)) return true;
  const auto* lb = find_location(b);
  return lb && lb->adjacent.count(a);
}

Model close_relations(Model model) {
  std::map<std::string, std::size_t> loc_index;
  for (std::size_t i = 0; i < model.locations.size(); ++i)
    loc_index.emplace(model.locations[i].name, i);
  for (std::size_t i = 0; i < model.locations.size(); ++i) {
    for (const auto& other : model.locations[i].adjacent) {
      auto it = loc_index.find(other);
      if (it != loc_index.end() && it->second != i)
        model.locations[it->second].adjacent.insert(model.locations[i].name);
    }
  }

  std::map<std::string, std::size_t> cond_index;
  for (std::size_t i = 0; i < model.conditions.size(); ++i)
    cond_index.emplace(model.conditions[i].name, i);
  for (std::size_t i = 0; i < model.conditions.size(); ++i) {
    for (const auto& other : model.conditions[i].excludes) {
      auto it = cond_index.find(other);
      if (it != cond_index.end() && it->second != i)
        model.conditions[it->second].excludes.insert(model.conditions[i].name);
    }
  }
  return model;
}

}  // namespace tfmst
