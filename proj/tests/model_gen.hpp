#pragma once

// Random valid models for round-trip and property tests.

#include <random>
#include <string>

#include "tfmst/model.hpp"

namespace gen {

inline tfmst::Rational random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(0, 40), den(1, 6);
  return tfmst::Rational(num(rng), den(rng));
}

template <class T>
const T& pick(std::mt19937& rng, const std::vector<T>& items) {
  std::uniform_int_distribution<std::size_t> d(0, items.size() - 1);
  return items[d(rng)];
}

/// Valid by construction: every reference resolves, exclusions are only
/// declared between the two halves of a condition pair and no post set
/// holds both halves, durations are ordered, and use case event indices
/// are dense.
inline tfmst::Model random_model(std::mt19937& rng, std::size_t max_features = 10) {
  using namespace tfmst;
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::size_t> small(0, 3);
  Model m;

  const std::size_t n_loc = 1 + small(rng);
  std::vector<std::string> locs;
  for (std::size_t i = 0; i < n_loc; ++i) locs.push_back("L" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n_loc; ++i) {
    Location loc{locs[i], {}};
    if (i + 1 < n_loc && coin(rng)) loc.adjacent.insert(locs[i + 1]);
    m.locations.push_back(loc);
  }

  const std::size_t n_obj = 1 + small(rng);
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n_obj; ++i) {
    objs.push_back("Obj_" + std::to_string(i));
    SpObject o{objs.back(), std::nullopt};
    if (coin(rng)) o.initial_location = pick(rng, locs);
    m.sp_objects.push_back(o);
  }

  // Conditions come in pairs P<k>.On / P<k>.Off, optionally exclusive.
  const std::size_t n_pairs = 1 + small(rng);
  std::vector<std::string> conds;
  for (std::size_t k = 0; k < n_pairs; ++k) {
    std::string on = "P" + std::to_string(k) + ".On", off = "P" + std::to_string(k) + ".Off";
    Condition c_on{on, {}}, c_off{off, {}};
    if (coin(rng)) c_on.excludes.insert(off);
    m.conditions.push_back(c_on);
    m.conditions.push_back(c_off);
    conds.push_back(on);
    conds.push_back(off);
  }

  std::uniform_int_distribution<std::size_t> feat_count(0, max_features);
  const std::size_t n_feat = feat_count(rng);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n_feat; ++i) {
    FunctionalFeature f;
    f.id = "f" + std::to_string(i) + (coin(rng) ? ".x" : "");
    ids.push_back(f.id);
    if (coin(rng)) f.action = "Act" + std::to_string(small(rng));
    if (coin(rng)) f.objects.push_back(pick(rng, objs));
    for (std::size_t j = small(rng); j > 0; --j) {
      AffectedRef ref{pick(rng, objs), coin(rng) == 1};
      if (std::find(f.affected.begin(), f.affected.end(), ref) == f.affected.end())
        f.affected.push_back(ref);
    }
    for (std::size_t j = small(rng); j > 0; --j) f.pre.insert(pick(rng, conds));
    // At most one side of each pair in post.
    for (std::size_t k = 0; k < n_pairs; ++k) {
      int choice = std::uniform_int_distribution<int>(0, 2)(rng);
      if (choice == 1) f.post.insert(conds[2 * k]);
      if (choice == 2) f.post.insert(conds[2 * k + 1]);
    }
    if (coin(rng)) f.prov.insert("Prov" + std::to_string(small(rng)));
    if (coin(rng)) f.exec.insert("Exec" + std::to_string(small(rng)));
    if (coin(rng)) {
      Rational a = random_rational(rng), b = random_rational(rng);
      f.duration = a <= b ? DurationBounds{a, b} : DurationBounds{b, a};
    }
    if (coin(rng)) f.timing = TimingConstraint::every(random_rational(rng) + Rational(1));
    for (std::size_t j = small(rng); j > 0; --j) f.loc.insert(pick(rng, locs));
    m.features.push_back(std::move(f));
  }

  if (!ids.empty()) {
    for (std::size_t j = small(rng) * 2; j > 0; --j)
      m.declared_cers.emplace(pick(rng, ids), pick(rng, ids));
    for (std::size_t u = small(rng); u > 0; --u) {
      UseCase uc;
      uc.name = "UC" + std::to_string(u);
      if (coin(rng)) uc.actors.insert("Operator");
      for (std::size_t k = 0; k < n_pairs; ++k)
        if (coin(rng)) uc.ucpre.insert(conds[2 * k + 1]);
      const std::size_t n_ev = 1 + small(rng);
      for (std::size_t e = 0; e < n_ev; ++e) {
        EventEntry ev{static_cast<int>(e) + 1, pick(rng, ids), ""};
        if (coin(rng)) ev.description = "step \"" + std::to_string(e) + "\" of the flow";
        uc.events.push_back(ev);
      }
      if (coin(rng)) {
        std::uniform_int_distribution<int> at(1, static_cast<int>(n_ev));
        uc.alts.push_back({at(rng), {pick(rng, ids), pick(rng, ids)}});
      }
      m.use_cases.push_back(std::move(uc));
    }
  }
  return m;
}

}  // namespace gen
