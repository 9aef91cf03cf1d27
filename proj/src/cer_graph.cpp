#include "tfmst/cer_graph.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <numeric>
#include <sstream>

namespace tfmst {

std::string to_string(CerMode mode) {
  switch (mode) {
    case CerMode::kDeclared: return "declared";
    case CerMode::kInferred: return "inferred";
    case CerMode::kUnion: return "union";
  }
  return "union";
}

std::string to_string(SubsystemKind kind) {
  return kind == SubsystemKind::kWeak ? "weak-component" : "strong-component";
}

CerGraph::CerGraph(std::vector<std::string> nodes)
    : nodes_(std::move(nodes)), matrix_(nodes_.size()) {
  for (std::size_t i = 0; i < nodes_.size(); ++i)
    if (!index_.emplace(nodes_[i], i).second)
      throw Error("duplicate graph node '" + nodes_[i] + "'");
}

std::size_t CerGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownIdError("feature", id);
  return it->second;
}

bool CerGraph::has_edge(const std::string& from, const std::string& to) const {
  return has_edge(index_of(from), index_of(to));
}

void CerGraph::add_edge(const std::string& from, const std::string& to) {
  add_edge(index_of(from), index_of(to));
}

std::vector<std::size_t> CerGraph::successors(std::size_t node) const {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < size(); ++j)
    if (matrix_(node, j)) out.push_back(j);
  return out;
}

std::vector<CerPair> CerGraph::edges() const {
  std::vector<CerPair> out;
  for (std::size_t i = 0; i < size(); ++i)
    for (std::size_t j = 0; j < size(); ++j)
      if (matrix_(i, j)) out.emplace_back(nodes_[i], nodes_[j]);
  return out;
}

CerGraph build_cer_graph(const Model& model, CerMode mode) {
  std::vector<std::string> ids;
  ids.reserve(model.features.size());
  for (const auto& f : model.features) ids.push_back(f.id);
  CerGraph graph(std::move(ids));

  if (mode != CerMode::kInferred) {
    for (const auto& [from, to] : model.declared_cers) graph.add_edge(from, to);
  }
  if (mode != CerMode::kDeclared) {
    const auto& fs = model.features;
    for (std::size_t x = 0; x < fs.size(); ++x) {
      for (std::size_t y = 0; y < fs.size(); ++y) {
        if (x == y) continue;
        const bool linked = std::any_of(fs[x].post.begin(), fs[x].post.end(),
                                        [&](const std::string& c) { return fs[y].pre.count(c) != 0; });
        if (linked) graph.add_edge(x, y);
      }
    }
  }
  return graph;
}

// ---------------------------------------------------------------------------

Cycle canonical_rotation(Cycle cycle) {
  if (cycle.empty()) return cycle;
  auto smallest = std::min_element(cycle.begin(), cycle.end());
  std::rotate(cycle.begin(), smallest, cycle.end());
  return cycle;
}

namespace {

// Tarjan's algorithm over the nodes where `active` is set. Returns the
// component number of every node (or npos for inactive ones).
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

std::vector<std::size_t> strong_components(const CerGraph& graph,
                                           const std::vector<bool>& active) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> index(n, kNone), low(n, 0), comp(n, kNone);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  std::size_t counter = 0, comp_count = 0;

  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < n; ++w) {
      if (!active[w] || !graph.has_edge(v, w)) continue;
      if (index[w] == kNone) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = comp_count;
      } while (w != v);
      ++comp_count;
    }
  };

  for (std::size_t v = 0; v < n; ++v)
    if (active[v] && index[v] == kNone) visit(v);
  return comp;
}

// Johnson's elementary circuit enumeration.
class CircuitFinder {
 public:
  CircuitFinder(const CerGraph& graph, std::size_t limit)
      : graph_(graph), limit_(limit), n_(graph.size()), blocked_(n_), blocked_by_(n_),
        in_scope_(n_) {}

  std::vector<Cycle> run() {
    for (std::size_t s = 0; s < n_; ++s) {
      std::vector<bool> active(n_, false);
      for (std::size_t v = s; v < n_; ++v) active[v] = true;
      auto comp = strong_components(graph_, active);
      for (std::size_t v = 0; v < n_; ++v) in_scope_[v] = active[v] && comp[v] == comp[s];
      for (std::size_t v = 0; v < n_; ++v) {
        blocked_[v] = false;
        blocked_by_[v].clear();
      }
      start_ = s;
      circuit(s);
    }
    std::vector<Cycle> out;
    out.reserve(found_.size());
    for (auto& c : found_) out.push_back(canonical_rotation(std::move(c)));
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool circuit(std::size_t v) {
    bool closed = false;
    path_.push_back(v);
    blocked_[v] = true;
    for (std::size_t w = 0; w < n_; ++w) {
      if (!in_scope_[w] || !graph_.has_edge(v, w)) continue;
      if (w == start_) {
        emit();
        closed = true;
      } else if (!blocked_[w] && circuit(w)) {
        closed = true;
      }
    }
    if (closed) {
      unblock(v);
    } else {
      for (std::size_t w = 0; w < n_; ++w)
        if (in_scope_[w] && graph_.has_edge(v, w)) blocked_by_[w].insert(v);
    }
    path_.pop_back();
    return closed;
  }

  void unblock(std::size_t v) {
    blocked_[v] = false;
    auto pending = std::move(blocked_by_[v]);
    blocked_by_[v].clear();
    for (std::size_t w : pending)
      if (blocked_[w]) unblock(w);
  }

  void emit() {
    if (found_.size() >= limit_) throw CycleLimitExceeded(limit_);
    Cycle cycle;
    cycle.reserve(path_.size());
    for (std::size_t v : path_) cycle.push_back(graph_.node(v));
    found_.push_back(std::move(cycle));
  }

  const CerGraph& graph_;
  std::size_t limit_;
  std::size_t n_;
  std::size_t start_ = 0;
  std::vector<bool> blocked_;
  std::vector<std::set<std::size_t>> blocked_by_;
  std::vector<bool> in_scope_;
  std::vector<std::size_t> path_;
  std::vector<Cycle> found_;
};

}  // namespace

std::vector<Cycle> find_functioning_cycles(const CerGraph& graph, std::size_t limit) {
  return CircuitFinder(graph, limit).run();
}

// ---------------------------------------------------------------------------

std::vector<Subsystem> find_subsystems(const CerGraph& graph, SubsystemKind kind) {
  const std::size_t n = graph.size();
  std::vector<std::size_t> comp;
  if (kind == SubsystemKind::kStrong) {
    comp = strong_components(graph, std::vector<bool>(n, true));
  } else {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t v) {
      return parent[v] == v ? v : parent[v] = root(parent[v]);
    };
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (graph.has_edge(i, j)) parent[root(i)] = root(j);
    comp.resize(n);
    for (std::size_t v = 0; v < n; ++v) comp[v] = root(v);
  }

  std::map<std::size_t, std::vector<std::string>> groups;
  for (std::size_t v = 0; v < n; ++v) groups[comp[v]].push_back(graph.node(v));
  std::vector<Subsystem> out;
  for (auto& [key, members] : groups) {
    std::sort(members.begin(), members.end());
    out.push_back({kind, std::move(members)});
  }
  std::sort(out.begin(), out.end(), [](const Subsystem& a, const Subsystem& b) {
    return a.members.front() < b.members.front();
  });
  return out;
}

// ---------------------------------------------------------------------------

std::set<std::string> reachable_from(const CerGraph& graph, const std::string& start) {
  const std::size_t s = graph.index_of(start);
  std::vector<bool> seen(graph.size(), false);
  std::vector<std::size_t> frontier = graph.successors(s);
  for (std::size_t v : frontier) seen[v] = true;
  while (!frontier.empty()) {
    std::size_t v = frontier.back();
    frontier.pop_back();
    for (std::size_t w : graph.successors(v)) {
      if (!seen[w]) {
        seen[w] = true;
        frontier.push_back(w);
      }
    }
  }
  std::set<std::string> out;
  for (std::size_t v = 0; v < graph.size(); ++v)
    if (seen[v]) out.insert(graph.node(v));
  return out;
}

CerGraph transitive_closure(const CerGraph& graph) {
  CerGraph closure = graph;
  const std::size_t n = graph.size();
  // Warshall: after step k, paths through intermediates {0..k} are closed.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (closure.has_edge(i, k))
        for (std::size_t j = 0; j < n; ++j)
          if (closure.has_edge(k, j)) closure.add_edge(i, j);
  return closure;
}

namespace {

// Layered BFS. Each layer is ordered by path, so the first node to reach a
// successor hands it the lexicographically least shortest path.
std::optional<std::vector<std::string>> shortest_witness(const CerGraph& graph, std::size_t from,
                                                         std::size_t to) {
  using Entry = std::pair<std::vector<std::string>, std::size_t>;
  std::vector<bool> seen(graph.size(), false);
  std::vector<Entry> layer{{{graph.node(from)}, from}};
  while (!layer.empty()) {
    std::vector<Entry> next;
    for (const auto& [path, v] : layer) {
      for (std::size_t w : graph.successors(v)) {
        if (seen[w] || (w == from && to != from)) continue;
        seen[w] = true;
        auto extended = path;
        extended.push_back(graph.node(w));
        if (w == to) return extended;
        next.emplace_back(std::move(extended), w);
      }
    }
    std::sort(next.begin(), next.end());
    layer = std::move(next);
  }
  return std::nullopt;
}

}  // namespace

std::vector<InteractionViolation> check_interactions(const CerGraph& graph,
                                                     const std::set<CerPair>& forbidden) {
  std::vector<InteractionViolation> out;
  for (const auto& pair : forbidden) {
    const std::size_t a = graph.index_of(pair.first);
    const std::size_t b = graph.index_of(pair.second);
    if (auto witness = shortest_witness(graph, a, b)) out.push_back({pair, std::move(*witness)});
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

std::string quoted(const std::string& text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string dot_id(const std::string& id) {
  static const std::set<std::string> kKeywords = {"node", "edge", "graph", "digraph", "subgraph",
                                                  "strict"};
  std::string lower;
  for (char c : id) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  bool plain = !id.empty() && !std::isdigit(static_cast<unsigned char>(id[0])) &&
               !kKeywords.count(lower);
  for (char c : id)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') plain = false;
  return plain ? id : quoted(id);
}

}  // namespace

std::string export_dot(const CerGraph& graph, const Model& model) {
  std::ostringstream os;
  os << "digraph cer {\n";
  for (const auto& id : graph.nodes()) {
    const auto* f = model.find_feature(id);
    std::string label = id;
    if (f && !f->action.empty()) label += ": " + f->action;
    os << "  " << dot_id(id) << " [label=" << quoted(label) << "];\n";
  }
  for (const auto& [from, to] : graph.edges()) os << "  " << dot_id(from) << " -> " << dot_id(to) << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace tfmst
