#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "tfmst/model.hpp"

namespace tfmst {

/// Source of cause-and-effect edges.
enum class CerMode {
  kDeclared,  // exactly the model's `cer` statements
  kInferred,  // x -> y iff Post(x) and Pre(y) intersect, x != y
  kUnion,     // entry-wise OR of the two
};

std::string to_string(CerMode mode);

/// Row-major square boolean matrix.
class BoolMatrix {
 public:
  BoolMatrix() = default;
  explicit BoolMatrix(std::size_t n) : n_(n), cells_(n * n, 0) {}

  std::size_t size() const { return n_; }
  bool operator()(std::size_t row, std::size_t col) const { return cells_[row * n_ + col] != 0; }
  void set(std::size_t row, std::size_t col, bool value = true) {
    cells_[row * n_ + col] = value ? 1 : 0;
  }

  bool operator==(const BoolMatrix&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<unsigned char> cells_;
};

/// The cause-and-effect relation graph: ordered feature ids plus the n x n
/// adjacency matrix where m(x, y) is set iff there is an edge x -> y.
class CerGraph {
 public:
  CerGraph() = default;

  /// Throws Error on duplicate node ids.
  explicit CerGraph(std::vector<std::string> nodes);

  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::string>& nodes() const { return nodes_; }
  const std::string& node(std::size_t index) const { return nodes_[index]; }
  const BoolMatrix& matrix() const { return matrix_; }

  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  /// Throws UnknownIdError.
  std::size_t index_of(const std::string& id) const;

  bool has_edge(std::size_t from, std::size_t to) const { return matrix_(from, to); }
  bool has_edge(const std::string& from, const std::string& to) const;
  void add_edge(std::size_t from, std::size_t to) { matrix_.set(from, to); }
  void add_edge(const std::string& from, const std::string& to);

  /// Successor indices in ascending index order.
  std::vector<std::size_t> successors(std::size_t node) const;

  /// All edges as id pairs, in (row, column) order.
  std::vector<CerPair> edges() const;

  bool operator==(const CerGraph& other) const {
    return nodes_ == other.nodes_ && matrix_ == other.matrix_;
  }

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  BoolMatrix matrix_;
};

CerGraph build_cer_graph(const Model& model, CerMode mode);

// ---------------------------------------------------------------------------
// Functioning cycles

using Cycle = std::vector<std::string>;

constexpr std::size_t kDefaultCycleLimit = 10'000;

class CycleLimitExceeded : public Error {
 public:
  explicit CycleLimitExceeded(std::size_t limit)
      : Error("cycle enumeration limit exceeded (more than " + std::to_string(limit) +
              " simple cycles)"),
        limit_(limit) {}
  std::size_t limit() const { return limit_; }

 private:
  std::size_t limit_;
};

/// Rotates a cycle so that it starts at its lexicographically smallest id.
Cycle canonical_rotation(Cycle cycle);

/// Every simple cycle (self-loops included) in canonical rotation, sorted.
/// Throws CycleLimitExceeded rather than returning a partial list.
std::vector<Cycle> find_functioning_cycles(const CerGraph& graph,
                                           std::size_t limit = kDefaultCycleLimit);

// ---------------------------------------------------------------------------
// Subsystems

enum class SubsystemKind { kWeak, kStrong };

std::string to_string(SubsystemKind kind);

struct Subsystem {
  SubsystemKind kind = SubsystemKind::kWeak;
  std::vector<std::string> members;  // sorted

  bool operator==(const Subsystem&) const = default;
};

/// Weakly or strongly connected components, sorted by smallest member.
std::vector<Subsystem> find_subsystems(const CerGraph& graph, SubsystemKind kind);

// ---------------------------------------------------------------------------
// Reachability

/// Nodes reachable by a nonempty path; `start` itself only via a cycle.
std::set<std::string> reachable_from(const CerGraph& graph, const std::string& start);

/// Same node order; closure(x, y) set iff a nonempty path x -> y exists.
CerGraph transitive_closure(const CerGraph& graph);

struct InteractionViolation {
  CerPair pair;
  std::vector<std::string> witness;  // shortest path, lexicographically least among ties

  bool operator==(const InteractionViolation&) const = default;
};

/// A forbidden pair (a, b) is violated when executing a can lead to b.
/// Throws UnknownIdError for pairs naming unknown nodes.
std::vector<InteractionViolation> check_interactions(const CerGraph& graph,
                                                     const std::set<CerPair>& forbidden);

/// Graphviz text: one labeled node per feature, one edge per set entry.
std::string export_dot(const CerGraph& graph, const Model& model);

}  // namespace tfmst
