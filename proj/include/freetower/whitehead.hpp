#pragma once

// Whitehead graphs of finite sets of cyclic words and the one-sided
// non-separability certificate derived from them.
//
// Vertices are the 2n letters x1, X1, ..., xn, Xn, numbered by
// Letter::order_key(). A cyclic adjacency u v in a word contributes the
// edge {u, v^-1}.

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "freetower/json.hpp"
#include "freetower/words.hpp"

namespace freetower {

class WhiteheadGraph {
 public:
  using Edge = std::pair<Letter, Letter>;  // first < second

  explicit WhiteheadGraph(int rank);
  /// Graph with explicitly given edges (multiplicity 1 each, repeats add up).
  /// Loops and out-of-range vertices throw MalformedInput.
  static WhiteheadGraph from_edges(int rank, std::span<const Edge> edges);

  int rank() const { return rank_; }
  int vertex_count() const { return 2 * rank_; }
  const std::map<Edge, int>& edges() const { return edges_; }
  int multiplicity(Letter u, Letter v) const;
  int total_multiplicity() const;

  void add_edge(Letter u, Letter v, int multiplicity = 1);
  /// Edge-wise sum of multiplicities.
  WhiteheadGraph merged(const WhiteheadGraph& other) const;

  /// Simple-graph adjacency lists indexed by order key.
  std::vector<std::vector<int>> adjacency() const;
  bool incident(Letter v) const;
  bool all_vertices_incident() const;
  /// Connectivity of the subgraph spanned by incident vertices.
  bool connected() const;

  friend bool operator==(const WhiteheadGraph&, const WhiteheadGraph&) = default;

 private:
  int rank_;
  std::map<Edge, int> edges_;
};

/// Throws MalformedInput on empty words or indices above `rank`.
WhiteheadGraph build_whitehead_graph(std::span<const CyclicWord> words, int rank);

/// Articulation points of the simple underlying graph, in letter order.
std::vector<Letter> cut_vertices(const WhiteheadGraph& g);

enum class SeparabilityStatus { not_separable, inconclusive };
enum class SeparabilityBlocker { none, unused_generator, disconnected, cut_vertex };

struct SeparabilityVerdict {
  SeparabilityStatus status = SeparabilityStatus::inconclusive;
  SeparabilityBlocker blocker = SeparabilityBlocker::none;
  int unused_generator = 0;              // set for unused_generator
  std::vector<Letter> cut_vertices;      // set for cut_vertex
  WhiteheadGraph graph{0};
};

/// NOT_SEPARABLE iff the graph over all 2n vertices is connected with no cut
/// vertex and every generator occurs. Trivial words throw MalformedInput.
SeparabilityVerdict separability_obstruction(std::span<const Word> words, int rank);

/// DOT vertex name: `x<k>` for x_k, `x<k>p` for its inverse.
std::string dot_vertex_name(Letter v);
std::string to_dot(const WhiteheadGraph& g);

/// {"rank": n, "edges": [{"u": "x1", "v": "X2", "multiplicity": m}, ...]}
Json to_json(const WhiteheadGraph& g);
WhiteheadGraph whitehead_graph_from_json(const Json& j);

const char* to_string(SeparabilityStatus s);
const char* to_string(SeparabilityBlocker b);

}  // namespace freetower
