#pragma once

// Stallings core graphs of finitely generated subgroups of F_n.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "freetower/words.hpp"

namespace freetower {

struct Arc {
  int from = 0;
  int to = 0;
  int label = 1;  // generator index; the arc reads x_label forwards

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Folded, trimmed, basepointed core graph in canonical numbering:
/// vertices are numbered in breadth-first order from the basepoint (vertex
/// 0), exploring out-arcs and in-arcs label by label. Two core graphs of the
/// same subgroup are therefore equal as values.
class CoreGraph {
 public:
  CoreGraph(int rank, int vertex_count, std::vector<Arc> arcs);

  int rank() const { return rank_; }
  int vertex_count() const { return vertex_count_; }
  int basepoint() const { return 0; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  /// Always true for values produced by core_graph().
  bool folded() const { return folded_; }

  /// Target of reading `l` from vertex `v`, if that arc exists.
  std::optional<int> follow(int v, Letter l) const;

  friend bool operator==(const CoreGraph& a, const CoreGraph& b) {
    return a.rank_ == b.rank_ && a.vertex_count_ == b.vertex_count_ && a.arcs_ == b.arcs_;
  }

 private:
  int rank_;
  int vertex_count_;
  std::vector<Arc> arcs_;
  bool folded_ = true;
  std::vector<int> table_;  // [v * 2 * rank + letter order key] -> target or -1
};

/// Wedge of loops spelling `gens` at the basepoint, folded and trimmed.
/// Throws MalformedInput for indices above `rank`.
CoreGraph core_graph(std::span<const Word> gens, int rank);
bool contains(const CoreGraph& g, const Word& w);
/// First Betti number E - V + 1.
int subgroup_rank(const CoreGraph& g);
/// True iff the core graph is the rank-n rose.
bool generates_ambient(std::span<const Word> gens, int rank);

std::string to_dot(const CoreGraph& g);

namespace detail {

/// Folding one identification at a time on an explicit arc list. `choose`
/// receives the number of currently foldable arc pairs and returns the index
/// of the pair to fold. The result is trimmed and canonically numbered.
CoreGraph fold_in_order(std::span<const Word> gens, int rank,
                        const std::function<std::size_t(std::size_t)>& choose);

}  // namespace detail

}  // namespace freetower
