#include "freetower/stallings.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>
#include <utility>

#include "freetower/error.hpp"

namespace freetower {

namespace {

void check_gens(std::span<const Word> gens, int rank) {
  if (rank < 0) throw MalformedInput("rank must be non-negative");
  for (const Word& w : gens) {
    if (w.max_index() > rank) {
      throw MalformedInput("generator " + format(w) + " uses an index above rank " + std::to_string(rank));
    }
  }
}

/// Arcs of the unfolded wedge of loops; vertex 0 is the basepoint.
std::pair<int, std::vector<Arc>> wedge_of_loops(std::span<const Word> gens) {
  int next = 1;
  std::vector<Arc> arcs;
  for (const Word& w : gens) {
    int cur = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
      const int dst = i + 1 == w.size() ? 0 : next++;
      const Letter l = w[i];
      if (l.sign() > 0) {
        arcs.push_back({cur, dst, l.index()});
      } else {
        arcs.push_back({dst, cur, l.index()});
      }
      cur = dst;
    }
  }
  return {next, std::move(arcs)};
}

/// Removes hanging trees (degree-1 non-basepoint vertices, iteratively),
/// then renumbers breadth-first from vertex 0. Input must be folded and
/// connected; vertex ids in `arcs` are below `vertex_count`.
CoreGraph trim_and_canonicalize(int rank, int vertex_count, std::vector<Arc> arcs) {
  const auto n = static_cast<std::size_t>(vertex_count);
  std::vector<int> degree(n, 0);
  std::vector<std::vector<std::size_t>> incident(n);
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    ++degree[static_cast<std::size_t>(arcs[i].from)];
    ++degree[static_cast<std::size_t>(arcs[i].to)];
    incident[static_cast<std::size_t>(arcs[i].from)].push_back(i);
    incident[static_cast<std::size_t>(arcs[i].to)].push_back(i);
  }
  std::vector<char> arc_alive(arcs.size(), 1);
  std::vector<char> vertex_alive(n, 1);
  std::vector<std::size_t> queue;
  for (std::size_t v = 1; v < n; ++v) {
    if (degree[v] <= 1) queue.push_back(v);
  }
  while (!queue.empty()) {
    const std::size_t v = queue.back();
    queue.pop_back();
    if (!vertex_alive[v] || degree[v] > 1) continue;
    vertex_alive[v] = 0;
    for (std::size_t a : incident[v]) {
      if (!arc_alive[a]) continue;
      arc_alive[a] = 0;
      const auto other = static_cast<std::size_t>(arcs[a].from == static_cast<int>(v) ? arcs[a].to : arcs[a].from);
      --degree[v];
      --degree[other];
      if (other != 0 && vertex_alive[other] && degree[other] <= 1) queue.push_back(other);
    }
  }

  // Out/in tables over surviving arcs for breadth-first renumbering.
  const auto slots = static_cast<std::size_t>(2 * rank);
  std::vector<int> table(n * slots, -1);
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (!arc_alive[a]) continue;
    const auto& arc = arcs[a];
    const auto k = static_cast<std::size_t>(arc.label - 1);
    table[static_cast<std::size_t>(arc.from) * slots + 2 * k] = arc.to;
    table[static_cast<std::size_t>(arc.to) * slots + 2 * k + 1] = arc.from;
  }
  std::vector<int> renumber(n, -1);
  std::deque<int> bfs{0};
  renumber[0] = 0;
  int count = 1;
  while (!bfs.empty()) {
    const auto v = static_cast<std::size_t>(bfs.front());
    bfs.pop_front();
    for (std::size_t s = 0; s < slots; ++s) {
      const int w = table[v * slots + s];
      if (w >= 0 && renumber[static_cast<std::size_t>(w)] < 0) {
        renumber[static_cast<std::size_t>(w)] = count++;
        bfs.push_back(w);
      }
    }
  }
  std::vector<Arc> out;
  for (std::size_t a = 0; a < arcs.size(); ++a) {
    if (!arc_alive[a]) continue;
    out.push_back({renumber[static_cast<std::size_t>(arcs[a].from)], renumber[static_cast<std::size_t>(arcs[a].to)],
                   arcs[a].label});
  }
  return CoreGraph(rank, count, std::move(out));
}

/// Incremental folding with union-find: every arc insertion that collides
/// with an existing arc of the same label and direction triggers vertex
/// identification; identifications cascade through a work queue.
class Folder {
 public:
  Folder(int rank, int vertex_count)
      : slots_(static_cast<std::size_t>(2 * rank)),
        parent_(static_cast<std::size_t>(vertex_count)),
        table_(static_cast<std::size_t>(vertex_count) * slots_, -1) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }

  void add_arc(const Arc& arc) {
    const auto k = static_cast<std::size_t>(arc.label - 1);
    link(find(arc.from), 2 * k, find(arc.to));
    link(find(arc.to), 2 * k + 1, find(arc.from));
    drain();
  }

  std::pair<int, std::vector<Arc>> result() {
    const std::size_t n = parent_.size();
    std::vector<int> compact(n, -1);
    int count = 0;
    compact[static_cast<std::size_t>(find(0))] = count++;
    for (std::size_t v = 0; v < n; ++v) {
      const auto r = static_cast<std::size_t>(find(static_cast<int>(v)));
      if (compact[r] < 0) compact[r] = count++;
    }
    std::vector<Arc> arcs;
    for (std::size_t v = 0; v < n; ++v) {
      if (find(static_cast<int>(v)) != static_cast<int>(v)) continue;
      for (std::size_t k = 0; 2 * k < slots_; ++k) {
        const int t = table_[v * slots_ + 2 * k];
        if (t < 0) continue;
        arcs.push_back({compact[v], compact[static_cast<std::size_t>(find(t))], static_cast<int>(k) + 1});
      }
    }
    return {count, std::move(arcs)};
  }

 private:
  int find(int v) {
    while (parent_[static_cast<std::size_t>(v)] != v) {
      parent_[static_cast<std::size_t>(v)] = parent_[static_cast<std::size_t>(parent_[static_cast<std::size_t>(v)])];
      v = parent_[static_cast<std::size_t>(v)];
    }
    return v;
  }

  void link(int from, std::size_t slot, int to) {
    int& cell = table_[static_cast<std::size_t>(from) * slots_ + slot];
    if (cell < 0) {
      cell = to;
    } else {
      pending_.emplace_back(cell, to);
    }
  }

  void drain() {
    while (!pending_.empty()) {
      auto [a, b] = pending_.front();
      pending_.pop_front();
      a = find(a);
      b = find(b);
      if (a == b) continue;
      if (b == find(0)) std::swap(a, b);  // keep the basepoint as a root
      parent_[static_cast<std::size_t>(b)] = a;
      for (std::size_t s = 0; s < slots_; ++s) {
        const int t = table_[static_cast<std::size_t>(b) * slots_ + s];
        if (t >= 0) link(a, s, t);
      }
    }
  }

  std::size_t slots_;
  std::vector<int> parent_;
  std::vector<int> table_;
  std::deque<std::pair<int, int>> pending_;
};

}  // namespace

CoreGraph::CoreGraph(int rank, int vertex_count, std::vector<Arc> arcs)
    : rank_(rank), vertex_count_(vertex_count), arcs_(std::move(arcs)) {
  if (rank < 0 || vertex_count < 1) throw MalformedInput("core graph needs a basepoint");
  const auto slots = static_cast<std::size_t>(2 * rank);
  table_.assign(static_cast<std::size_t>(vertex_count) * slots, -1);
  std::sort(arcs_.begin(), arcs_.end());
  for (const Arc& a : arcs_) {
    if (a.label < 1 || a.label > rank || a.from < 0 || a.to < 0 || a.from >= vertex_count ||
        a.to >= vertex_count) {
      throw MalformedInput("arc out of range");
    }
    const auto k = static_cast<std::size_t>(a.label - 1);
    int& out = table_[static_cast<std::size_t>(a.from) * slots + 2 * k];
    int& in = table_[static_cast<std::size_t>(a.to) * slots + 2 * k + 1];
    if (out >= 0 || in >= 0) folded_ = false;
    out = a.to;
    in = a.from;
  }
}

std::optional<int> CoreGraph::follow(int v, Letter l) const {
  if (l.index() > rank_) return std::nullopt;
  const int t = table_[static_cast<std::size_t>(v) * static_cast<std::size_t>(2 * rank_) +
                       static_cast<std::size_t>(l.order_key())];
  if (t < 0) return std::nullopt;
  return t;
}

CoreGraph core_graph(std::span<const Word> gens, int rank) {
  check_gens(gens, rank);
  auto [vertex_count, arcs] = wedge_of_loops(gens);
  Folder folder(rank, vertex_count);
  for (const Arc& a : arcs) folder.add_arc(a);
  auto [count, folded] = folder.result();
  return trim_and_canonicalize(rank, count, std::move(folded));
}

bool contains(const CoreGraph& g, const Word& w) {
  int v = g.basepoint();
  for (Letter l : w.letters()) {
    auto next = g.follow(v, l);
    if (!next) return false;
    v = *next;
  }
  return v == g.basepoint();
}

int subgroup_rank(const CoreGraph& g) {
  return static_cast<int>(g.arcs().size()) - g.vertex_count() + 1;
}

bool generates_ambient(std::span<const Word> gens, int rank) {
  const CoreGraph g = core_graph(gens, rank);
  return g.vertex_count() == 1 && static_cast<int>(g.arcs().size()) == rank;
}

std::string to_dot(const CoreGraph& g) {
  std::ostringstream out;
  out << "digraph core {\n";
  for (int v = 0; v < g.vertex_count(); ++v) {
    out << "  v" << v << (v == g.basepoint() ? " [shape=doublecircle];\n" : " [shape=circle];\n");
  }
  for (const Arc& a : g.arcs()) {
    out << "  v" << a.from << " -> v" << a.to << " [label=x" << a.label << "];\n";
  }
  out << "}\n";
  return out.str();
}

namespace detail {

CoreGraph fold_in_order(std::span<const Word> gens, int rank,
                        const std::function<std::size_t(std::size_t)>& choose) {
  check_gens(gens, rank);
  auto [vertex_count, arcs] = wedge_of_loops(gens);
  std::vector<int> alias(static_cast<std::size_t>(vertex_count));
  std::iota(alias.begin(), alias.end(), 0);

  while (true) {
    // Distinct arcs with equal label sharing their origin or their terminus.
    std::vector<std::pair<std::size_t, std::size_t>> foldable;
    for (std::size_t i = 0; i < arcs.size(); ++i) {
      for (std::size_t j = i + 1; j < arcs.size(); ++j) {
        if (arcs[i].label != arcs[j].label) continue;
        if (arcs[i].from == arcs[j].from || arcs[i].to == arcs[j].to) foldable.emplace_back(i, j);
      }
    }
    if (foldable.empty()) break;
    const auto [i, j] = foldable[choose(foldable.size()) % foldable.size()];
    const Arc keep = arcs[i];
    const Arc drop = arcs[j];
    // Identify the other endpoints, then drop the duplicate arc.
    int a = keep.from == drop.from ? keep.to : keep.from;
    int b = keep.from == drop.from ? drop.to : drop.from;
    if (b == 0) std::swap(a, b);
    arcs.erase(arcs.begin() + static_cast<std::ptrdiff_t>(j));
    if (a != b) {
      for (Arc& arc : arcs) {
        if (arc.from == b) arc.from = a;
        if (arc.to == b) arc.to = a;
      }
    }
  }
  // Compact vertex ids (basepoint stays 0).
  std::vector<int> compact(static_cast<std::size_t>(vertex_count), -1);
  compact[0] = 0;
  int count = 1;
  for (Arc& arc : arcs) {
    for (int* v : {&arc.from, &arc.to}) {
      auto& c = compact[static_cast<std::size_t>(*v)];
      if (c < 0) c = count++;
      *v = c;
    }
  }
  return trim_and_canonicalize(rank, count, std::move(arcs));
}

}  // namespace detail

}  // namespace freetower
