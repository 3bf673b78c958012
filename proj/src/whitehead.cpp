#include "freetower/whitehead.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "freetower/error.hpp"

namespace freetower {

namespace {

void check_vertex(Letter v, int rank) {
  if (v.index() < 1 || v.index() > rank) {
    throw MalformedInput("vertex " + format(v) + " outside rank " + std::to_string(rank));
  }
}

}  // namespace

WhiteheadGraph::WhiteheadGraph(int rank) : rank_(rank) {
  if (rank < 0) throw MalformedInput("rank must be non-negative");
}

WhiteheadGraph WhiteheadGraph::from_edges(int rank, std::span<const Edge> edges) {
  WhiteheadGraph g(rank);
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

void WhiteheadGraph::add_edge(Letter u, Letter v, int multiplicity) {
  check_vertex(u, rank_);
  check_vertex(v, rank_);
  if (u == v) throw MalformedInput("loop at " + format(u) + " cannot arise from reduced words");
  if (multiplicity < 1) throw MalformedInput("edge multiplicity must be positive");
  edges_[std::minmax(u, v)] += multiplicity;
}

int WhiteheadGraph::multiplicity(Letter u, Letter v) const {
  auto it = edges_.find(std::minmax(u, v));
  return it == edges_.end() ? 0 : it->second;
}

int WhiteheadGraph::total_multiplicity() const {
  int total = 0;
  for (const auto& [e, m] : edges_) total += m;
  return total;
}

WhiteheadGraph WhiteheadGraph::merged(const WhiteheadGraph& other) const {
  WhiteheadGraph out(std::max(rank_, other.rank_));
  for (const auto& [e, m] : edges_) out.add_edge(e.first, e.second, m);
  for (const auto& [e, m] : other.edges_) out.add_edge(e.first, e.second, m);
  return out;
}

std::vector<std::vector<int>> WhiteheadGraph::adjacency() const {
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(vertex_count()));
  for (const auto& [e, m] : edges_) {
    adj[static_cast<std::size_t>(e.first.order_key())].push_back(e.second.order_key());
    adj[static_cast<std::size_t>(e.second.order_key())].push_back(e.first.order_key());
  }
  return adj;
}

bool WhiteheadGraph::incident(Letter v) const {
  return std::any_of(edges_.begin(), edges_.end(),
                     [v](const auto& e) { return e.first.first == v || e.first.second == v; });
}

bool WhiteheadGraph::all_vertices_incident() const {
  const auto adj = adjacency();
  return std::all_of(adj.begin(), adj.end(), [](const auto& a) { return !a.empty(); });
}

bool WhiteheadGraph::connected() const {
  const auto adj = adjacency();
  int start = -1;
  int incident_count = 0;
  for (int v = 0; v < vertex_count(); ++v) {
    if (!adj[static_cast<std::size_t>(v)].empty()) {
      ++incident_count;
      if (start < 0) start = v;
    }
  }
  if (start < 0) return true;
  std::vector<char> seen(adj.size(), 0);
  std::vector<int> stack{start};
  seen[static_cast<std::size_t>(start)] = 1;
  int reached = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++reached;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = 1;
        stack.push_back(w);
      }
    }
  }
  return reached == incident_count;
}

WhiteheadGraph build_whitehead_graph(std::span<const CyclicWord> words, int rank) {
  WhiteheadGraph g(rank);
  for (const auto& w : words) {
    if (w.empty()) throw MalformedInput("Whitehead graphs need nonempty cyclic words");
    const auto& l = w.letters();
    for (Letter x : l) check_vertex(x, rank);
    for (std::size_t i = 0; i < l.size(); ++i) {
      g.add_edge(l[i], l[(i + 1) % l.size()].inverse());
    }
  }
  return g;
}

std::vector<Letter> cut_vertices(const WhiteheadGraph& g) {
  // Tarjan's low-link articulation points, iterative.
  const auto adj = g.adjacency();
  const std::size_t n = adj.size();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<char> is_cut(n, 0);
  int timer = 0;

  struct Frame {
    int v;
    int parent;
    std::size_t next;
    int children;
  };

  for (std::size_t root = 0; root < n; ++root) {
    if (disc[root] >= 0 || adj[root].empty()) continue;
    std::vector<Frame> stack{{static_cast<int>(root), -1, 0, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      Frame& f = stack.back();
      const auto& nbrs = adj[static_cast<std::size_t>(f.v)];
      if (f.next < nbrs.size()) {
        const int w = nbrs[f.next++];
        if (w == f.parent) continue;  // simple graph: a single parent edge
        if (disc[static_cast<std::size_t>(w)] < 0) {
          disc[static_cast<std::size_t>(w)] = low[static_cast<std::size_t>(w)] = timer++;
          ++f.children;
          stack.push_back({w, f.v, 0, 0});
        } else {
          low[static_cast<std::size_t>(f.v)] =
              std::min(low[static_cast<std::size_t>(f.v)], disc[static_cast<std::size_t>(w)]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (stack.empty()) {
        if (done.children > 1) is_cut[static_cast<std::size_t>(done.v)] = 1;
        continue;
      }
      Frame& parent = stack.back();
      auto pv = static_cast<std::size_t>(parent.v);
      low[pv] = std::min(low[pv], low[static_cast<std::size_t>(done.v)]);
      if (parent.parent >= 0 && low[static_cast<std::size_t>(done.v)] >= disc[pv]) is_cut[pv] = 1;
    }
  }
  std::vector<Letter> out;
  for (std::size_t v = 0; v < n; ++v) {
    if (is_cut[v]) out.push_back(Letter::from_order_key(static_cast<int>(v)));
  }
  return out;
}

SeparabilityVerdict separability_obstruction(std::span<const Word> words, int rank) {
  std::vector<CyclicWord> cores;
  cores.reserve(words.size());
  for (const Word& w : words) {
    if (w.empty()) throw MalformedInput("separability needs nontrivial words");
    cores.push_back(cyclic_reduce(w).cyclic());
  }
  SeparabilityVerdict verdict;
  verdict.graph = build_whitehead_graph(cores, rank);

  std::set<int> used;
  for (const auto& c : cores) {
    for (Letter l : c.letters()) used.insert(l.index());
  }
  for (int k = 1; k <= rank; ++k) {
    if (!used.count(k)) {
      verdict.blocker = SeparabilityBlocker::unused_generator;
      verdict.unused_generator = k;
      return verdict;
    }
  }
  if (!verdict.graph.connected()) {
    verdict.blocker = SeparabilityBlocker::disconnected;
    return verdict;
  }
  verdict.cut_vertices = cut_vertices(verdict.graph);
  if (!verdict.cut_vertices.empty()) {
    verdict.blocker = SeparabilityBlocker::cut_vertex;
    return verdict;
  }
  verdict.status = SeparabilityStatus::not_separable;
  return verdict;
}

std::string dot_vertex_name(Letter v) {
  return "x" + std::to_string(v.index()) + (v.sign() < 0 ? "p" : "");
}

std::string to_dot(const WhiteheadGraph& g) {
  std::ostringstream out;
  out << "graph whitehead {\n";
  for (int key = 0; key < g.vertex_count(); ++key) {
    out << "  " << dot_vertex_name(Letter::from_order_key(key)) << ";\n";
  }
  for (const auto& [e, m] : g.edges()) {
    out << "  " << dot_vertex_name(e.first) << " -- " << dot_vertex_name(e.second) << " [label=" << m << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json to_json(const WhiteheadGraph& g) {
  Json edges = Json::array();
  for (const auto& [e, m] : g.edges()) {
    Json item;
    item["u"] = format(e.first);
    item["v"] = format(e.second);
    item["multiplicity"] = m;
    edges.push_back(std::move(item));
  }
  Json j;
  j["rank"] = g.rank();
  j["edges"] = std::move(edges);
  return j;
}

WhiteheadGraph whitehead_graph_from_json(const Json& j) {
  auto single = [](const Json& v) {
    const auto ls = parse_letters(v.get<std::string>());
    if (ls.size() != 1) throw MalformedInput("graph vertex must be a single letter");
    return ls.front();
  };
  try {
    WhiteheadGraph g(j.at("rank").get<int>());
    for (const auto& e : j.at("edges")) {
      const int m = e.at("multiplicity").get<int>();
      if (m < 1) throw MalformedInput("edge multiplicity must be positive");
      g.add_edge(single(e.at("u")), single(e.at("v")), m);
    }
    return g;
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad graph JSON: ") + e.what());
  }
}

const char* to_string(SeparabilityStatus s) {
  return s == SeparabilityStatus::not_separable ? "NOT_SEPARABLE" : "INCONCLUSIVE";
}

const char* to_string(SeparabilityBlocker b) {
  switch (b) {
    case SeparabilityBlocker::none: return "none";
    case SeparabilityBlocker::unused_generator: return "unused_generator";
    case SeparabilityBlocker::disconnected: return "disconnected";
    case SeparabilityBlocker::cut_vertex: return "cut_vertex";
  }
  return "none";
}

}  // namespace freetower
