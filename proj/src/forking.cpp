#include "freetower/forking.hpp"

#include <algorithm>
#include <set>

#include "freetower/error.hpp"
#include "freetower/presentations.hpp"
#include "freetower/stallings.hpp"

namespace freetower {

Word b_word(int i) {
  if (i < 1) throw MalformedInput("b_word index must be positive");
  std::vector<Letter> raw;
  for (int k = i + 1; k >= 1; --k) raw.emplace_back(k, 1);
  for (int k = 2; k <= i; ++k) raw.insert(raw.end(), 2, Letter(k, 1));
  raw.emplace_back(i + 1, 1);
  return Word(raw);
}

Normalization normalize_for_witness(const Word& a, int rank) {
  if (a.empty()) throw MalformedInput("cannot normalize the trivial word");
  if (a.max_index() > rank) throw MalformedInput("word uses an index above rank " + std::to_string(rank));

  const CyclicWord canonical = cyclic_reduce(a).cyclic();
  std::vector<int> order;  // core indices by first appearance
  for (Letter l : canonical.letters())
    if (std::find(order.begin(), order.end(), l.index()) == order.end()) order.push_back(l.index());

  Normalization out;
  if (order.size() == 1) {
    out.special_case_power = true;
    out.sigma = FreeMap::identity(rank);
    out.normalized = a;
    out.core = cyclic_reduce(a).core;
    return out;
  }

  const int smallest = *std::min_element(order.begin(), order.end());
  const int n = std::max(rank, static_cast<int>(order.size()) + 1);
  std::vector<int> target(static_cast<std::size_t>(n + 1), 0);
  std::vector<bool> taken(static_cast<std::size_t>(n + 1), false);
  auto assign = [&](int from, int to) {
    target[static_cast<std::size_t>(from)] = to;
    taken[static_cast<std::size_t>(to)] = true;
  };
  assign(smallest, 1);
  int next = 3;
  for (int idx : order)
    if (idx != smallest) assign(idx, next++);
  int fill = 1;
  for (int idx = 1; idx <= n; ++idx) {
    if (target[static_cast<std::size_t>(idx)] != 0) continue;
    while (taken[static_cast<std::size_t>(fill)]) ++fill;
    assign(idx, fill);
  }

  std::vector<Letter> images;
  for (int idx = 1; idx <= n; ++idx) images.emplace_back(target[static_cast<std::size_t>(idx)], 1);
  out.sigma = FreeMap::from_letters(n, images);
  out.normalized = apply(out.sigma, a);
  out.core = cyclic_reduce(out.normalized).core;
  return out;
}

namespace {

constexpr const char* kSpecialNote =
    "cyclic core is a power of one basis element, hence primitive up to conjugacy: "
    "the type is the generic type p0, whose weight is infinite; no graph certificate";

int required_index(const Normalization& norm) {
  return norm.special_case_power ? 1 : std::max(1, norm.core.max_index() - 1);
}

}  // namespace

int minimal_fork_index(const Word& a) {
  if (a.empty()) throw MalformedInput("trivial word");
  return required_index(normalize_for_witness(a, a.max_index()));
}

ForkReport fork_witness(const Word& a, int i) {
  if (i < 1) throw MalformedInput("index i must be positive");
  ForkReport r;
  r.input_word = a;
  r.normalization = normalize_for_witness(a, a.max_index());
  r.index_i = i;
  r.ambient_rank = i + 1;
  r.graph = WhiteheadGraph(i + 1);
  if (r.normalization.special_case_power) {
    r.verdict = ForkVerdict::special_case_power;
    r.note = kSpecialNote;
    return r;
  }
  if (r.normalization.core.max_index() > i + 1) {
    throw MalformedInput("normalized word needs rank " + std::to_string(r.normalization.core.max_index()) +
                         " but i + 1 = " + std::to_string(i + 1));
  }
  const std::vector<CyclicWord> words = {CyclicWord(r.normalization.core), CyclicWord(b_word(i))};
  r.graph = build_whitehead_graph(words, i + 1);
  r.connected = r.graph.connected();
  r.all_vertices_incident = r.graph.all_vertices_incident();
  r.cut_vertices = cut_vertices(r.graph);
  const bool forks = r.connected && r.all_vertices_incident && r.cut_vertices.empty();
  r.verdict = forks ? ForkVerdict::forks : ForkVerdict::inconclusive;
  r.note = forks ? "union Whitehead graph is connected with no cut vertex: {a, b_i} is not separable"
                 : "union Whitehead graph admits a cut vertex or is disconnected";
  return r;
}

bool WeightReport::complete() const {
  if (special_case_power) return true;
  return std::all_of(generation.begin(), generation.end(), [](const auto& g) { return g.generates; }) &&
         std::all_of(forks.begin(), forks.end(), [](const auto& f) { return f.verdict == ForkVerdict::forks; });
}

WeightReport weight_witness(const Word& a, int count) {
  if (a.empty()) throw MalformedInput("trivial word");
  if (count < 0) throw MalformedInput("count must be non-negative");
  WeightReport r;
  r.input_word = a;
  r.count = count;
  const Normalization norm = normalize_for_witness(a, a.max_index());
  if (norm.special_case_power) {
    r.special_case_power = true;
    r.note = kSpecialNote;
    return r;
  }
  const int start = required_index(norm);
  for (int n = start; n < start + count; ++n) {
    GenerationCertificate g;
    g.rank = n + 1;
    for (int k = 1; k <= n; ++k) g.generators.push_back(b_word(k));
    g.generators.push_back(Word::generator(n + 1));
    g.generates = generates_ambient(g.generators, g.rank);
    r.generation.push_back(std::move(g));
    r.forks.push_back(fork_witness(a, n));
  }
  r.note = count == 0 ? "no indices requested; the report is vacuous"
                      : "b_1..b_n with x_{n+1} generate each ambient group, and each b_n forks with a; "
                        "together these witness preweight at least " +
                            std::to_string(count);
  return r;
}

namespace {

Json letters_json(const std::vector<Letter>& ls) {
  Json out = Json::array();
  for (Letter l : ls) out.push_back(format(l));
  return out;
}

Json words_json(const std::vector<Word>& ws) {
  Json out = Json::array();
  for (const Word& w : ws) out.push_back(format(w));
  return out;
}

ForkVerdict verdict_from_string(const std::string& s) {
  if (s == "FORKS") return ForkVerdict::forks;
  if (s == "SPECIAL_CASE_POWER") return ForkVerdict::special_case_power;
  if (s == "INCONCLUSIVE") return ForkVerdict::inconclusive;
  throw MalformedInput("unknown verdict '" + s + "'");
}

Json normalization_json(const Normalization& n) {
  Json j;
  j["special_case_power"] = n.special_case_power;
  j["sigma"] = to_json(n.sigma);
  j["normalized"] = format(n.normalized);
  j["core"] = format(n.core);
  return j;
}

Normalization normalization_from_json(const Json& j) {
  Normalization n;
  n.special_case_power = j.at("special_case_power").get<bool>();
  n.sigma = free_map_from_json(j.at("sigma"));
  n.normalized = parse_word(j.at("normalized").get<std::string>());
  n.core = parse_word(j.at("core").get<std::string>());
  return n;
}

template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad report JSON: ") + e.what());
  }
}

}  // namespace

Json to_json(const ForkReport& r) {
  Json j;
  j["input_word"] = format(r.input_word);
  j["verdict"] = to_string(r.verdict);
  j["index_i"] = r.index_i;
  j["ambient_rank"] = r.ambient_rank;
  j["normalization"] = normalization_json(r.normalization);
  j["connected"] = r.connected;
  j["all_vertices_incident"] = r.all_vertices_incident;
  j["cut_vertices"] = letters_json(r.cut_vertices);
  j["graph"] = to_json(r.graph);
  j["note"] = r.note;
  return j;
}

ForkReport fork_report_from_json(const Json& j) {
  return guarded([&] {
    ForkReport r;
    r.input_word = parse_word(j.at("input_word").get<std::string>());
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    r.index_i = j.at("index_i").get<int>();
    r.ambient_rank = j.at("ambient_rank").get<int>();
    r.normalization = normalization_from_json(j.at("normalization"));
    r.connected = j.at("connected").get<bool>();
    r.all_vertices_incident = j.at("all_vertices_incident").get<bool>();
    for (const auto& v : j.at("cut_vertices")) {
      const auto ls = parse_letters(v.get<std::string>());
      if (ls.size() != 1) throw MalformedInput("cut vertex must be a single letter");
      r.cut_vertices.push_back(ls.front());
    }
    r.graph = whitehead_graph_from_json(j.at("graph"));
    r.note = j.at("note").get<std::string>();
    return r;
  });
}

Json to_json(const WeightReport& r) {
  Json j;
  j["input_word"] = format(r.input_word);
  j["count"] = r.count;
  j["special_case_power"] = r.special_case_power;
  j["complete"] = r.complete();
  Json gens = Json::array();
  for (const auto& g : r.generation) {
    Json item;
    item["rank"] = g.rank;
    item["generators"] = words_json(g.generators);
    item["generates"] = g.generates;
    gens.push_back(std::move(item));
  }
  j["generation"] = std::move(gens);
  Json forks = Json::array();
  for (const auto& f : r.forks) forks.push_back(to_json(f));
  j["forks"] = std::move(forks);
  j["note"] = r.note;
  return j;
}

WeightReport weight_report_from_json(const Json& j) {
  return guarded([&] {
    WeightReport r;
    r.input_word = parse_word(j.at("input_word").get<std::string>());
    r.count = j.at("count").get<int>();
    r.special_case_power = j.at("special_case_power").get<bool>();
    for (const auto& item : j.at("generation")) {
      GenerationCertificate g;
      g.rank = item.at("rank").get<int>();
      for (const auto& w : item.at("generators")) g.generators.push_back(parse_word(w.get<std::string>()));
      g.generates = item.at("generates").get<bool>();
      r.generation.push_back(std::move(g));
    }
    for (const auto& f : j.at("forks")) r.forks.push_back(fork_report_from_json(f));
    r.note = j.at("note").get<std::string>();
    if (j.at("complete").get<bool>() != r.complete()) throw MalformedInput("'complete' disagrees with the entries");
    return r;
  });
}

const char* to_string(ForkVerdict v) {
  switch (v) {
    case ForkVerdict::forks: return "FORKS";
    case ForkVerdict::special_case_power: return "SPECIAL_CASE_POWER";
    case ForkVerdict::inconclusive: return "INCONCLUSIVE";
  }
  return "INCONCLUSIVE";
}

}  // namespace freetower
