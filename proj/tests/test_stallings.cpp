#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freetower/error.hpp"
#include "freetower/forking.hpp"
#include "freetower/stallings.hpp"
#include "oracles.hpp"

using namespace freetower;

namespace {

std::vector<Word> ws(std::initializer_list<const char*> texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(parse_word(t));
  return out;
}

bool is_rose(const CoreGraph& g, int rank) {
  return g.vertex_count() == 1 && static_cast<int>(g.arcs().size()) == rank;
}

}  // namespace

TEST_CASE("core graph examples") {
  CHECK(is_rose(core_graph(ws({"x1", "x2"}), 2), 2));
  const auto square = core_graph(ws({"x1 x1"}), 1);
  CHECK(square.vertex_count() == 2);
  CHECK(square.arcs() == std::vector<Arc>{{0, 1, 1}, {1, 0, 1}});
  CHECK(is_rose(core_graph(ws({"x2 x1 x2", "x2"}), 2), 2));
  const auto empty = core_graph(std::vector<Word>{}, 2);
  CHECK(empty.vertex_count() == 1);
  CHECK(empty.arcs().empty());
  CHECK(core_graph(ws({"1"}), 2) == empty);
  CHECK_THROWS_AS(core_graph(ws({"x3"}), 2), MalformedInput);
}

TEST_CASE("the basepoint is never trimmed") {
  const auto g = core_graph(ws({"x2 x1 X2"}), 2);
  CHECK(g.vertex_count() == 2);
  CHECK(subgroup_rank(g) == 1);
  CHECK(contains(g, parse_word("x2 x1 x1 X2")));
  CHECK_FALSE(contains(g, parse_word("x1")));
}

TEST_CASE("membership") {
  const auto g = core_graph(ws({"x2 x1 x2", "x2"}), 2);
  CHECK(contains(g, parse_word("x1")));
  CHECK_FALSE(contains(core_graph(ws({"x1 x1"}), 1), parse_word("x1")));
  CHECK(contains(core_graph(ws({"x1 x1"}), 1), Word()));
  CHECK(contains(core_graph(ws({"x1 x1"}), 1), parse_word("X1 X1 X1 X1")));
}

TEST_CASE("subgroup rank") {
  CHECK(subgroup_rank(core_graph(ws({"x1", "x2"}), 2)) == 2);
  CHECK(subgroup_rank(core_graph(std::vector<Word>{}, 2)) == 0);
  const auto g = core_graph(ws({"x1 x2", "x2 x1"}), 2);
  CHECK(g.vertex_count() == 3);
  CHECK(g.arcs().size() == 4);
  CHECK(subgroup_rank(g) == 2);
}

TEST_CASE("generates_ambient") {
  CHECK(generates_ambient(ws({"x1", "x2", "x3"}), 3));
  CHECK(generates_ambient(ws({"x2 x1 x2", "x3 x2 x1 x2 x2 x3", "x3"}), 3));
  CHECK_FALSE(generates_ambient(ws({"x1 x1", "x2"}), 2));
  CHECK(core_graph(ws({"x1 x1", "x2"}), 2).vertex_count() == 2);
  CHECK_FALSE(generates_ambient(ws({"x1"}), 2));
}

TEST_CASE("b_1..b_n with x_{n+1} generate the ambient group") {
  for (int n = 1; n <= 8; ++n) {
    std::vector<Word> gens;
    for (int k = 1; k <= n; ++k) gens.push_back(b_word(k));
    gens.push_back(Word::generator(n + 1));
    CAPTURE(n);
    CHECK(generates_ambient(gens, n + 1));
  }
}

TEST_CASE("DOT export") {
  CHECK(to_dot(core_graph(ws({"x1 x1"}), 1)) ==
        "digraph core {\n"
        "  v0 [shape=doublecircle];\n"
        "  v1 [shape=circle];\n"
        "  v0 -> v1 [label=x1];\n"
        "  v1 -> v0 [label=x1];\n"
        "}\n");
}

TEST_CASE("property: fold order confluence") {
  // 20 random generator sets, 10 random fold orders each.
  oracle::Rng rng(41);
  for (int set = 0; set < 20; ++set) {
    std::vector<Word> gens;
    for (int k = rng.uniform(1, 4); k > 0; --k) gens.push_back(oracle::to_word(rng.reduced(3, rng.uniform(1, 7))));
    const CoreGraph reference = core_graph(gens, 3);
    CHECK(reference.folded());
    for (int order = 0; order < 10; ++order) {
      const auto g = detail::fold_in_order(gens, 3, [&](std::size_t n) {
        return static_cast<std::size_t>(rng.uniform(0, static_cast<int>(n) - 1));
      });
      CHECK(g == reference);
    }
  }
}

TEST_CASE("property: folded graphs are deterministic and trimmed") {
  oracle::Rng rng(42);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Word> gens;
    for (int k = rng.uniform(1, 3); k > 0; --k) gens.push_back(oracle::to_word(rng.reduced(2, rng.uniform(1, 6))));
    const auto g = core_graph(gens, 2);
    std::vector<int> degree(static_cast<std::size_t>(g.vertex_count()), 0);
    std::set<std::pair<int, int>> out_slots, in_slots;
    for (const Arc& a : g.arcs()) {
      ++degree[static_cast<std::size_t>(a.from)];
      ++degree[static_cast<std::size_t>(a.to)];
      CHECK(out_slots.insert({a.from, a.label}).second);
      CHECK(in_slots.insert({a.to, a.label}).second);
    }
    for (int v = 1; v < g.vertex_count(); ++v) CHECK(degree[static_cast<std::size_t>(v)] >= 2);
  }
}

TEST_CASE("property: membership agrees with brute-force enumeration") {
  // Rank 2, generators of length <= 4, candidates of length <= 6, subgroup
  // elements enumerated up to length 12.
  oracle::Rng rng(43);
  const auto candidates = oracle::all_reduced_words(2, 6);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<oracle::Raw> raw_gens;
    std::vector<Word> gens;
    for (int k = rng.uniform(1, 2); k > 0; --k) {
      raw_gens.push_back(rng.reduced(2, rng.uniform(1, 4)));
      gens.push_back(oracle::to_word(raw_gens.back()));
    }
    const auto g = core_graph(gens, 2);
    const auto members = oracle::brute_subgroup(raw_gens, 2, 12);
    for (const auto& c : candidates) {
      const bool brute = members.count(oracle::encode(c, 2)) > 0;
      CAPTURE(format(oracle::to_word(c)));
      CHECK(contains(g, oracle::to_word(c)) == brute);
    }
  }
}

TEST_CASE("property: Nielsen-Schreier bound and generation implies membership") {
  oracle::Rng rng(44);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Word> gens;
    for (int k = rng.uniform(1, 4); k > 0; --k) gens.push_back(oracle::to_word(rng.reduced(2, rng.uniform(1, 5))));
    const auto g = core_graph(gens, 2);
    CHECK(subgroup_rank(g) <= static_cast<int>(gens.size()));
    if (generates_ambient(gens, 2)) {
      CHECK(contains(g, Word::generator(1)));
      CHECK(contains(g, Word::generator(2)));
    }
    for (const Word& x : gens) CHECK(contains(g, x));
  }
}

TEST_CASE("property: adding a subgroup element leaves the graph unchanged") {
  oracle::Rng rng(45);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Word> gens;
    for (int k = rng.uniform(1, 3); k > 0; --k) gens.push_back(oracle::to_word(rng.reduced(3, rng.uniform(1, 5))));
    Word element;
    for (int k = 0; k < 3; ++k) {
      const Word& pick = gens[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(gens.size()) - 1))];
      element = element * (rng.uniform(0, 1) ? pick : invert(pick));
    }
    auto more = gens;
    more.push_back(element);
    CHECK(core_graph(more, 3) == core_graph(gens, 3));
  }
}
