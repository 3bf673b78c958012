#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "freetower/error.hpp"
#include "freetower/presentations.hpp"
#include "freetower/towers.hpp"
#include "oracles.hpp"

using namespace freetower;

namespace {

Word w(const char* text) { return parse_word(text); }

Presentation named(std::vector<std::string> gens, std::initializer_list<const char*> relators) {
  std::vector<Word> rels;
  for (const char* r : relators) rels.push_back(parse_named(r, gens));
  return Presentation(std::move(gens), std::move(rels));
}

// G^1 and its torus form.
Presentation g1() { return named({"a1", "a2", "t1", "t2", "t3"}, {"t1 a1 t1^-1 t2 a1^-1 t2^-1 t3 a2 t3^-1 a2^-1"}); }
Presentation g1_tilde() { return named({"e1", "e2", "e3", "y1", "y2"}, {"y1 y2 y1^-1 y2^-1 e3 e1 e3^-1 e1^-1"}); }

FreeMap f0() {
  const std::vector<std::pair<std::string, std::string>> images = {
      {"a1", "e2 y1 e2^-1"}, {"a2", "e1"}, {"t1", "e2^-1"}, {"t2", "y2 e2^-1"}, {"t3", "e3"}};
  return named_map(g1(), g1_tilde(), images);
}

FreeMap g0() {
  const std::vector<std::pair<std::string, std::string>> images = {
      {"e1", "a2"}, {"e2", "t1^-1"}, {"e3", "t3"}, {"y1", "t1 a1 t1^-1"}, {"y2", "t2 t1^-1"}};
  return named_map(g1_tilde(), g1(), images);
}

}  // namespace

TEST_CASE("presentations validate names and relators") {
  CHECK_THROWS_AS(Presentation({"a", "a"}, {}), MalformedInput);
  CHECK_THROWS_AS(Presentation({""}, {}), MalformedInput);
  CHECK_THROWS_AS(Presentation({"a"}, {w("x2")}), MalformedInput);
  const Presentation p({"a", "b"}, {w("x2 x1 X2")});
  CHECK(p.relators().front() == w("x1"));  // stored cyclically reduced
  CHECK(p.index_of("b") == 2);
  CHECK(p.index_of("c") == 0);
}

TEST_CASE("support") {
  CHECK(support(Word()).empty());
  CHECK(support(w("x2 x1 x2")) == std::set<int>{1, 2});
  CHECK(support(w("x5")) == std::set<int>{5});
}

TEST_CASE("identity matches every relator to itself") {
  const Presentation p = g1();
  const auto matches = map_relator_check(FreeMap::identity(5), p, p);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].outcome == RelatorOutcome::matched);
  CHECK(matches[0].target_index == 0);
  CHECK(matches[0].rotation == 0);
  CHECK_FALSE(matches[0].inverted);
}

TEST_CASE("the first torus map sends the sphere relator onto the torus relator") {
  CHECK(apply(f0(), g1().relators()[0]) == g1_tilde().relators()[0]);
  const auto matches = map_relator_check(f0(), g1(), g1_tilde());
  CHECK(matches[0].outcome == RelatorOutcome::matched);
}

TEST_CASE("the sphere retraction kills the relator") {
  const FloorSpec floor = glue_four_punctured_sphere(Presentation({"a1", "a2"}, {}), w("x1"), w("x2"));
  const auto matches = map_relator_check(floor.retraction, floor.upper, floor.lower);
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].outcome == RelatorOutcome::killed);
  CHECK(matches[0].image.empty());
}

TEST_CASE("unmatched images are reported") {
  const Presentation p = g1();
  const FreeMap shuffle = named_map(p, p, std::vector<std::pair<std::string, std::string>>{{"a1", "a2"}, {"a2", "a1"}});
  const auto matches = map_relator_check(shuffle, p, p);
  CHECK(matches[0].outcome == RelatorOutcome::unmatched);
  CHECK_FALSE(matches[0].image.empty());
  CHECK_THROWS_AS(map_relator_check(FreeMap::identity(4), p, p), MalformedInput);
}

TEST_CASE("verify_isomorphism statuses") {
  CHECK(verify_isomorphism(FreeMap::identity(5), FreeMap::identity(5), g1(), g1()).status == IsoStatus::verified);

  const IsoReport report = verify_isomorphism(f0(), g0(), g1(), g1_tilde());
  CHECK(report.status == IsoStatus::verified);
  CHECK(report.source_fixed == std::vector<bool>(5, true));
  CHECK(report.target_fixed == std::vector<bool>(5, true));

  const FloorSpec floor = glue_four_punctured_sphere(Presentation({"a1", "a2"}, {}), w("x1"), w("x2"));
  CHECK(verify_isomorphism(inclusion(floor), floor.retraction, floor.lower, floor.upper).status ==
        IsoStatus::retraction_only);

  const FreeMap shear = FreeMap(5, 5, {w("x1 x2"), w("x2"), w("x3"), w("x4"), w("x5")});
  CHECK(verify_isomorphism(shear, shear, g1(), g1()).status == IsoStatus::failed);

  // Both composites fix generators but a relator has no counterpart.
  const Presentation bare({"a1", "a2", "t1", "t2", "t3"}, {});
  CHECK(verify_isomorphism(FreeMap::identity(5), FreeMap::identity(5), g1(), bare).status == IsoStatus::failed);
}

TEST_CASE("property: status is symmetric in the roles of f and g") {
  const FloorSpec floor = glue_four_punctured_sphere(Presentation({"a1", "a2"}, {}), w("x1"), w("x2"));
  const std::vector<std::tuple<FreeMap, FreeMap, Presentation, Presentation>> cases = {
      {f0(), g0(), g1(), g1_tilde()},
      {inclusion(floor), floor.retraction, floor.lower, floor.upper},
      {FreeMap::identity(5), FreeMap::identity(5), g1(), g1()},
  };
  for (const auto& [f, g, src, dst] : cases)
    CHECK(verify_isomorphism(f, g, src, dst).status == verify_isomorphism(g, f, dst, src).status);
}

TEST_CASE("property: matching ignores relator rotation and inversion") {
  oracle::Rng rng(51);
  const Word rel = g1_tilde().relators()[0];
  for (int trial = 0; trial < 30; ++trial) {
    const auto raw = oracle::to_raw(rel);
    const std::size_t r = static_cast<std::size_t>(rng.uniform(0, static_cast<int>(raw.size()) - 1));
    oracle::Raw rot(raw.begin() + static_cast<long>(r), raw.end());
    rot.insert(rot.end(), raw.begin(), raw.begin() + static_cast<long>(r));
    Word variant = oracle::to_word(rot);
    if (rng.uniform(0, 1)) variant = invert(variant);
    const Presentation dst(g1_tilde().generators(), {variant});
    CHECK(verify_isomorphism(f0(), g0(), g1(), dst).status == IsoStatus::verified);
    const Presentation src(g1().generators(), {invert(g1().relators()[0])});
    CHECK(map_relator_check(f0(), src, dst)[0].outcome == RelatorOutcome::matched);
  }
}

TEST_CASE("abelianization by Smith normal form") {
  CHECK(abelianization(Presentation({"a", "b"}, {})) == AbelianInvariants{2, {}});
  CHECK(abelianization(Presentation({"a"}, {w("x1 x1")})) == AbelianInvariants{0, {2}});
  // [[2,4],[4,2]]: gcd 2, determinant -12.
  CHECK(abelianization(Presentation({"a", "b"}, {w("x1 x1 x2 x2 x2 x2"), w("x1 x1 x1 x1 x2 x2")})) ==
        AbelianInvariants{0, {2, 6}});
  // [[6, 4]]: Z x Z/2.
  CHECK(abelianization(Presentation({"a", "b"}, {power(w("x1"), 6) * power(w("x2"), 4)})) == AbelianInvariants{1, {2}});
  // Every exponent sum of the relator vanishes.
  CHECK(abelianization(g1()) == AbelianInvariants{5, {}});
  CHECK(abelianization(g1()) == abelianization(g1_tilde()));
}

TEST_CASE("translate and equivalent listings") {
  const Presentation a({"p", "q"}, {});
  const Presentation b({"q", "p", "r"}, {});
  CHECK(translate(w("x1 X2"), a, b) == w("x2 X1"));
  CHECK_THROWS_AS(translate(w("x3"), b, a), MalformedInput);

  const Presentation one({"p", "q"}, {w("x1 x2 X1 X2"), w("x1 x1")});
  const Presentation two({"q", "p"}, {w("X2 X2"), w("x1 x2 X1 X2")});
  CHECK(equivalent_listing(one, two));
  const Presentation three({"q", "p"}, {w("x1 x1"), w("x1 x2 X1 X2")});
  CHECK_FALSE(equivalent_listing(one, three));
  CHECK(relator_canonical_form(w("X2 X1 x2 x1")) == relator_canonical_form(w("x1 x2 X1 X2")));
}

TEST_CASE("presentation JSON") {
  const Json j = to_json(g1());
  CHECK(j.dump() == R"({"generators":["a1","a2","t1","t2","t3"],"relators":["x3 x1 X3 x4 X1 X4 x5 x2 X5 X2"]})");
  CHECK(presentation_from_json(j) == g1());
  CHECK_THROWS_AS(presentation_from_json(Json::parse(R"({"generators":["a"]})")), MalformedInput);
  CHECK_THROWS_AS(presentation_from_json(Json::parse(R"({"generators":["a"],"relators":["x2"]})")), MalformedInput);
}

TEST_CASE("free map JSON") {
  const Json j = to_json(f0());
  CHECK(j.dump() ==
        R"({"source_rank":5,"target_rank":5,"images":{"x1":"x2 x4 X2","x2":"x1","x3":"X2","x4":"x5 X2","x5":"x3"}})");
  CHECK(free_map_from_json(j) == f0());
  CHECK_THROWS_AS(free_map_from_json(Json::parse(R"({"source_rank":2,"target_rank":2,"images":{"x1":"x1"}})")),
                  MalformedInput);
  CHECK_THROWS_AS(free_map_from_json(Json::parse(R"({"source_rank":1,"target_rank":1,"images":{"X1":"x1"}})")),
                  MalformedInput);
  CHECK_THROWS_AS(free_map_from_json(Json::parse(R"({"source_rank":1,"target_rank":1,"images":{"x1":"x2"}})")),
                  MalformedInput);
}

TEST_CASE("named maps") {
  CHECK(f0().image(1) == w("x2 x4 X2"));
  const std::vector<std::pair<std::string, std::string>> unknown = {{"zz", "e1"}};
  CHECK_THROWS_AS(named_map(g1(), g1_tilde(), unknown), MalformedInput);
  const std::vector<std::pair<std::string, std::string>> partial = {{"a1", "e1"}};
  CHECK_THROWS_AS(named_map(g1(), g1_tilde(), partial), MalformedInput);  // a2 has no namesake
}
