#include "freetower/towers.hpp"

#include <algorithm>
#include <stdexcept>

#include "freetower/error.hpp"

namespace freetower {

Surface make_surface(bool orientable, int genus_or_crosscaps, int boundary_count) {
  if (genus_or_crosscaps < 0 || boundary_count < 0) throw MalformedInput("surface parameters must be non-negative");
  if (!orientable && genus_or_crosscaps < 1) throw MalformedInput("a non-orientable surface needs at least one crosscap");
  Surface s;
  s.orientable = orientable;
  s.genus_or_crosscaps = genus_or_crosscaps;
  s.boundary_count = boundary_count;
  s.euler = orientable ? -(2 * genus_or_crosscaps - 2 + boundary_count) : (2 - genus_or_crosscaps) - boundary_count;
  return s;
}

std::string describe(const Surface& s) {
  std::string out = s.orientable ? "orientable, genus " : "non-orientable, crosscaps ";
  out += std::to_string(s.genus_or_crosscaps) + ", boundary " + std::to_string(s.boundary_count);
  out += ", euler " + std::to_string(s.euler);
  return out;
}

namespace {

int handle_letters(const Surface& s) { return s.orientable ? 2 * s.genus_or_crosscaps : s.genus_or_crosscaps; }

// Product of commutators [x_{f}, x_{f+1}]... or of squares x_f^2 ..., where
// the first handle letter has index `first`.
Word handle_word(const Surface& s, int first) {
  Word h;
  if (s.orientable) {
    for (int k = 0; k < s.genus_or_crosscaps; ++k)
      h = h * commutator(Word::generator(first + 2 * k), Word::generator(first + 2 * k + 1));
  } else {
    for (int k = 0; k < s.genus_or_crosscaps; ++k) h = h * power(Word::generator(first + k), 2);
  }
  return h;
}

Word surface_relator(const Word& handles, const Word& boundary) {
  return handles.empty() ? boundary : handles * boundary.inverse();
}

std::vector<std::string> numbered(const std::string& stem, int from, int to) {
  std::vector<std::string> out;
  for (int k = from; k <= to; ++k) out.push_back(stem + std::to_string(k));
  return out;
}

}  // namespace

Presentation surface_presentation(const Surface& s) {
  const int h = handle_letters(s);
  std::vector<std::string> names = numbered(s.orientable ? "y" : "c", 1, h);
  for (auto& n : numbered("s", 1, s.boundary_count)) names.push_back(std::move(n));
  Word boundary;
  for (int k = 1; k <= s.boundary_count; ++k) boundary = boundary * Word::generator(h + k);
  const Word rel = surface_relator(handle_word(s, 1), boundary);
  std::vector<Word> relators;
  if (!rel.empty()) relators.push_back(rel);
  return Presentation(std::move(names), std::move(relators));
}

Presentation eliminate_generator(const Presentation& p, int relator_index, int generator) {
  if (relator_index < 0 || relator_index >= static_cast<int>(p.relators().size()))
    throw MalformedInput("relator index out of range");
  if (generator < 1 || generator > p.rank()) throw MalformedInput("generator index out of range");
  const Word& r = p.relators()[static_cast<std::size_t>(relator_index)];
  const auto& ls = r.letters();
  const auto hits = std::count_if(ls.begin(), ls.end(), [&](Letter l) { return l.index() == generator; });
  if (hits != 1) throw MalformedInput("generator must occur exactly once in the relator");
  const auto pos = static_cast<std::size_t>(
      std::find_if(ls.begin(), ls.end(), [&](Letter l) { return l.index() == generator; }) - ls.begin());

  // r = u x^e v  =>  x^e = u^-1 v^-1.
  const Word u(std::span<const Letter>(ls.data(), pos));
  const Word v(std::span<const Letter>(ls.data() + pos + 1, ls.size() - pos - 1));
  Word value = u.inverse() * v.inverse();
  if (ls[pos].sign() < 0) value = value.inverse();

  auto renumber = [&](int k) { return k < generator ? k : k - 1; };
  std::vector<Word> images;
  for (int k = 1; k <= p.rank(); ++k) images.push_back(k == generator ? Word() : Word::generator(renumber(k)));
  std::vector<Letter> moved;
  for (Letter l : value.letters()) moved.emplace_back(renumber(l.index()), l.sign());
  images[static_cast<std::size_t>(generator - 1)] = Word(moved);
  const FreeMap substitute(p.rank(), p.rank() - 1, std::move(images));

  std::vector<std::string> names = p.generators();
  names.erase(names.begin() + (generator - 1));
  std::vector<Word> relators;
  for (std::size_t i = 0; i < p.relators().size(); ++i)
    if (static_cast<int>(i) != relator_index) relators.push_back(apply(substitute, p.relators()[i]));
  return Presentation(std::move(names), std::move(relators));
}

FreeMap inclusion(const FloorSpec& floor) {
  std::vector<Word> images;
  for (const auto& name : floor.lower.generators()) {
    const int j = floor.upper.index_of(name);
    if (j == 0) throw MalformedInput("lower generator '" + name + "' missing from upper alphabet");
    images.push_back(Word::generator(j));
  }
  return FreeMap(floor.lower.rank(), floor.upper.rank(), std::move(images));
}

bool consistent(const TowerSpec& tower) {
  if (!tower.ground.relators().empty()) return false;
  for (std::size_t k = 0; k + 1 < tower.floors.size(); ++k)
    if (!(tower.floors[k].lower == tower.floors[k + 1].upper)) return false;
  return tower.floors.empty() || tower.floors.back().lower == tower.ground;
}

FloorSpec glue_surface(const Presentation& lower, const SurfaceGluing& gluing) {
  const Surface& s = gluing.surface;
  const int h = handle_letters(s);
  const int r = s.boundary_count;
  if (r < 1) throw MalformedInput("a glued surface needs at least one boundary component");
  if (static_cast<int>(gluing.surface_generator_names.size()) != h ||
      static_cast<int>(gluing.surface_generator_images.size()) != h)
    throw MalformedInput("surface generator names/images do not match the surface");
  if (static_cast<int>(gluing.bass_serre_names.size()) != r - 1)
    throw MalformedInput("need one Bass-Serre generator per boundary component but the last");
  if (static_cast<int>(gluing.gluing_words.size()) != r)
    throw MalformedInput("need one gluing word per boundary component");
  for (const Word& w : gluing.gluing_words)
    if (w.max_index() > lower.rank()) throw MalformedInput("gluing word " + format(w) + " outside the lower alphabet");
  for (const Word& w : gluing.surface_generator_images)
    if (w.max_index() > lower.rank()) throw MalformedInput("retraction image " + format(w) + " outside the lower alphabet");

  const int base = lower.rank();
  std::vector<std::string> names = lower.generators();
  for (const auto& n : gluing.surface_generator_names) names.push_back(n);
  for (const auto& n : gluing.bass_serre_names) names.push_back(n);
  for (std::size_t i = base; i < names.size(); ++i)
    if (lower.index_of(names[i]) != 0) throw MalformedInput("fresh name '" + names[i] + "' clashes with the lower group");

  Word boundary;
  for (int i = 0; i + 1 < r; ++i) {
    const Word t = Word::generator(base + h + i + 1);
    boundary = boundary * t * gluing.gluing_words[static_cast<std::size_t>(i)] * t.inverse();
  }
  boundary = boundary * gluing.gluing_words.back();

  std::vector<Word> relators = lower.relators();
  relators.push_back(surface_relator(handle_word(s, base + 1), boundary));

  FloorSpec floor;
  floor.lower = lower;
  floor.upper = Presentation(std::move(names), std::move(relators));
  floor.surface = s;
  floor.gluing_words = gluing.gluing_words;
  floor.surface_generators = gluing.surface_generator_names;
  floor.bass_serre_generators = gluing.bass_serre_names;

  std::vector<Word> images;
  for (int k = 1; k <= base; ++k) images.push_back(Word::generator(k));
  for (const Word& w : gluing.surface_generator_images) images.push_back(w);
  for (int i = 0; i + 1 < r; ++i) images.emplace_back();
  floor.retraction = FreeMap(floor.upper.rank(), base, std::move(images));
  floor.designated_pair = gluing.designated_pair;
  return floor;
}

namespace {

void require_gluable(const Presentation& lower, const Word& w1, const Word& w2) {
  if (w1.max_index() > lower.rank() || w2.max_index() > lower.rank())
    throw MalformedInput("gluing words must lie in the lower group");
  if (commute(w1, w2))
    throw InvalidFloor("gluing words " + format_named(w1, lower.generators()) + " and " +
                       format_named(w2, lower.generators()) + " commute");
}

}  // namespace

FloorSpec glue_four_punctured_sphere(const Presentation& lower, const Word& w1, const Word& w2,
                                     const std::vector<std::string>& fresh) {
  if (fresh.size() != 3) throw MalformedInput("four-punctured sphere gluing takes three fresh names");
  require_gluable(lower, w1, w2);
  const int base = lower.rank();
  const Word t1 = Word::generator(base + 1);
  const Word t3 = Word::generator(base + 3);
  SurfaceGluing g;
  g.surface = make_surface(true, 0, 4);
  g.gluing_words = {w1, w1.inverse(), w2, w2.inverse()};
  g.bass_serre_names = fresh;
  g.designated_pair = {t1 * w1 * t1.inverse(), t3 * w2 * t3.inverse()};
  return glue_surface(lower, g);
}

FloorSpec glue_once_punctured_torus(const Presentation& lower, const Word& w1, const Word& w2,
                                    const std::vector<std::string>& fresh) {
  if (fresh.size() != 2) throw MalformedInput("once-punctured torus gluing takes two fresh names");
  require_gluable(lower, w1, w2);
  const int base = lower.rank();
  SurfaceGluing g;
  g.surface = make_surface(true, 1, 1);
  g.gluing_words = {commutator(w1, w2)};
  g.surface_generator_names = fresh;
  g.surface_generator_images = {w1, w2};
  g.designated_pair = {Word::generator(base + 1), Word::generator(base + 2)};
  return glue_surface(lower, g);
}

bool FloorReport::passed() const {
  return std::none_of(conditions.begin(), conditions.end(),
                      [](const ConditionResult& c) { return c.state == CheckState::fail; });
}

const ConditionResult& FloorReport::condition(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw std::out_of_range("no condition named '" + name + "'");
}

FloorReport validate_floor(const FloorSpec& floor, bool strict_surface_list) {
  FloorReport report;
  auto verdict = [](bool ok) { return ok ? CheckState::pass : CheckState::fail; };
  const Surface& s = floor.surface;

  {
    bool ok = s.boundary_count >= 1 && (s.is_once_punctured_torus() || s.euler <= -2);
    if (strict_surface_list)
      ok = ok && (s.is_once_punctured_torus() || s.is_four_punctured_sphere() ||
                  s.is_thrice_punctured_projective_plane());
    report.conditions.push_back({"surface", verdict(ok), describe(s)});
  }
  {
    const bool nontrivial = std::none_of(floor.gluing_words.begin(), floor.gluing_words.end(),
                                         [](const Word& w) { return w.empty(); });
    const bool ok = nontrivial && static_cast<int>(floor.gluing_words.size()) == s.boundary_count;
    report.conditions.push_back({"gluing_classes", verdict(ok),
                                 std::to_string(floor.gluing_words.size()) + " gluing words, " +
                                     std::to_string(s.boundary_count) + " boundary components"});
  }
  {
    ConditionResult c{"retraction", CheckState::pass, "identity on lower generators, relators respected"};
    try {
      const FreeMap& r = floor.retraction;
      if (r.source_rank() != floor.upper.rank() || r.target_rank() != floor.lower.rank())
        throw MalformedInput("retraction ranks do not match the floor");
      for (int k = 1; k <= floor.lower.rank(); ++k) {
        const int u = floor.upper.index_of(floor.lower.generators()[static_cast<std::size_t>(k - 1)]);
        if (u == 0 || r.image(u) != Word::generator(k))
          throw MalformedInput("moves lower generator " + floor.lower.generators()[static_cast<std::size_t>(k - 1)]);
      }
      const auto checks = map_relator_check(r, floor.upper, floor.lower);
      for (std::size_t i = 0; i < checks.size(); ++i)
        if (checks[i].outcome == RelatorOutcome::unmatched)
          throw MalformedInput("relator " + std::to_string(i) + " is not respected");
    } catch (const MalformedInput& e) {
      c.state = CheckState::fail;
      c.detail = e.what();
    }
    report.conditions.push_back(std::move(c));
  }
  {
    ConditionResult c{"non_abelian_image", CheckState::fail, ""};
    try {
      const Word a = apply(floor.retraction, floor.designated_pair.first);
      const Word b = apply(floor.retraction, floor.designated_pair.second);
      const auto& names = floor.lower.generators();
      c.state = verdict(!commute(a, b));
      c.detail = "r(" + format_named(floor.designated_pair.first, floor.upper.generators()) +
                 ") = " + format_named(a, names) + ", r(" +
                 format_named(floor.designated_pair.second, floor.upper.generators()) + ") = " +
                 format_named(b, names);
    } catch (const MalformedInput& e) {
      c.detail = e.what();
    }
    report.conditions.push_back(std::move(c));
  }
  report.conditions.push_back({"cyclic_alternative", CheckState::unchecked, "alternative retraction clause not checked"});
  return report;
}

namespace {

// Floor j of G^n glues along (w_{2j-1}, w_{2j}), as names in the current alphabet.
std::pair<std::string, std::string> gn_gluing_names(int j) {
  if (j == 1) return {"a1", "a2"};
  if (j == 2) return {"a2", "t1^-1"};
  return {"t" + std::to_string(3 * j - 8) + "^-1", "t" + std::to_string(3 * j - 5) + "^-1"};
}

}  // namespace

GnBuild build_gn(int n) {
  if (n < 1) throw MalformedInput("n must be positive");
  Presentation current({"a1", "a2"}, {});
  GnBuild out;
  out.tower.ground = current;
  for (int j = 1; j <= n; ++j) {
    const auto [n1, n2] = gn_gluing_names(j);
    const auto& names = current.generators();
    FloorSpec floor = glue_four_punctured_sphere(current, parse_named(n1, names), parse_named(n2, names),
                                                 numbered("t", 3 * j - 2, 3 * j));
    current = floor.upper;
    out.tower.floors.push_back(std::move(floor));
  }
  std::reverse(out.tower.floors.begin(), out.tower.floors.end());
  out.presentation = current;
  return out;
}

namespace {

// Stage i of the rewriting chain from G^n to its torus form:
// [a_1 .. a_{i+2}, y_1 .. y_{2i}, t_{3i+1} .. t_{3n}], with the a's renamed
// e_k at the last stage and a<k>_<i> in between.
class Stage {
 public:
  Stage(int n, int i) : n_(n), i_(i) {
    for (int k = 1; k <= i + 2; ++k) names_.push_back(a_name(k));
    for (auto& y : numbered("y", 1, 2 * i)) names_.push_back(std::move(y));
    for (auto& t : numbered("t", 3 * i + 1, 3 * n)) names_.push_back(std::move(t));
  }

  std::string a_name(int k) const {
    if (i_ == 0) return "a" + std::to_string(k);
    if (i_ == n_) return "e" + std::to_string(k);
    return "a" + std::to_string(k) + "_" + std::to_string(i_);
  }
  Word a(int k) const { return letter(a_name(k)); }
  Word y(int k) const { return letter("y" + std::to_string(k)); }
  Word t(int k) const { return letter("t" + std::to_string(k)); }
  const std::vector<std::string>& names() const { return names_; }
  Presentation alphabet() const { return Presentation(names_, {}); }

  // torus_words[j-1] is u_j for the torus floors j <= i.
  Presentation presentation(const std::vector<Word>& torus_words) const {
    std::vector<Word> rels;
    for (int j = 1; j <= i_; ++j)
      rels.push_back(commutator(y(2 * j - 1), y(2 * j)) *
                     commutator(torus_words[static_cast<std::size_t>(j - 1)], a(j + 2)).inverse());
    for (int j = i_ + 1; j <= n_; ++j) {
      const auto [p, q] = sphere_words(j);
      const Word t1 = t(3 * j - 2), t2 = t(3 * j - 1), t3 = t(3 * j);
      rels.push_back(t1 * p * t1.inverse() * t2 * p.inverse() * t2.inverse() * commutator(q, t3).inverse());
    }
    return Presentation(names_, std::move(rels));
  }

 private:
  std::pair<Word, Word> sphere_words(int j) const {
    if (j == i_ + 1) return {a(1), a(2)};
    if (j == i_ + 2) return {a(2), t(3 * i_ + 1).inverse()};
    return {t(3 * j - 8).inverse(), t(3 * j - 5).inverse()};
  }
  Word letter(const std::string& name) const {
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) throw std::logic_error("stage alphabet lacks " + name);
    return Word::generator(static_cast<int>(it - names_.begin()) + 1);
  }

  int n_;
  int i_;
  std::vector<std::string> names_;
};

}  // namespace

GnTildeBuild build_gn_tilde(int n) {
  if (n < 1) throw MalformedInput("n must be positive");
  GnTildeBuild out;
  std::vector<Word> torus_words;
  out.stages.push_back(Stage(n, 0).presentation(torus_words));

  for (int i = 0; i < n; ++i) {
    const Stage from(n, i), to(n, i + 1);
    const Presentation dst_names = to.alphabet();
    const std::string ti1 = "t" + std::to_string(3 * i + 1);
    const std::string ti2 = "t" + std::to_string(3 * i + 2);
    const std::string ti3 = "t" + std::to_string(3 * i + 3);
    const std::string y_odd = "y" + std::to_string(2 * i + 1);
    const std::string y_even = "y" + std::to_string(2 * i + 2);

    std::vector<std::pair<std::string, std::string>> fwd = {
        {from.a_name(1), to.a_name(2) + " " + y_odd + " " + to.a_name(2) + "^-1"},
        {from.a_name(2), to.a_name(1)},
        {ti1, to.a_name(2) + "^-1"},
        {ti2, y_even + " " + to.a_name(2) + "^-1"},
        {ti3, to.a_name(i + 3)},
    };
    for (int k = 3; k <= i + 2; ++k) fwd.emplace_back(from.a_name(k), to.a_name(k));
    const FreeMap forward = named_map(out.stages.back(), dst_names, fwd);

    for (Word& u : torus_words) u = apply(forward, u);
    torus_words.push_back(to.a(1));
    Presentation target = to.presentation(torus_words);

    std::vector<std::pair<std::string, std::string>> bwd = {
        {to.a_name(1), from.a_name(2)},
        {to.a_name(2), ti1 + "^-1"},
        {to.a_name(i + 3), ti3},
        {y_odd, ti1 + " " + from.a_name(1) + " " + ti1 + "^-1"},
        {y_even, ti2 + " " + ti1 + "^-1"},
    };
    for (int k = 3; k <= i + 2; ++k) bwd.emplace_back(to.a_name(k), from.a_name(k));
    const FreeMap backward = named_map(target, out.stages.back(), bwd);

    out.chain.push_back(IsoStep{out.stages.back(), target, forward, backward});
    out.stages.push_back(std::move(target));
  }
  out.presentation = out.stages.back();

  const Stage last(n, n);
  for (int j = 1; j <= n; ++j) {
    out.w_prime.push_back(torus_words[static_cast<std::size_t>(j - 1)]);
    out.w_prime.push_back(last.a(j + 2));
  }

  Presentation current(numbered("e", 1, n + 2), {});
  out.tower.ground = current;
  for (int j = n; j >= 1; --j) {
    const Word w1 = translate(out.w_prime[static_cast<std::size_t>(2 * j - 2)], out.presentation, current);
    const Word w2 = translate(out.w_prime[static_cast<std::size_t>(2 * j - 1)], out.presentation, current);
    FloorSpec floor = glue_once_punctured_torus(current, w1, w2, numbered("y", 2 * j - 1, 2 * j));
    current = floor.upper;
    out.tower.floors.insert(out.tower.floors.begin(), std::move(floor));
  }
  return out;
}

bool support_condition_holds(const GnTildeBuild& build, int j) {
  const int n = static_cast<int>(build.w_prime.size()) / 2;
  if (j < 1 || j > n) throw MalformedInput("floor index out of range");
  std::set<int> allowed;
  for (int k = 1; k <= n + 2; ++k) allowed.insert(build.presentation.index_of("e" + std::to_string(k)));
  for (int k = 2 * j + 1; k <= 2 * n; ++k) allowed.insert(build.presentation.index_of("y" + std::to_string(k)));
  for (const Word* w : {&build.w_prime[static_cast<std::size_t>(2 * j - 2)],
                        &build.w_prime[static_cast<std::size_t>(2 * j - 1)]})
    for (int idx : support(*w))
      if (!allowed.contains(idx)) return false;
  return true;
}

FreeMap chain_composite(const GnTildeBuild& build) {
  if (build.chain.empty()) throw MalformedInput("empty chain");
  FreeMap total = build.chain.front().forward;
  for (std::size_t k = 1; k < build.chain.size(); ++k) total = compose(build.chain[k].forward, total);
  return total;
}

const char* to_string(CheckState s) {
  switch (s) {
    case CheckState::pass: return "PASS";
    case CheckState::fail: return "FAIL";
    case CheckState::unchecked: return "UNCHECKED";
  }
  return "UNCHECKED";
}

}  // namespace freetower
