#include "freetower/presentations.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>

#include "freetower/error.hpp"

namespace freetower {

Presentation::Presentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty()) throw MalformedInput("generator names must be nonempty");
    if (!seen.insert(g).second) throw MalformedInput("duplicate generator name '" + g + "'");
  }
  relators_.reserve(relators.size());
  for (const Word& r : relators) {
    if (r.max_index() > rank()) {
      throw MalformedInput("relator " + format(r) + " uses an index above " + std::to_string(rank()));
    }
    relators_.push_back(cyclic_reduce(r).core);
  }
}

int Presentation::index_of(std::string_view name) const {
  auto it = std::find(generators_.begin(), generators_.end(), name);
  return it == generators_.end() ? 0 : static_cast<int>(it - generators_.begin()) + 1;
}

std::vector<std::string> Presentation::named_relators() const {
  std::vector<std::string> out;
  out.reserve(relators_.size());
  for (const Word& r : relators_) out.push_back(format_named(r, generators_));
  return out;
}

std::set<int> support(const Word& w) {
  std::set<int> out;
  for (Letter l : w.letters()) out.insert(l.index());
  return out;
}

namespace {

/// Smallest r with rotate_left(target, r) == image, or -1.
int rotation_of(const Word& image, const Word& target) {
  const std::size_t n = target.size();
  if (image.size() != n) return -1;
  for (std::size_t r = 0; r < n; ++r) {
    bool equal = true;
    for (std::size_t i = 0; i < n && equal; ++i) equal = image[i] == target[(i + r) % n];
    if (equal) return static_cast<int>(r);
  }
  return -1;
}

}  // namespace

std::vector<RelatorMatch> map_relator_check(const FreeMap& f, const Presentation& src, const Presentation& dst) {
  if (f.source_rank() != src.rank() || f.target_rank() > dst.rank()) {
    throw MalformedInput("map ranks (" + std::to_string(f.source_rank()) + " -> " + std::to_string(f.target_rank()) +
                         ") do not fit presentations (" + std::to_string(src.rank()) + " -> " +
                         std::to_string(dst.rank()) + ")");
  }
  std::vector<RelatorMatch> out;
  out.reserve(src.relators().size());
  for (const Word& r : src.relators()) {
    RelatorMatch m;
    m.image = cyclic_reduce(apply(f, r)).core;
    if (m.image.empty()) {
      m.outcome = RelatorOutcome::killed;
      out.push_back(std::move(m));
      continue;
    }
    for (std::size_t j = 0; j < dst.relators().size() && m.outcome != RelatorOutcome::matched; ++j) {
      for (bool inverted : {false, true}) {
        const Word target = inverted ? dst.relators()[j].inverse() : dst.relators()[j];
        const int rot = rotation_of(m.image, target);
        if (rot >= 0) {
          m.outcome = RelatorOutcome::matched;
          m.target_index = static_cast<int>(j);
          m.rotation = rot;
          m.inverted = inverted;
          break;
        }
      }
    }
    out.push_back(std::move(m));
  }
  return out;
}

IsoReport verify_isomorphism(const FreeMap& f, const FreeMap& g, const Presentation& src, const Presentation& dst) {
  IsoReport report;
  report.forward = map_relator_check(f, src, dst);
  report.backward = map_relator_check(g, dst, src);

  const FreeMap gf = compose(g, f);
  const FreeMap fg = compose(f, g);
  for (int k = 1; k <= src.rank(); ++k) report.source_fixed.push_back(gf.image(k) == Word::generator(k));
  for (int k = 1; k <= dst.rank(); ++k) report.target_fixed.push_back(fg.image(k) == Word::generator(k));

  auto all_true = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  auto all_matched = [](const std::vector<RelatorMatch>& v) {
    return std::all_of(v.begin(), v.end(), [](const auto& m) { return m.outcome == RelatorOutcome::matched; });
  };
  auto none_unmatched = [](const std::vector<RelatorMatch>& v) {
    return std::none_of(v.begin(), v.end(), [](const auto& m) { return m.outcome == RelatorOutcome::unmatched; });
  };
  const bool src_fixed = all_true(report.source_fixed);
  const bool dst_fixed = all_true(report.target_fixed);

  if (src_fixed && dst_fixed) {
    report.status = all_matched(report.forward) && all_matched(report.backward) ? IsoStatus::verified
                                                                                  : IsoStatus::failed;
  } else if (src_fixed != dst_fixed) {
    report.status = none_unmatched(report.forward) && none_unmatched(report.backward) ? IsoStatus::retraction_only
                                                                                       : IsoStatus::failed;
  } else {
    report.status = IsoStatus::failed;
  }
  return report;
}

AbelianInvariants abelianization(const Presentation& p) {
  const std::size_t cols = static_cast<std::size_t>(p.rank());
  std::vector<std::vector<std::int64_t>> a;
  for (const Word& r : p.relators()) {
    std::vector<std::int64_t> row(cols, 0);
    for (Letter l : r.letters()) row[static_cast<std::size_t>(l.index() - 1)] += l.sign();
    a.push_back(std::move(row));
  }
  const std::size_t rows = a.size();

  std::vector<std::int64_t> diagonal;
  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    // Pivot: smallest nonzero magnitude in the trailing block.
    auto find_pivot = [&]() -> bool {
      std::int64_t best = 0;
      std::size_t bi = t, bj = t;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (best == 0 || std::llabs(a[i][j]) < best)) {
            best = std::llabs(a[i][j]);
            bi = i;
            bj = j;
          }
      if (best == 0) return false;
      std::swap(a[t], a[bi]);
      for (auto& row : a) std::swap(row[t], row[bj]);
      return true;
    };
    if (!find_pivot()) break;
    while (true) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        const std::int64_t q = a[i][t] / a[t][t];
        if (q != 0)
          for (std::size_t j = t; j < cols; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) dirty = true;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        const std::int64_t q = a[t][j] / a[t][t];
        if (q != 0)
          for (std::size_t i = t; i < rows; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) dirty = true;
      }
      if (!dirty) {
        // Divisibility: fold any offending row into the pivot row.
        for (std::size_t i = t + 1; i < rows && !dirty; ++i)
          for (std::size_t j = t + 1; j < cols && !dirty; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < cols; ++k) a[t][k] += a[i][k];
              dirty = true;
            }
        if (!dirty) break;
      }
      find_pivot();
    }
    diagonal.push_back(std::llabs(a[t][t]));
  }
  AbelianInvariants inv;
  inv.free_rank = p.rank() - static_cast<int>(diagonal.size());
  for (auto d : diagonal)
    if (d > 1) inv.torsion.push_back(d);
  return inv;
}

Word translate(const Word& w, const Presentation& from, const Presentation& to) {
  std::vector<Letter> raw;
  raw.reserve(w.size());
  for (Letter l : w.letters()) {
    if (l.index() > from.rank()) throw MalformedInput("letter " + format(l) + " outside source alphabet");
    const std::string& name = from.generators()[static_cast<std::size_t>(l.index() - 1)];
    const int j = to.index_of(name);
    if (j == 0) throw MalformedInput("generator '" + name + "' missing from target alphabet");
    raw.emplace_back(j, l.sign());
  }
  return Word(raw);
}

CyclicWord relator_canonical_form(const Word& r) {
  const Word core = cyclic_reduce(r).core;
  CyclicWord fwd(core);
  CyclicWord inv(core.inverse());
  return std::lexicographical_compare(inv.letters().begin(), inv.letters().end(), fwd.letters().begin(),
                                      fwd.letters().end())
             ? inv
             : fwd;
}

bool equivalent_listing(const Presentation& a, const Presentation& b) {
  if (a.rank() != b.rank()) return false;
  for (const auto& name : b.generators())
    if (a.index_of(name) == 0) return false;
  if (a.relators().size() != b.relators().size()) return false;
  auto key = [](const CyclicWord& c) {
    std::vector<int> v;
    for (Letter l : c.letters()) v.push_back(l.signed_value());
    return v;
  };
  std::vector<std::vector<int>> ka, kb;
  for (const Word& r : a.relators()) ka.push_back(key(relator_canonical_form(r)));
  for (const Word& r : b.relators()) kb.push_back(key(relator_canonical_form(translate(r, b, a))));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

Json to_json(const Presentation& p) {
  Json j;
  j["generators"] = p.generators();
  Json rels = Json::array();
  for (const Word& r : p.relators()) rels.push_back(format(r));
  j["relators"] = std::move(rels);
  return j;
}

Presentation presentation_from_json(const Json& j) {
  try {
    std::vector<std::string> gens = j.at("generators").get<std::vector<std::string>>();
    std::vector<Word> rels;
    for (const auto& r : j.at("relators")) rels.push_back(parse_word(r.get<std::string>()));
    return Presentation(std::move(gens), std::move(rels));
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad presentation JSON: ") + e.what());
  }
}

Json to_json(const FreeMap& f) {
  Json j;
  j["source_rank"] = f.source_rank();
  j["target_rank"] = f.target_rank();
  Json images = Json::object();
  for (int k = 1; k <= f.source_rank(); ++k) images["x" + std::to_string(k)] = format(f.image(k));
  j["images"] = std::move(images);
  return j;
}

FreeMap free_map_from_json(const Json& j) {
  try {
    const int source = j.at("source_rank").get<int>();
    const int target = j.at("target_rank").get<int>();
    if (source < 0) throw MalformedInput("negative source rank");
    std::vector<Word> images(static_cast<std::size_t>(source));
    std::vector<bool> seen(static_cast<std::size_t>(source), false);
    for (const auto& [key, value] : j.at("images").items()) {
      const auto letters = parse_letters(key);
      if (letters.size() != 1 || letters[0].sign() < 0 || letters[0].index() > source) {
        throw MalformedInput("bad image key '" + key + "'");
      }
      const auto k = static_cast<std::size_t>(letters[0].index() - 1);
      if (seen[k]) throw MalformedInput("duplicate image for '" + key + "'");
      seen[k] = true;
      images[k] = parse_word(value.get<std::string>());
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) throw MalformedInput("missing generator image");
    return FreeMap(source, target, std::move(images));
  } catch (const Json::exception& e) {
    throw MalformedInput(std::string("bad map JSON: ") + e.what());
  }
}

FreeMap named_map(const Presentation& src, const Presentation& dst,
                  std::span<const std::pair<std::string, std::string>> images) {
  std::vector<Word> out;
  out.reserve(static_cast<std::size_t>(src.rank()));
  for (const auto& name : src.generators()) {
    auto it = std::find_if(images.begin(), images.end(), [&](const auto& p) { return p.first == name; });
    if (it != images.end()) {
      out.push_back(parse_named(it->second, dst.generators()));
    } else if (int j = dst.index_of(name); j > 0) {
      out.push_back(Word::generator(j));
    } else {
      throw MalformedInput("no image for generator '" + name + "'");
    }
  }
  for (const auto& [name, text] : images) {
    if (src.index_of(name) == 0) throw MalformedInput("image given for unknown generator '" + name + "'");
  }
  return FreeMap(src.rank(), dst.rank(), std::move(out));
}

const char* to_string(RelatorOutcome o) {
  switch (o) {
    case RelatorOutcome::matched: return "MATCHED";
    case RelatorOutcome::killed: return "KILLED";
    case RelatorOutcome::unmatched: return "UNMATCHED";
  }
  return "UNMATCHED";
}

const char* to_string(IsoStatus s) {
  switch (s) {
    case IsoStatus::verified: return "VERIFIED";
    case IsoStatus::retraction_only: return "RETRACTION_ONLY";
    case IsoStatus::failed: return "FAILED";
    case IsoStatus::inconclusive: return "INCONCLUSIVE";
  }
  return "FAILED";
}

}  // namespace freetower
