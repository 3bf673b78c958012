#pragma once

// Surfaces with boundary, two-vertex hyperbolic floors (one surface vertex
// glued along its boundary to one non-surface vertex), and the tower
// factories for the groups G^n and their once-punctured-torus towers.

#include <string>
#include <utility>
#include <vector>

#include "freetower/morphisms.hpp"
#include "freetower/presentations.hpp"
#include "freetower/words.hpp"

namespace freetower {

struct Surface {
  bool orientable = true;
  int genus_or_crosscaps = 0;  // handles m if orientable, crosscaps g otherwise
  int boundary_count = 0;
  int euler = 2;

  /// Rank of the (free) fundamental group when boundary_count >= 1.
  int free_rank() const { return 1 - euler; }
  bool is_once_punctured_torus() const { return orientable && genus_or_crosscaps == 1 && boundary_count == 1; }
  bool is_four_punctured_sphere() const { return orientable && genus_or_crosscaps == 0 && boundary_count == 4; }
  bool is_thrice_punctured_projective_plane() const {
    return !orientable && genus_or_crosscaps == 1 && boundary_count == 3;
  }

  friend bool operator==(const Surface&, const Surface&) = default;
};

/// Throws MalformedInput for negative parameters or a non-orientable surface
/// without crosscaps.
Surface make_surface(bool orientable, int genus_or_crosscaps, int boundary_count);
std::string describe(const Surface& s);

/// <y1..y2m (or c1..cg), s1..sr | handles = s1...sr>, one relator.
Presentation surface_presentation(const Surface& s);
/// Tietze elimination of a generator occurring exactly once in relator
/// `relator_index`: the relator is dropped and the generator substituted.
Presentation eliminate_generator(const Presentation& p, int relator_index, int generator);

struct FloorSpec {
  Presentation lower;
  Presentation upper;
  Surface surface;
  std::vector<Word> gluing_words;  // lower alphabet, one per boundary component
  std::vector<std::string> surface_generators;
  std::vector<std::string> bass_serre_generators;
  FreeMap retraction{0, 0, {}};    // upper -> lower
  // Two surface-group elements (upper alphabet) whose retraction images
  // must not commute.
  std::pair<Word, Word> designated_pair;
};

/// Lower generators into the upper alphabet, by name.
FreeMap inclusion(const FloorSpec& floor);

struct TowerSpec {
  std::vector<FloorSpec> floors;  // top floor first
  Presentation ground;
};

/// Each floor's lower group is the next floor's upper group, the last one
/// is the ground, and the ground is free.
bool consistent(const TowerSpec& tower);

struct SurfaceGluing {
  Surface surface;
  std::vector<Word> gluing_words;                   // lower alphabet, one per boundary component
  std::vector<std::string> surface_generator_names;  // 2m (or g) fresh names
  std::vector<std::string> bass_serre_names;        // r - 1 fresh names
  std::vector<Word> surface_generator_images;       // retraction images, lower alphabet
  std::pair<Word, Word> designated_pair;            // upper alphabet
};

/// Fundamental group of the two-vertex graph of groups: the surface vertex
/// is joined to `lower` by one edge per boundary component; the last edge
/// lies in the maximal tree. The new relator is handles * (t1 g1 t1^-1 ...
/// t_{r-1} g_{r-1} t_{r-1}^-1 g_r)^-1, written as the boundary product alone
/// when the surface has no handles or crosscaps. Bass-Serre generators
/// retract to 1. No admissibility checks: see validate_floor().
FloorSpec glue_surface(const Presentation& lower, const SurfaceGluing& gluing);

/// Relator t1 w1 t1^-1 t2 w1^-1 t2^-1 [w2, t3]^-1; retraction kills t1, t2, t3.
/// Throws InvalidFloor if w1 and w2 commute.
FloorSpec glue_four_punctured_sphere(const Presentation& lower, const Word& w1, const Word& w2,
                                     const std::vector<std::string>& fresh = {"t1", "t2", "t3"});
/// Relator [y1, y2] [w1, w2]^-1; retraction y1 -> w1, y2 -> w2.
/// Throws InvalidFloor if w1 and w2 commute.
FloorSpec glue_once_punctured_torus(const Presentation& lower, const Word& w1, const Word& w2,
                                    const std::vector<std::string>& fresh = {"y1", "y2"});

enum class CheckState { pass, fail, unchecked };

struct ConditionResult {
  std::string name;
  CheckState state = CheckState::unchecked;
  std::string detail;
};

struct FloorReport {
  std::vector<ConditionResult> conditions;
  /// No condition failed (unchecked ones do not count).
  bool passed() const;
  const ConditionResult& condition(const std::string& name) const;
};

/// Conditions: "surface", "gluing_classes", "retraction", "non_abelian_image",
/// plus "cyclic_alternative" which is always reported unchecked.
FloorReport validate_floor(const FloorSpec& floor, bool strict_surface_list);

struct GnBuild {
  TowerSpec tower;
  Presentation presentation;
};

/// n four-punctured-sphere floors over <a1, a2>; generators a1, a2, t1..t3n.
GnBuild build_gn(int n);

struct IsoStep {
  Presentation source;
  Presentation target;
  FreeMap forward{0, 0, {}};
  FreeMap backward{0, 0, {}};
};

struct GnTildeBuild {
  TowerSpec tower;                 // n once-punctured-torus floors over <e1..e_{n+2}>
  Presentation presentation;       // generators e1..e_{n+2}, y1..y2n
  std::vector<Presentation> stages;  // G^(0) = G^n, ..., G^(n) = presentation
  std::vector<IsoStep> chain;      // stage i -> stage i+1 with explicit inverse
  std::vector<Word> w_prime;       // w'_1..w'_2n over `presentation`
};

GnTildeBuild build_gn_tilde(int n);

/// support(w'_{2j-1}) ∪ support(w'_{2j}) ⊆ {e_1..e_{n+2}, y_{2j+1}..y_{2n}}.
bool support_condition_holds(const GnTildeBuild& build, int j);

/// The end-to-end map G^n -> stage n (composite of the chain).
FreeMap chain_composite(const GnTildeBuild& build);

const char* to_string(CheckState s);

}  // namespace freetower
