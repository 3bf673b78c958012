#pragma once

// Finite presentations and verification of explicit generator-image maps
// between them.
//
// Verification strength: a relator image must equal a target relator up to
// free and cyclic reduction, rotation and inversion. No derivation from the
// relators is attempted.

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "freetower/json.hpp"
#include "freetower/morphisms.hpp"
#include "freetower/words.hpp"

namespace freetower {

/// Generator i (0-based) is the free-group letter x_{i+1}. Relators are
/// stored as their cyclic cores, in the given rotation.
class Presentation {
 public:
  Presentation() = default;
  Presentation(std::vector<std::string> generators, std::vector<Word> relators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  int rank() const { return static_cast<int>(generators_.size()); }
  /// 1-based alphabet index of `name`, or 0.
  int index_of(std::string_view name) const;

  /// Relators written with generator names (`t1 a1 t1^-1 ...`).
  std::vector<std::string> named_relators() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

std::set<int> support(const Word& w);

enum class RelatorOutcome { matched, killed, unmatched };

struct RelatorMatch {
  RelatorOutcome outcome = RelatorOutcome::unmatched;
  int target_index = -1;  // matched: index into the target relators
  int rotation = 0;       // image = rotate_left(target or its inverse, rotation)
  bool inverted = false;
  Word image;             // cyclic core of the image
};

/// One entry per source relator.
std::vector<RelatorMatch> map_relator_check(const FreeMap& f, const Presentation& src, const Presentation& dst);

enum class IsoStatus { verified, retraction_only, failed, inconclusive };

struct IsoReport {
  IsoStatus status = IsoStatus::failed;
  std::vector<RelatorMatch> forward;   // f on src relators
  std::vector<RelatorMatch> backward;  // g on dst relators
  std::vector<bool> source_fixed;      // g∘f(x_k) == x_k per src generator
  std::vector<bool> target_fixed;      // f∘g(x_k) == x_k per dst generator
};

/// f: src -> dst, g: dst -> src.
IsoReport verify_isomorphism(const FreeMap& f, const FreeMap& g, const Presentation& src, const Presentation& dst);

/// Abelianization Z^free_rank ⊕ Z/t_1 ⊕ ... from the Smith normal form of the
/// relator exponent-sum matrix. Torsion coefficients exclude 1.
struct AbelianInvariants {
  int free_rank = 0;
  std::vector<std::int64_t> torsion;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};
AbelianInvariants abelianization(const Presentation& p);

/// Word over `from`'s generators rewritten over `to`'s, matching by name.
/// Throws MalformedInput if a used generator has no counterpart.
Word translate(const Word& w, const Presentation& from, const Presentation& to);
/// Same generator names, and the same multiset of relators up to rotation
/// and inversion, regardless of listing order.
bool equivalent_listing(const Presentation& a, const Presentation& b);
/// Least of the canonical rotations of r and r^-1.
CyclicWord relator_canonical_form(const Word& r);

Json to_json(const Presentation& p);
Presentation presentation_from_json(const Json& j);
Json to_json(const FreeMap& f);
FreeMap free_map_from_json(const Json& j);
/// Builds a map between named alphabets: `images` gives the image text (in
/// target names, `name^-1` for inverses) of listed source generators; the
/// others go to the generator of the same name in the target.
FreeMap named_map(const Presentation& src, const Presentation& dst,
                  std::span<const std::pair<std::string, std::string>> images);

const char* to_string(RelatorOutcome o);
const char* to_string(IsoStatus s);

}  // namespace freetower
