#pragma once

// Homomorphisms between free groups given by generator images, Whitehead
// automorphisms, and primitivity by Whitehead length reduction.

#include <optional>
#include <vector>

#include "freetower/words.hpp"

namespace freetower {

/// Homomorphism F_source_rank -> F_target_rank, x_k |-> images[k-1].
class FreeMap {
 public:
  FreeMap(int source_rank, int target_rank, std::vector<Word> images);

  static FreeMap identity(int rank);
  /// x_k |-> images[k-1] for single letters (a signed permutation when the
  /// letters are a permutation of the indices up to sign).
  static FreeMap from_letters(int target_rank, const std::vector<Letter>& images);

  int source_rank() const { return source_rank_; }
  int target_rank() const { return target_rank_; }
  const Word& image(int index) const { return images_.at(static_cast<std::size_t>(index - 1)); }
  const std::vector<Word>& images() const { return images_; }

  /// True when every generator is mapped to itself.
  bool fixes_generators() const;

  friend bool operator==(const FreeMap&, const FreeMap&) = default;

 private:
  int source_rank_;
  int target_rank_;
  std::vector<Word> images_;
};

/// Image of `w`; throws MalformedInput if `w` uses an index > source_rank.
Word apply(const FreeMap& f, const Word& w);
/// f after g. Requires g.target_rank() <= f.source_rank().
FreeMap compose(const FreeMap& f, const FreeMap& g);
/// True iff g∘f and f∘g both fix every generator after free reduction.
bool verify_inverse_pair(const FreeMap& f, const FreeMap& g);

enum class MoveKind { permutation, multiplier };

/// Action of a multiplier move on a generator x other than the multiplier's.
enum class MultiplierAction { fix, left, right, conjugate };  // x, a x, x a^-1, a x a^-1

struct WhiteheadMove {
  MoveKind kind = MoveKind::permutation;
  int rank = 0;
  // permutation: image letter of each generator x_1..x_rank.
  std::vector<Letter> permutation;
  // multiplier: x_|a| is fixed; every other generator follows actions[k-1].
  Letter multiplier;
  std::vector<MultiplierAction> actions;

  FreeMap as_map() const;
  WhiteheadMove inverse() const;
};

/// All signed permutations of rank n except the identity, in lexicographic
/// order of (permutation, sign pattern).
std::vector<WhiteheadMove> permutation_moves(int rank);
/// All nontrivial multiplier moves: multipliers in letter order, action
/// patterns as a base-4 counter over the other generators (lowest index is
/// the least significant digit; digit = left bit + 2 * right bit).
std::vector<WhiteheadMove> multiplier_moves(int rank);

CyclicWord apply_cyclic(const WhiteheadMove& move, const CyclicWord& w);

struct MinimizeOptions {
  int max_rank = 6;
};

struct Minimization {
  CyclicWord minimal;
  std::vector<WhiteheadMove> transcript;
};

/// Steepest descent on cyclic length over all Whitehead moves of the rank.
/// Ties go to the first move in enumeration order; permutation moves never
/// change length and are therefore never selected.
Minimization whitehead_minimize(const CyclicWord& w, int rank, const MinimizeOptions& options = {});

/// Primitive iff the cyclic core minimizes to length 1.
bool is_primitive(const Word& w, int rank, const MinimizeOptions& options = {});

}  // namespace freetower
