#pragma once

// Finite certificates for the forking argument: the word sequence b_i, the
// normalization of an input word, union Whitehead graphs with b_i, and
// per-rank generation certificates.

#include <optional>
#include <string>
#include <vector>

#include "freetower/json.hpp"
#include "freetower/morphisms.hpp"
#include "freetower/whitehead.hpp"
#include "freetower/words.hpp"

namespace freetower {

/// x_{i+1} x_i ... x_2 x_1 x_2^2 ... x_i^2 x_{i+1}; length 3i.
Word b_word(int i);

struct Normalization {
  bool special_case_power = false;  // cyclic core is a power of one generator
  FreeMap sigma{0, 0, {}};          // signed permutation; identity in the special case
  Word normalized;                  // sigma(a)
  Word core;                        // cyclic core of sigma(a)
};

/// The smallest index of the cyclic core goes to 1; the other core indices
/// go to 3, 4, ... in order of first appearance in the canonical rotation;
/// the unused indices fill the remaining targets in increasing order.
/// sigma acts on max(rank, distinct core indices + 1) generators.
/// Trivial `a`, or `a` above `rank`, throws MalformedInput.
Normalization normalize_for_witness(const Word& a, int rank);

enum class ForkVerdict { forks, special_case_power, inconclusive };

struct ForkReport {
  Word input_word;
  Normalization normalization;
  int index_i = 1;
  int ambient_rank = 2;  // index_i + 1
  WhiteheadGraph graph{0};
  bool connected = false;
  bool all_vertices_incident = false;
  std::vector<Letter> cut_vertices;
  ForkVerdict verdict = ForkVerdict::inconclusive;
  std::string note;
};

/// Whitehead graph over rank i + 1 of {core of normalized a, b_i}.
/// Throws MalformedInput if i < 1, a is trivial, or the normalized core
/// needs more than i + 1 generators.
ForkReport fork_witness(const Word& a, int i);

/// Smallest i accepted by fork_witness for `a` (1 in the special case).
int minimal_fork_index(const Word& a);

struct GenerationCertificate {
  int rank = 0;                 // n + 1
  std::vector<Word> generators;  // b_1 .. b_n, x_{n+1}
  bool generates = false;
};

struct WeightReport {
  Word input_word;
  int count = 0;
  bool special_case_power = false;
  std::vector<GenerationCertificate> generation;
  std::vector<ForkReport> forks;
  std::string note;

  /// Every generation certificate holds and every fork report is FORKS,
  /// or the input is the special case.
  bool complete() const;
};

/// For `count` consecutive indices starting at minimal_fork_index(a).
WeightReport weight_witness(const Word& a, int count);

Json to_json(const ForkReport& r);
ForkReport fork_report_from_json(const Json& j);
Json to_json(const WeightReport& r);
WeightReport weight_report_from_json(const Json& j);

const char* to_string(ForkVerdict v);

}  // namespace freetower
