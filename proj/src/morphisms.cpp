#include "freetower/morphisms.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "freetower/error.hpp"

namespace freetower {

FreeMap::FreeMap(int source_rank, int target_rank, std::vector<Word> images)
    : source_rank_(source_rank), target_rank_(target_rank), images_(std::move(images)) {
  if (source_rank_ < 0 || target_rank_ < 0) throw MalformedInput("ranks must be non-negative");
  if (static_cast<int>(images_.size()) != source_rank_) {
    throw MalformedInput("expected " + std::to_string(source_rank_) + " generator images, got " +
                         std::to_string(images_.size()));
  }
  for (std::size_t k = 0; k < images_.size(); ++k) {
    if (images_[k].max_index() > target_rank_) {
      throw MalformedInput("image of x" + std::to_string(k + 1) + " uses an index above target rank " +
                           std::to_string(target_rank_));
    }
  }
}

FreeMap FreeMap::identity(int rank) {
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int k = 1; k <= rank; ++k) images.push_back(Word::generator(k));
  return FreeMap(rank, rank, std::move(images));
}

FreeMap FreeMap::from_letters(int target_rank, const std::vector<Letter>& letters) {
  std::vector<Word> images;
  images.reserve(letters.size());
  for (Letter l : letters) images.push_back(Word{l.signed_value()});
  return FreeMap(static_cast<int>(letters.size()), target_rank, std::move(images));
}

bool FreeMap::fixes_generators() const {
  for (int k = 1; k <= source_rank_; ++k) {
    if (image(k) != Word::generator(k)) return false;
  }
  return true;
}

Word apply(const FreeMap& f, const Word& w) {
  if (w.max_index() > f.source_rank()) {
    throw MalformedInput("word " + format(w) + " uses an index above source rank " +
                         std::to_string(f.source_rank()));
  }
  std::vector<Letter> raw;
  for (Letter l : w.letters()) {
    const Word& img = f.image(l.index());
    if (l.sign() > 0) {
      raw.insert(raw.end(), img.letters().begin(), img.letters().end());
    } else {
      for (auto it = img.letters().rbegin(); it != img.letters().rend(); ++it) raw.push_back(it->inverse());
    }
  }
  return Word(raw);
}

FreeMap compose(const FreeMap& f, const FreeMap& g) {
  if (g.target_rank() > f.source_rank()) {
    throw MalformedInput("cannot compose: inner target rank " + std::to_string(g.target_rank()) +
                         " exceeds outer source rank " + std::to_string(f.source_rank()));
  }
  std::vector<Word> images;
  images.reserve(g.images().size());
  for (const Word& w : g.images()) images.push_back(apply(f, w));
  return FreeMap(g.source_rank(), f.target_rank(), std::move(images));
}

bool verify_inverse_pair(const FreeMap& f, const FreeMap& g) {
  if (f.target_rank() > g.source_rank() || g.target_rank() > f.source_rank()) return false;
  return compose(g, f).fixes_generators() && compose(f, g).fixes_generators();
}

FreeMap WhiteheadMove::as_map() const {
  if (kind == MoveKind::permutation) return FreeMap::from_letters(rank, permutation);
  const Word a{multiplier.signed_value()};
  const Word a_inv = a.inverse();
  std::vector<Word> images;
  images.reserve(static_cast<std::size_t>(rank));
  for (int k = 1; k <= rank; ++k) {
    const Word x = Word::generator(k);
    if (k == multiplier.index()) {
      images.push_back(x);
      continue;
    }
    switch (actions[static_cast<std::size_t>(k - 1)]) {
      case MultiplierAction::fix: images.push_back(x); break;
      case MultiplierAction::left: images.push_back(a * x); break;
      case MultiplierAction::right: images.push_back(x * a_inv); break;
      case MultiplierAction::conjugate: images.push_back(a * x * a_inv); break;
    }
  }
  return FreeMap(rank, rank, std::move(images));
}

WhiteheadMove WhiteheadMove::inverse() const {
  WhiteheadMove inv = *this;
  if (kind == MoveKind::permutation) {
    for (int k = 1; k <= rank; ++k) {
      Letter img = permutation[static_cast<std::size_t>(k - 1)];
      inv.permutation[static_cast<std::size_t>(img.index() - 1)] = Letter(k, img.sign());
    }
  } else {
    inv.multiplier = multiplier.inverse();
  }
  return inv;
}

std::vector<WhiteheadMove> permutation_moves(int rank) {
  std::vector<WhiteheadMove> out;
  std::vector<int> perm(static_cast<std::size_t>(rank));
  std::iota(perm.begin(), perm.end(), 1);
  do {
    for (unsigned signs = 0; signs < (1u << rank); ++signs) {
      WhiteheadMove m;
      m.kind = MoveKind::permutation;
      m.rank = rank;
      bool identity = signs == 0;
      for (int k = 0; k < rank; ++k) {
        m.permutation.emplace_back(perm[static_cast<std::size_t>(k)], (signs >> k) & 1u ? -1 : 1);
        if (perm[static_cast<std::size_t>(k)] != k + 1) identity = false;
      }
      if (!identity) out.push_back(std::move(m));
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<WhiteheadMove> multiplier_moves(int rank) {
  std::vector<WhiteheadMove> out;
  if (rank < 1) return out;
  const unsigned long patterns = 1ul << (2 * (rank - 1));
  for (int key = 0; key < 2 * rank; ++key) {
    const Letter a = Letter::from_order_key(key);
    for (unsigned long counter = 1; counter < patterns; ++counter) {
      WhiteheadMove m;
      m.kind = MoveKind::multiplier;
      m.rank = rank;
      m.multiplier = a;
      m.actions.assign(static_cast<std::size_t>(rank), MultiplierAction::fix);
      int digit_pos = 0;
      for (int k = 1; k <= rank; ++k) {
        if (k == a.index()) continue;
        const unsigned long digit = (counter >> (2 * digit_pos)) & 3ul;
        m.actions[static_cast<std::size_t>(k - 1)] = static_cast<MultiplierAction>(digit);
        ++digit_pos;
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

CyclicWord apply_cyclic(const WhiteheadMove& move, const CyclicWord& w) {
  return cyclic_reduce(apply(move.as_map(), w.to_word())).cyclic();
}

Minimization whitehead_minimize(const CyclicWord& w, int rank, const MinimizeOptions& options) {
  if (w.empty()) throw MalformedInput("cannot minimize the empty word");
  if (w.to_word().max_index() > rank) throw MalformedInput("word uses an index above rank " + std::to_string(rank));
  if (rank > options.max_rank) {
    throw MalformedInput("rank " + std::to_string(rank) + " exceeds the move-enumeration cap " +
                         std::to_string(options.max_rank));
  }
  const auto moves = multiplier_moves(rank);
  std::vector<FreeMap> maps;
  maps.reserve(moves.size());
  for (const auto& m : moves) maps.push_back(m.as_map());

  Minimization result{w, {}};
  while (result.minimal.size() > 1) {
    std::size_t best_len = result.minimal.size();
    std::size_t best = moves.size();
    const Word current = result.minimal.to_word();
    for (std::size_t i = 0; i < maps.size(); ++i) {
      const std::size_t len = cyclic_reduce(apply(maps[i], current)).core.size();
      if (len < best_len) {
        best_len = len;
        best = i;
      }
    }
    if (best == moves.size()) break;
    result.minimal = cyclic_reduce(apply(maps[best], current)).cyclic();
    result.transcript.push_back(moves[best]);
  }
  return result;
}

bool is_primitive(const Word& w, int rank, const MinimizeOptions& options) {
  if (w.empty()) throw MalformedInput("primitivity is undefined for the empty word");
  return whitehead_minimize(cyclic_reduce(w).cyclic(), rank, options).minimal.size() == 1;
}

}  // namespace freetower
