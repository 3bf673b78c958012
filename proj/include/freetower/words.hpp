#pragma once

// Reduced and cyclically reduced words in a free group of finite rank.
//
// A Word is always freely reduced; every constructor that accepts raw
// letters reduces them. Rank is not part of a Word: operations that need an
// ambient rank take it as a parameter.

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace freetower {

/// A generator x_k or its inverse X_k. Stored as the signed integer +k / -k.
class Letter {
 public:
  constexpr Letter() = default;
  constexpr Letter(int index, int sign) : value_(sign < 0 ? -index : index) {}

  static constexpr Letter from_signed(int v) { return Letter(v < 0 ? -v : v, v < 0 ? -1 : 1); }

  constexpr int index() const { return value_ < 0 ? -value_ : value_; }
  constexpr int sign() const { return value_ < 0 ? -1 : 1; }
  constexpr int signed_value() const { return value_; }
  constexpr Letter inverse() const { return from_signed(-value_); }

  // Position in the total order x1 < X1 < x2 < X2 < ...; also used as the
  // vertex number in Whitehead graphs.
  constexpr int order_key() const { return 2 * (index() - 1) + (value_ < 0 ? 1 : 0); }
  static constexpr Letter from_order_key(int key) { return Letter(key / 2 + 1, key % 2 ? -1 : 1); }

  friend constexpr bool operator==(Letter a, Letter b) { return a.value_ == b.value_; }
  friend constexpr std::strong_ordering operator<=>(Letter a, Letter b) {
    return a.order_key() <=> b.order_key();
  }

 private:
  int value_ = 1;
};

class Word {
 public:
  Word() = default;
  /// Reduces `raw`.
  explicit Word(std::span<const Letter> raw);
  explicit Word(const std::vector<Letter>& raw) : Word(std::span<const Letter>(raw)) {}
  /// Convenience: signed generator indices, e.g. {2, 1, -2} is x2 x1 X2.
  Word(std::initializer_list<int> signed_letters);

  static Word generator(int index) { return Word{index}; }

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter front() const { return letters_.front(); }
  Letter back() const { return letters_.back(); }

  Word inverse() const;
  /// Largest generator index occurring; 0 for the empty word.
  int max_index() const;
  bool is_cyclically_reduced() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

/// Free reduction of an arbitrary letter sequence.
Word reduce(std::span<const Letter> raw);
Word multiply(const Word& u, const Word& v);
Word invert(const Word& w);
Word power(const Word& w, int exponent);
/// u v u^-1 v^-1, reduced.
Word commutator(const Word& u, const Word& v);
bool commute(const Word& u, const Word& v);

inline Word operator*(const Word& u, const Word& v) { return multiply(u, v); }

/// A cyclically reduced word held in its least rotation
/// under the letter order.
class CyclicWord {
 public:
  CyclicWord() = default;
  /// Requires `w` cyclically reduced; throws MalformedInput otherwise.
  explicit CyclicWord(const Word& w);

  const std::vector<Letter>& letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  Word to_word() const { return Word(std::span<const Letter>(letters_)); }
  CyclicWord inverse() const { return CyclicWord(to_word().inverse()); }

  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;

 private:
  std::vector<Letter> letters_;
};

/// w = conjugator * core * conjugator^-1 with core cyclically reduced.
/// `core` keeps the original rotation so the identity holds literally;
/// `cyclic()` gives the canonical rotation.
struct CyclicReduction {
  Word core;
  Word conjugator;
  CyclicWord cyclic() const { return CyclicWord(core); }
};

CyclicReduction cyclic_reduce(const Word& w);

/// Start offset of the least rotation of `letters` (0 for empty input).
std::size_t least_rotation(std::span<const Letter> letters);

// Text grammar: space-separated tokens `x<k>` / `X<k>` (k >= 1, no leading
// zeros); the empty word is the single token `1`.
std::vector<Letter> parse_letters(std::string_view text);
Word parse_word(std::string_view text);
std::string format(const Word& w);
std::string format(const CyclicWord& w);
std::string format(Letter l);

/// Semicolon-separated list of word texts.
std::vector<Word> parse_word_list(std::string_view text);

/// Words written over named generators: `name` or `name^-1` tokens, `1` for
/// the empty word. Name i (0-based) is generator x_{i+1}.
Word parse_named(std::string_view text, std::span<const std::string> names);
std::string format_named(const Word& w, std::span<const std::string> names);

}  // namespace freetower
