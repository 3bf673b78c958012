#include "freetower/words.hpp"

#include <algorithm>
#include <charconv>

#include "freetower/error.hpp"

namespace freetower {

Word reduce(std::span<const Letter> raw) { return Word(raw); }

Word::Word(std::span<const Letter> raw) {
  letters_.reserve(raw.size());
  for (Letter l : raw) {
    if (l.index() < 1) throw MalformedInput("generator index must be at least 1");
    if (!letters_.empty() && letters_.back() == l.inverse()) {
      letters_.pop_back();
    } else {
      letters_.push_back(l);
    }
  }
}

Word::Word(std::initializer_list<int> signed_letters) {
  std::vector<Letter> raw;
  raw.reserve(signed_letters.size());
  for (int v : signed_letters) {
    if (v == 0) throw MalformedInput("generator index must be at least 1");
    raw.push_back(Letter::from_signed(v));
  }
  *this = Word(std::span<const Letter>(raw));
}

Word Word::inverse() const {
  Word out;
  out.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.letters_.push_back(it->inverse());
  return out;
}

int Word::max_index() const {
  int m = 0;
  for (Letter l : letters_) m = std::max(m, l.index());
  return m;
}

bool Word::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  return std::lexicographical_compare_three_way(a.letters_.begin(), a.letters_.end(),
                                                b.letters_.begin(), b.letters_.end());
}

Word multiply(const Word& u, const Word& v) {
  std::size_t cancel = 0;
  const auto& ul = u.letters();
  const auto& vl = v.letters();
  while (cancel < ul.size() && cancel < vl.size() &&
         ul[ul.size() - 1 - cancel] == vl[cancel].inverse()) {
    ++cancel;
  }
  std::vector<Letter> raw(ul.begin(), ul.end() - static_cast<std::ptrdiff_t>(cancel));
  raw.insert(raw.end(), vl.begin() + static_cast<std::ptrdiff_t>(cancel), vl.end());
  return Word(raw);
}

Word invert(const Word& w) { return w.inverse(); }

Word power(const Word& w, int exponent) {
  Word base = exponent < 0 ? w.inverse() : w;
  Word out;
  for (int i = 0; i < std::abs(exponent); ++i) out = out * base;
  return out;
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

bool commute(const Word& u, const Word& v) { return commutator(u, v).empty(); }

std::size_t least_rotation(std::span<const Letter> s) {
  const std::size_t n = s.size();
  if (n == 0) return 0;
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    Letter a = s[(i + k) % n];
    Letter b = s[(j + k) % n];
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b) {
      i += k + 1;
    } else {
      j += k + 1;
    }
    if (i == j) ++j;
    k = 0;
  }
  return std::min(i, j);
}

CyclicWord::CyclicWord(const Word& w) {
  if (!w.is_cyclically_reduced()) {
    throw MalformedInput("word is not cyclically reduced: " + format(w));
  }
  const auto& l = w.letters();
  const std::size_t start = least_rotation(l);
  letters_.reserve(l.size());
  letters_.insert(letters_.end(), l.begin() + static_cast<std::ptrdiff_t>(start), l.end());
  letters_.insert(letters_.end(), l.begin(), l.begin() + static_cast<std::ptrdiff_t>(start));
}

CyclicReduction cyclic_reduce(const Word& w) {
  const auto& l = w.letters();
  std::size_t lo = 0;
  std::size_t hi = l.size();
  while (hi - lo >= 2 && l[lo] == l[hi - 1].inverse()) {
    ++lo;
    --hi;
  }
  CyclicReduction out;
  out.conjugator = Word(std::span<const Letter>(l.data(), lo));
  out.core = Word(std::span<const Letter>(l.data() + lo, hi - lo));
  return out;
}

namespace {

std::vector<std::string_view> split_tokens(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    while (pos < text.size() && text[pos] == sep) ++pos;
    if (pos == text.size()) break;
    std::size_t end = text.find(sep, pos);
    if (end == std::string_view::npos) end = text.size();
    out.push_back(text.substr(pos, end - pos));
    pos = end;
  }
  return out;
}

Letter parse_letter_token(std::string_view tok) {
  if (tok.size() < 2 || (tok[0] != 'x' && tok[0] != 'X')) {
    throw MalformedInput("unknown token '" + std::string(tok) + "'");
  }
  std::string_view digits = tok.substr(1);
  if (digits[0] == '0') throw MalformedInput("bad generator index in '" + std::string(tok) + "'");
  int index = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || index < 1) {
    throw MalformedInput("bad generator index in '" + std::string(tok) + "'");
  }
  return Letter(index, tok[0] == 'x' ? 1 : -1);
}

}  // namespace

std::vector<Letter> parse_letters(std::string_view text) {
  auto tokens = split_tokens(text, ' ');
  if (tokens.empty()) throw MalformedInput("empty word text (use '1' for the identity)");
  if (tokens.size() == 1 && tokens[0] == "1") return {};
  std::vector<Letter> out;
  out.reserve(tokens.size());
  for (auto tok : tokens) out.push_back(parse_letter_token(tok));
  return out;
}

Word parse_word(std::string_view text) { return Word(parse_letters(text)); }

std::string format(Letter l) {
  return (l.sign() > 0 ? "x" : "X") + std::to_string(l.index());
}

namespace {
std::string format_letters(std::span<const Letter> letters) {
  if (letters.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < letters.size(); ++i) {
    if (i) out += ' ';
    out += format(letters[i]);
  }
  return out;
}
}  // namespace

std::string format(const Word& w) { return format_letters(w.letters()); }
std::string format(const CyclicWord& w) { return format_letters(w.letters()); }

std::vector<Word> parse_word_list(std::string_view text) {
  std::vector<Word> out;
  for (auto item : split_tokens(text, ';')) {
    // Items consisting only of spaces are skipped.
    if (item.find_first_not_of(' ') == std::string_view::npos) continue;
    out.push_back(parse_word(item));
  }
  return out;
}

Word parse_named(std::string_view text, std::span<const std::string> names) {
  auto tokens = split_tokens(text, ' ');
  if (tokens.empty()) throw MalformedInput("empty word text (use '1' for the identity)");
  if (tokens.size() == 1 && tokens[0] == "1") return {};
  std::vector<Letter> raw;
  for (auto tok : tokens) {
    int sign = 1;
    if (tok.ends_with("^-1")) {
      sign = -1;
      tok.remove_suffix(3);
    }
    auto it = std::find(names.begin(), names.end(), tok);
    if (it == names.end()) throw MalformedInput("unknown generator name '" + std::string(tok) + "'");
    raw.emplace_back(static_cast<int>(it - names.begin()) + 1, sign);
  }
  return Word(raw);
}

std::string format_named(const Word& w, std::span<const std::string> names) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    Letter l = w[i];
    if (l.index() > static_cast<int>(names.size())) {
      throw MalformedInput("letter " + format(l) + " has no generator name");
    }
    if (i) out += ' ';
    out += names[static_cast<std::size_t>(l.index() - 1)];
    if (l.sign() < 0) out += "^-1";
  }
  return out;
}

}  // namespace freetower
