#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace matinv {

// Two-letter alphabet. L1 renders as A (traceless) or X (generic), L2 as B/Y.
// The letter order is L1 > L2 throughout.
enum class Letter : char { L1 = 'A', L2 = 'B' };

inline Letter other(Letter l) { return l == Letter::L1 ? Letter::L2 : Letter::L1; }

struct Bidegree {
  int r = 0;  // count of L1
  int s = 0;  // count of L2

  int total() const { return r + s; }
  Bidegree operator+(Bidegree o) const { return {r + o.r, s + o.s}; }
  Bidegree operator-(Bidegree o) const { return {r - o.r, s - o.s}; }
  Bidegree swapped() const { return {s, r}; }
  friend auto operator<=>(const Bidegree&, const Bidegree&) = default;
};

// A plain word over {L1, L2}, stored as chars 'A'/'B'. 'A' < 'B' in ASCII, so an
// ASCII-lex-smaller string is lex-greater under the letter order L1 > L2.
struct Word {
  std::string letters;

  Word() = default;
  explicit Word(std::string s) : letters(std::move(s)) {
    for (char c : letters)
      if (c != 'A' && c != 'B') throw std::invalid_argument("word letters must be A/B");
  }

  int size() const { return static_cast<int>(letters.size()); }
  bool empty() const { return letters.empty(); }
  Bidegree bidegree() const {
    Bidegree b;
    for (char c : letters) (c == 'A' ? b.r : b.s)++;
    return b;
  }
  Word rotated(int i) const {  // starts at position i
    const int n = size();
    if (n == 0) return *this;
    i = ((i % n) + n) % n;
    return Word(letters.substr(i) + letters.substr(0, i));
  }
  Word swapped_letters() const {
    std::string s = letters;
    for (char& c : s) c = (c == 'A') ? 'B' : 'A';
    return Word(std::move(s));
  }
  Word operator+(const Word& o) const { return Word(letters + o.letters); }
  friend bool operator==(const Word&, const Word&) = default;
};

enum class LetterMode { Traceless, Generic };  // A/B vs X/Y rendering

// Grammar: sequence of `<letter>` or `<letter>^<positive int>`; both alphabets
// accepted, mixing rejected.
inline Word parse_word(const std::string& text) {
  std::string out;
  bool seen_ab = false, seen_xy = false;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    char letter;
    if (c == 'A' || c == 'B') {
      seen_ab = true;
      letter = c;
    } else if (c == 'X' || c == 'Y') {
      seen_xy = true;
      letter = (c == 'X') ? 'A' : 'B';
    } else {
      throw std::invalid_argument(std::string("unknown letter '") + c + "' in word");
    }
    if (seen_ab && seen_xy) throw std::invalid_argument("mixed alphabets in word");
    ++i;
    long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw std::invalid_argument("missing exponent after '^'");
      exp = std::stol(text.substr(start, i - start));
      if (exp <= 0) throw std::invalid_argument("exponent must be positive");
    }
    out.append(static_cast<std::size_t>(exp), letter);
  }
  return Word(std::move(out));
}

// Exponent-compressed rendering, e.g. "A^3B^2"; empty word renders as "1".
inline std::string render_word(const Word& w, LetterMode mode = LetterMode::Traceless) {
  if (w.empty()) return "1";
  std::string out;
  const auto& s = w.letters;
  for (std::size_t i = 0; i < s.size();) {
    std::size_t j = i;
    while (j < s.size() && s[j] == s[i]) ++j;
    char c = s[i];
    if (mode == LetterMode::Generic) c = (c == 'A') ? 'X' : 'Y';
    out += c;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

}  // namespace matinv
