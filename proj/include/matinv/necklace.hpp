#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <vector>

#include "word.hpp"

namespace matinv {

// Cyclic equivalence class of a Word. The stored representative is the maximal
// rotation under the letter order L1 > L2, i.e. the ASCII-smallest rotation of
// the A/B string. Degree 0 (empty) is a legal necklace.
class Necklace {
 public:
  Necklace() = default;
  explicit Necklace(const Word& w) : rep_(canonical_rotation(w.letters)) {}
  static Necklace from_representative(std::string rep) {  // caller guarantees canonicity
    Necklace v;
    v.rep_ = std::move(rep);
    return v;
  }

  const std::string& rep() const { return rep_; }
  Word word() const { return Word(rep_); }
  int degree() const { return static_cast<int>(rep_.size()); }
  bool empty() const { return rep_.empty(); }
  Bidegree bidegree() const { return Word(rep_).bidegree(); }

  Necklace swapped_letters() const { return Necklace(word().swapped_letters()); }

  friend bool operator==(const Necklace&, const Necklace&) = default;

  // plain rotation scan; quadratic but exact and branch-free to reason about
  static std::string canonical_rotation(const std::string& s) {
    if (s.size() < 2) return s;
    std::string best = s;
    std::string cur = s;
    for (std::size_t i = 1; i < s.size(); ++i) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      if (cur < best) best = cur;
    }
    return best;
  }

 private:
  std::string rep_;
};

inline Necklace canonicalize(const Word& w) { return Necklace(w); }

// Degree-lexicographic order: shorter is smaller; equal length compares
// representatives with L1 > L2 (so the ASCII-greater string is the smaller
// necklace).
inline std::strong_ordering compare_deglex(const Necklace& a, const Necklace& b) {
  if (a.degree() != b.degree()) return a.degree() <=> b.degree();
  // ASCII-less string == greater necklace
  return b.rep() <=> a.rep();
}

struct DegLexLess {
  bool operator()(const Necklace& a, const Necklace& b) const {
    return compare_deglex(a, b) < 0;
  }
};

// true iff some rotation contains u repeated n times consecutively, u nonempty
inline bool is_chn(const Necklace& v, int n) {
  const int len = v.degree();
  if (len == 0 || n < 2 || len < n) return false;
  const std::string ww = v.rep() + v.rep();
  for (int l = 1; l * n <= len; ++l) {
    for (int i = 0; i < len; ++i) {
      bool ok = true;
      for (int j = i; j < i + (n - 1) * l; ++j) {
        if (ww[j] != ww[j + l]) {
          ok = false;
          break;
        }
      }
      if (ok) return true;
    }
  }
  return false;
}

struct ChDecomposition {
  Word u;     // repeated block, nonempty
  Word tail;  // possibly empty
};

// Writes some rotation of v as u^n . tail. Among valid decompositions: shortest
// u first, ties by lexicographically greatest u (letter order L1 > L2), then by
// greatest starting rotation.
inline std::optional<ChDecomposition> find_ch_decomposition(const Necklace& v, int n) {
  const int len = v.degree();
  if (len == 0 || n < 2 || len < n) return std::nullopt;
  const std::string ww = v.rep() + v.rep();
  for (int l = 1; l * n <= len; ++l) {
    bool found = false;
    std::string best_u, best_rot;
    int best_i = -1;
    for (int i = 0; i < len; ++i) {
      bool ok = true;
      for (int j = i; j < i + (n - 1) * l; ++j) {
        if (ww[j] != ww[j + l]) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      std::string u = ww.substr(i, l);
      std::string rot = ww.substr(i, len);
      // greatest u under L1 > L2 == ASCII-smallest; greatest rotation likewise
      if (!found || u < best_u || (u == best_u && rot < best_rot)) {
        found = true;
        best_u = std::move(u);
        best_rot = std::move(rot);
        best_i = i;
      }
    }
    if (found) {
      return ChDecomposition{Word(best_u), Word(ww.substr(best_i + n * l, len - n * l))};
    }
  }
  return std::nullopt;
}

// All necklaces of bidegree b, strictly descending in deg-lex order.
inline std::vector<Necklace> enumerate_necklaces(Bidegree b) {
  std::set<std::string> reps;
  const int len = b.total();
  // iterate subsets of positions for L2 via combination walk
  std::vector<int> pos(b.s);
  for (int i = 0; i < b.s; ++i) pos[i] = i;
  auto emit = [&]() {
    std::string w(len, 'A');
    for (int p : pos) w[p] = 'B';
    reps.insert(Necklace::canonical_rotation(w));
  };
  if (b.s == 0) {
    std::string w(len, 'A');
    reps.insert(w);
  } else {
    while (true) {
      emit();
      int i = b.s - 1;
      while (i >= 0 && pos[i] == len - b.s + i) --i;
      if (i < 0) break;
      ++pos[i];
      for (int j = i + 1; j < b.s; ++j) pos[j] = pos[j - 1] + 1;
    }
  }
  std::vector<Necklace> out;
  out.reserve(reps.size());
  for (const auto& r : reps) out.push_back(Necklace::from_representative(r));
  // equal degree: ASCII ascending == deg-lex descending
  return out;
}

inline Necklace swap_letters(const Necklace& v) { return v.swapped_letters(); }

inline Necklace parse_necklace(const std::string& text) { return Necklace(parse_word(text)); }
inline std::string render(const Necklace& v, LetterMode mode = LetterMode::Traceless) {
  return render_word(v.word(), mode);
}

}  // namespace matinv
