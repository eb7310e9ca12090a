#pragma once

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "genpoly.hpp"
#include "necklace.hpp"
#include "trace_poly.hpp"

namespace matinv {

// One defining term coef * Tr(C^comm_power * suffix) with C = [A,B].
struct GeneratorPart {
  Rational coef;
  int comm_power = 0;
  std::string suffix;  // word over A/B appended after C^m
};

struct Generator {
  int display_index = 0;    // the a_k label (n=4: 3..32)
  std::string name;         // a3..a32 / g10,g11
  std::string alias;        // paper label when it differs (n=3: a15,a21)
  Bidegree bidegree;
  std::vector<GeneratorPart> parts;
};

// [A,B]^m expanded into +/- words, as (coef, word) pairs
inline std::vector<std::pair<Rational, std::string>> commutator_words(int m) {
  std::vector<std::pair<Rational, std::string>> terms{{Rational(1), ""}};
  for (int k = 0; k < m; ++k) {
    std::vector<std::pair<Rational, std::string>> next;
    next.reserve(terms.size() * 2);
    for (const auto& [c, w] : terms) {
      next.emplace_back(c, w + "AB");
      next.emplace_back(-c, w + "BA");
    }
    terms = std::move(next);
  }
  return terms;
}

inline NecklaceSum expand_generator(const Generator& g) {
  NecklaceSum out;
  for (const auto& part : g.parts) {
    for (const auto& [c, w] : commutator_words(part.comm_power)) {
      out.add(Necklace(Word(w + part.suffix)), c * part.coef);
    }
  }
  return out;
}

// The generator table plus ring metadata for one matrix size.
class InvariantRing {
 public:
  explicit InvariantRing(int n) : n_(n) { build(); }

  int n() const { return n_; }
  const GenRing& ring() const { return ring_; }
  const std::vector<Generator>& generators() const { return gens_; }
  const Generator& generator(int idx) const { return gens_[static_cast<std::size_t>(idx)]; }
  int count() const { return static_cast<int>(gens_.size()); }

  const NecklaceSum& expansion(int idx) const { return expansions_[static_cast<std::size_t>(idx)]; }
  const std::set<Necklace, DegLexLess>& support() const { return support_; }
  bool in_support(const Necklace& v) const { return support_.count(v) > 0; }

  // ring index of a generator whose expansion is a single plain necklace, if any
  const std::vector<std::pair<Necklace, int>>& single_trace_generators() const {
    return singles_;
  }

  GenPoly variable(int idx) const { return GenPoly::variable(idx); }

 private:
  void add(int display, std::string name, Bidegree b, std::vector<GeneratorPart> parts,
           std::string alias = "") {
    gens_.push_back(Generator{display, std::move(name), std::move(alias), b, std::move(parts)});
  }

  void build() {
    if (n_ != 2 && n_ != 3 && n_ != 4) throw std::invalid_argument("supported n: 2, 3, 4");
    auto word_gen = [&](int display, const std::string& w) {
      add(display, "a" + std::to_string(display), Word(w).bidegree(),
          {{Rational(1), 0, w}});
    };
    // degree <= 2
    word_gen(3, "AA");
    word_gen(4, "AB");
    word_gen(5, "BB");
    if (n_ >= 3) {
      word_gen(6, "AAA");
      word_gen(7, "AAB");
      word_gen(8, "ABB");
      word_gen(9, "BBB");
    }
    if (n_ == 3) {
      add(10, "g10", {2, 2}, {{Rational(1, 2), 2, ""}}, "a15");
      add(11, "g11", {3, 3}, {{Rational(1, 3), 3, ""}}, "a21");
    }
    if (n_ == 4) {
      word_gen(10, "AAAA");
      word_gen(11, "AAAB");
      word_gen(12, "AABB");
      word_gen(13, "ABBB");
      word_gen(14, "BBBB");
      add(15, "a15", {2, 2}, {{Rational(1, 2), 2, ""}});
      add(16, "a16", {3, 2}, {{Rational(1), 2, "A"}});
      add(17, "a17", {2, 3}, {{Rational(1), 2, "B"}});
      add(18, "a18", {4, 2}, {{Rational(1), 2, "AA"}});
      add(19, "a19", {3, 3}, {{Rational(1), 2, "AB"}, {Rational(1), 2, "BA"}});
      add(20, "a20", {2, 4}, {{Rational(1), 2, "BB"}});
      add(21, "a21", {3, 3}, {{Rational(1, 3), 3, ""}});
      add(22, "a22", {4, 3}, {{Rational(1), 3, "A"}});
      add(23, "a23", {3, 4}, {{Rational(1), 3, "B"}});
      add(24, "a24", {5, 3}, {{Rational(1), 3, "AA"}});
      add(25, "a25", {4, 4}, {{Rational(1, 2), 3, "AB"}, {Rational(1, 2), 3, "BA"}});
      add(26, "a26", {3, 5}, {{Rational(1), 3, "BB"}});
      add(27, "a27", {4, 4}, {{Rational(1, 2), 4, ""}});
      add(28, "a28", {6, 3}, {{Rational(1), 3, "AAA"}});
      add(29, "a29", {5, 4},
          {{Rational(1, 3), 3, "AAB"}, {Rational(1, 3), 3, "ABA"}, {Rational(1, 3), 3, "BAA"}});
      add(30, "a30", {4, 5},
          {{Rational(1, 3), 3, "ABB"}, {Rational(1, 3), 3, "BAB"}, {Rational(1, 3), 3, "BBA"}});
      add(31, "a31", {3, 6}, {{Rational(1), 3, "BBB"}});
      add(32, "a32", {5, 5},
          {{Rational(1), 3, "AABB"},
           {Rational(-1), 3, "ABBA"},
           {Rational(-1), 3, "BAAB"},
           {Rational(1), 3, "BBAA"}});
    }

    ring_.n = n_;
    ring_.count = static_cast<int>(gens_.size());
    for (const auto& g : gens_) {
      ring_.names.push_back(g.name);
      ring_.bidegrees.push_back(g.bidegree);
    }
    build_custom_order();
    build_swap();

    for (int i = 0; i < count(); ++i) {
      expansions_.push_back(expand_generator(gens_[static_cast<std::size_t>(i)]));
      for (const auto& [v, c] : expansions_.back().terms()) support_.insert(v);
      if (expansions_.back().terms().size() == 1 &&
          expansions_.back().terms().begin()->second == 1 &&
          gens_[static_cast<std::size_t>(i)].parts.size() == 1 &&
          gens_[static_cast<std::size_t>(i)].parts[0].comm_power == 0) {
        singles_.emplace_back(expansions_.back().terms().begin()->first, i);
      }
    }
  }

  // variable order: a_i < a_j iff bidegree(a_i) < bidegree(a_j) lexicographically,
  // with a15 < a12, a21 < a19, a27 < a25 on the three ties
  void build_custom_order() {
    std::vector<int> idx(static_cast<std::size_t>(ring_.count));
    std::iota(idx.begin(), idx.end(), 0);
    auto tiebreak = [&](int i) {
      int d = gens_[static_cast<std::size_t>(i)].display_index;
      return (d == 15 || d == 21 || d == 27) ? 0 : 1;
    };
    std::stable_sort(idx.begin(), idx.end(), [&](int i, int j) {
      const Bidegree a = ring_.bidegrees[static_cast<std::size_t>(i)];
      const Bidegree b = ring_.bidegrees[static_cast<std::size_t>(j)];
      if (a.r != b.r) return a.r < b.r;
      if (a.s != b.s) return a.s < b.s;
      return tiebreak(i) < tiebreak(j);
    });
    ring_.custom_order_rank.assign(static_cast<std::size_t>(ring_.count), 0);
    for (int rank = 0; rank < ring_.count; ++rank)
      ring_.custom_order_rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(rank)])] = rank;
  }

  // A<->B sends Tr(C^m w) to (-1)^m Tr(C^m swap(w)); match part multisets
  void build_swap() {
    auto key_of = [&](const Generator& g, bool swapped) {
      std::vector<std::pair<std::string, Rational>> key;
      for (const auto& p : g.parts) {
        std::string w = p.suffix;
        if (swapped)
          for (char& c : w) c = (c == 'A') ? 'B' : 'A';
        // a plain trace is cyclic in its suffix; with C-powers the block is fixed
        if (p.comm_power == 0) w = Necklace::canonical_rotation(w);
        key.emplace_back(std::to_string(p.comm_power) + ":" + w, p.coef);
      }
      std::sort(key.begin(), key.end());
      return key;
    };
    ring_.swap_image.assign(static_cast<std::size_t>(ring_.count), -1);
    ring_.swap_sign.assign(static_cast<std::size_t>(ring_.count), 1);
    for (int i = 0; i < count(); ++i) {
      auto want = key_of(gens_[static_cast<std::size_t>(i)], true);
      bool found = false;
      for (int j = 0; j < count(); ++j) {
        if (key_of(gens_[static_cast<std::size_t>(j)], false) == want) {
          ring_.swap_image[static_cast<std::size_t>(i)] = j;
          int m = gens_[static_cast<std::size_t>(i)].parts[0].comm_power;
          ring_.swap_sign[static_cast<std::size_t>(i)] = (m % 2 == 0) ? 1 : -1;
          found = true;
          break;
        }
      }
      if (!found) throw std::logic_error("no swap partner for generator " + gens_[static_cast<std::size_t>(i)].name);
    }
  }

  int n_;
  GenRing ring_;
  std::vector<Generator> gens_;
  std::vector<NecklaceSum> expansions_;
  std::set<Necklace, DegLexLess> support_;
  std::vector<std::pair<Necklace, int>> singles_;
};

// All monomials of exactly bidegree b over a generator subset, sorted
// descending in the requested order. Deterministic.
inline std::vector<GenMonomial> graded_basis(const GenRing& ring, Bidegree b,
                                             const std::vector<int>& vars,
                                             OrderKind kind = OrderKind::PaperCustom) {
  std::vector<GenMonomial> out;
  GenMonomial cur;
  auto rec = [&](auto&& self, std::size_t pos, Bidegree left) -> void {
    if (left.r == 0 && left.s == 0) {
      out.push_back(cur);
      return;
    }
    if (pos == vars.size()) return;
    int i = vars[pos];
    Bidegree g = ring.bidegrees[static_cast<std::size_t>(i)];
    int emax = std::numeric_limits<int>::max();
    if (g.r > 0) emax = left.r / g.r;
    if (g.s > 0) emax = std::min(emax, left.s / g.s);
    if (g.r == 0 && g.s == 0) emax = 0;
    for (int e = 0; e <= emax; ++e) {
      cur.exps[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
      self(self, pos + 1, {left.r - e * g.r, left.s - e * g.s});
    }
    cur.exps[static_cast<std::size_t>(i)] = 0;
  };
  rec(rec, 0, b);
  std::sort(out.begin(), out.end(),
            [&](const GenMonomial& a, const GenMonomial& c) { return ring.monomial_less(c, a, kind); });
  return out;
}

inline std::vector<int> all_vars(const GenRing& ring) {
  std::vector<int> v(static_cast<std::size_t>(ring.count));
  std::iota(v.begin(), v.end(), 0);
  return v;
}

}  // namespace matinv
