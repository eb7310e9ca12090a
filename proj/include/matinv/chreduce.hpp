#pragma once

#include <mutex>
#include <shared_mutex>

#include "generators.hpp"
#include "genpoly.hpp"
#include "necklace.hpp"

namespace matinv {

// Necklace -> GenPoly store. Concurrent reads, serialized inserts; a frontier
// marks the highest degree that is fully populated.
class ExpressionTable {
 public:
  bool contains(const Necklace& v) const {
    std::shared_lock lock(mu_);
    return map_.count(v) > 0;
  }
  std::optional<GenPoly> find(const Necklace& v) const {
    std::shared_lock lock(mu_);
    auto it = map_.find(v);
    if (it == map_.end()) return std::nullopt;
    return it->second;
  }
  void insert(const Necklace& v, GenPoly p) {
    std::unique_lock lock(mu_);
    map_.emplace(v, std::move(p));
  }
  std::size_t size() const {
    std::shared_lock lock(mu_);
    return map_.size();
  }
  int frontier() const { return frontier_; }
  void set_frontier(int d) { frontier_ = d; }
  std::map<Necklace, GenPoly, DegLexLess> snapshot() const {
    std::shared_lock lock(mu_);
    return map_;
  }

 private:
  mutable std::shared_mutex mu_;
  std::map<Necklace, GenPoly, DegLexLess> map_;
  int frontier_ = 0;
};

// Newton's identities: elementary symmetric functions c_1..c_n from power sums.
inline std::vector<GenPoly> newton_elementary(const std::vector<GenPoly>& p, int n) {
  std::vector<GenPoly> c;
  c.push_back(GenPoly::constant(Rational(1)));  // c_0
  for (int k = 1; k <= n; ++k) {
    GenPoly acc;
    for (int i = 1; i <= k; ++i) {
      GenPoly t = c[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i - 1)];
      acc += (i % 2 == 1) ? t : -t;
    }
    c.push_back(acc * Rational(1, k));
  }
  c.erase(c.begin());
  return c;
}

class ChReducer {
 public:
  ChReducer(const InvariantRing& inv, ExpressionTable& table) : inv_(inv), table_(table) {}

  const InvariantRing& invariants() const { return inv_; }
  ExpressionTable& table() { return table_; }

  void seed_table() {
    for (const auto& [v, idx] : inv_.single_trace_generators())
      if (!table_.contains(v)) table_.insert(v, GenPoly::variable(idx));
  }

  // Lookup first, then Cayley-Hamilton; throws on an unreachable necklace.
  GenPoly reduce(const Necklace& v) {
    const int n = inv_.n();
    if (v.empty()) return GenPoly::constant(Rational(n));
    if (v.degree() == 1) return GenPoly();  // traceless letters
    if (auto hit = table_.find(v)) return *hit;
    auto decomp = find_ch_decomposition(v, n);
    if (!decomp)
      throw std::runtime_error("unreachable necklace " + render(v) +
                               " (frontier not advanced far enough)");
    GenPoly out = ch_substitute_parts(decomp->u, decomp->tail);
    table_.insert(v, out);
    return out;
  }

  GenPoly reduce(const Word& w) { return reduce(Necklace(w)); }
  GenPoly reduce_str(const std::string& w) { return reduce(Necklace(parse_word(w))); }

  // Tr(u^n tail) via the characteristic polynomial of u.
  GenPoly ch_substitute(const Necklace& v) {
    auto decomp = find_ch_decomposition(v, inv_.n());
    if (!decomp) throw std::invalid_argument(render(v) + " is not CH_n");
    return ch_substitute_parts(decomp->u, decomp->tail);
  }

  // reduction along a caller-chosen decomposition (confluence checks)
  GenPoly ch_substitute_via(const Word& u, const Word& tail) {
    return ch_substitute_parts(u, tail);
  }

  // det(word) = det(A)^r det(B)^s via Newton on the single letters
  GenPoly det_word(Bidegree b) {
    GenPoly out = GenPoly::constant(Rational(1));
    GenPoly ea = det_letter('A');
    GenPoly eb = det_letter('B');
    for (int i = 0; i < b.r; ++i) out = out * ea;
    for (int i = 0; i < b.s; ++i) out = out * eb;
    return out;
  }

  // power sums p_1..p_m of a word treated as a single matrix
  std::vector<GenPoly> power_sums(const Word& u, int m) {
    std::vector<GenPoly> p;
    std::string rep;
    for (int k = 1; k <= m; ++k) {
      rep += u.letters;
      p.push_back(reduce(Necklace(Word(rep))));
    }
    return p;
  }

  // expand = multilinear expansion of Tr([A,B]^m); reduce = CH on C = [A,B]
  NecklaceSum commutator_power_expand(int m) {
    NecklaceSum out;
    for (const auto& [c, w] : commutator_words(m)) out.add(Necklace(Word(w)), c);
    return out;
  }

  GenPoly commutator_power_reduce(int m) {
    const int n = inv_.n();
    std::vector<GenPoly> p = commutator_power_sums();
    if (m <= n) return p[static_cast<std::size_t>(m - 1)];
    std::vector<GenPoly> c = newton_elementary(p, n);
    for (int k = n + 1; k <= m; ++k) {
      GenPoly acc;
      for (int i = 1; i <= n; ++i) {
        GenPoly t = c[static_cast<std::size_t>(i - 1)] * p[static_cast<std::size_t>(k - i - 1)];
        acc += (i % 2 == 1) ? t : -t;
      }
      p.push_back(acc);
    }
    return p[static_cast<std::size_t>(m - 1)];
  }

  // p_k([A,B]) for k = 1..n, expressed in the generators
  std::vector<GenPoly> commutator_power_sums() {
    const int n = inv_.n();
    std::vector<GenPoly> p;
    p.push_back(GenPoly());  // Tr C = 0
    if (n == 4) {
      p.push_back(GenPoly::variable(12) * Rational(2));  // 2 a15
      p.push_back(GenPoly::variable(18) * Rational(3));  // 3 a21
      p.push_back(GenPoly::variable(24) * Rational(2));  // 2 a27
    } else if (n == 3) {
      p.push_back(GenPoly::variable(7) * Rational(2));  // 2 g10
      p.push_back(GenPoly::variable(8) * Rational(3));  // 3 g11
    } else {
      GenPoly t = reduce_str("ABAB") - reduce_str("AABB");
      p.push_back(t * Rational(2));  // Tr C^2 for n = 2
    }
    return p;
  }

 private:
  GenPoly det_letter(char l) {
    const int n = inv_.n();
    std::vector<GenPoly> p;
    for (int k = 1; k <= n; ++k) p.push_back(reduce(Necklace(Word(std::string(k, l)))));
    return newton_elementary(p, n).back();
  }

  GenPoly ch_substitute_parts(const Word& u, const Word& tail) {
    const int n = inv_.n();
    if (tail.empty()) return pure_power_trace(u);
    std::vector<GenPoly> p = power_sums(u, n - 1);
    p.push_back(pure_power_trace(u));  // p_n via the determinant route
    std::vector<GenPoly> c = newton_elementary(p, n);
    GenPoly acc;
    for (int i = 1; i <= n; ++i) {
      std::string w;
      for (int k = 0; k < n - i; ++k) w += u.letters;
      w += tail.letters;
      GenPoly t = c[static_cast<std::size_t>(i - 1)] * reduce(Necklace(Word(w)));
      acc += (i % 2 == 1) ? t : -t;
    }
    return acc;
  }

  // Tr(u^n): Newton rearranged for p_n with c_n supplied by det multiplicativity,
  // which keeps the recursion degree-lowering (p_n appears inside c_n otherwise).
  GenPoly pure_power_trace(const Word& u) {
    const int n = inv_.n();
    Necklace full{Word([&] {
      std::string w;
      for (int k = 0; k < n; ++k) w += u.letters;
      return w;
    }())};
    if (auto hit = table_.find(full)) return *hit;
    std::vector<GenPoly> p = power_sums(u, n - 1);
    std::vector<GenPoly> c{GenPoly::constant(Rational(1))};
    for (int k = 1; k < n; ++k) {
      GenPoly acc;
      for (int i = 1; i <= k; ++i) {
        GenPoly t = c[static_cast<std::size_t>(k - i)] * p[static_cast<std::size_t>(i - 1)];
        acc += (i % 2 == 1) ? t : -t;
      }
      c.push_back(acc * Rational(1, k));
    }
    GenPoly acc;
    for (int i = 1; i < n; ++i) {
      GenPoly t = c[static_cast<std::size_t>(i)] * p[static_cast<std::size_t>(n - i - 1)];
      acc += (i % 2 == 1) ? t : -t;
    }
    GenPoly dn = det_word(u.bidegree()) * Rational(n);
    acc += (n % 2 == 1) ? dn : -dn;
    return acc;
  }

  const InvariantRing& inv_;
  ExpressionTable& table_;
};

}  // namespace matinv
