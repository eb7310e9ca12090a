#pragma once

#include <map>
#include <sstream>
#include <vector>

#include "necklace.hpp"
#include "rational.hpp"

namespace matinv {

// Finite formal rational combination of necklaces (an element of the necklace
// space N). Zero coefficients are never stored.
class NecklaceSum {
 public:
  using Map = std::map<Necklace, Rational, DegLexLess>;

  NecklaceSum() = default;

  void add(const Necklace& v, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(v, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  NecklaceSum& operator+=(const NecklaceSum& o) {
    for (const auto& [v, c] : o.terms_) add(v, c);
    return *this;
  }
  NecklaceSum operator+(const NecklaceSum& o) const {
    NecklaceSum r = *this;
    r += o;
    return r;
  }
  NecklaceSum operator*(const Rational& c) const {
    NecklaceSum r;
    if (c == 0) return r;
    for (const auto& [v, x] : terms_) r.terms_.emplace(v, x * c);
    return r;
  }
  NecklaceSum operator-() const { return *this * Rational(-1); }
  NecklaceSum operator-(const NecklaceSum& o) const { return *this + o * Rational(-1); }

  bool is_zero() const { return terms_.empty(); }
  const Map& terms() const { return terms_; }
  friend bool operator==(const NecklaceSum&, const NecklaceSum&) = default;

 private:
  Map terms_;
};

enum class Interpretation { Generic, Traceless };

// Monomial in trace variables: a multiset of necklaces plus exponents of the
// adjoined central scalars a1 = Tr X, a2 = Tr Y (used by the traceless side of
// the generic<->traceless conversions). Factors kept sorted ascending deg-lex.
struct TraceMonomial {
  std::vector<Necklace> factors;
  int a1_exp = 0;
  int a2_exp = 0;

  bool is_constant() const { return factors.empty() && a1_exp == 0 && a2_exp == 0; }
  int degree() const {
    int d = a1_exp + a2_exp;
    for (const auto& v : factors) d += v.degree();
    return d;
  }
  Bidegree bidegree() const {
    Bidegree b{a1_exp, a2_exp};
    for (const auto& v : factors) b = b + v.bidegree();
    return b;
  }
  void push_factor(const Necklace& v) {
    auto it = std::upper_bound(factors.begin(), factors.end(), v, DegLexLess{});
    factors.insert(it, v);
  }
  friend bool operator==(const TraceMonomial&, const TraceMonomial&) = default;
};

struct TraceMonomialLess {
  bool operator()(const TraceMonomial& a, const TraceMonomial& b) const {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    if (a.factors.size() != b.factors.size()) return a.factors.size() < b.factors.size();
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
      auto c = compare_deglex(a.factors[i], b.factors[i]);
      if (c != 0) return c < 0;
    }
    if (a.a1_exp != b.a1_exp) return a.a1_exp < b.a1_exp;
    return a.a2_exp < b.a2_exp;
  }
};

// Commutative polynomial whose variables are traces of necklaces, with the
// matrix size n carried as a session parameter. The traceless interpretation
// applies Tr A = Tr B = 0 eagerly and never stores length-1 trace variables;
// the empty necklace is replaced by the scalar n in both interpretations.
class TracePolynomial {
 public:
  using Map = std::map<TraceMonomial, Rational, TraceMonomialLess>;

  TracePolynomial() = default;
  TracePolynomial(Interpretation interp, int n) : interp_(interp), n_(n) {}

  static TracePolynomial constant(Interpretation interp, int n, const Rational& c) {
    TracePolynomial p(interp, n);
    p.add(TraceMonomial{}, c);
    return p;
  }
  static TracePolynomial trace(Interpretation interp, int n, const Necklace& v) {
    TracePolynomial p(interp, n);
    TraceMonomial m;
    Rational c(1);
    if (v.empty()) {
      c = n;
    } else if (interp == Interpretation::Traceless && v.degree() == 1) {
      return p;  // Tr A = Tr B = 0
    } else {
      m.push_factor(v);
    }
    p.add(m, c);
    return p;
  }
  static TracePolynomial from_necklace_sum(Interpretation interp, int n, const NecklaceSum& s) {
    TracePolynomial p(interp, n);
    for (const auto& [v, c] : s.terms()) p += trace(interp, n, v) * c;
    return p;
  }

  Interpretation interpretation() const { return interp_; }
  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
  }
  Rational constant_value() const {
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
  }
  const Map& terms() const { return terms_; }

  void add(const TraceMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  TracePolynomial& operator+=(const TracePolynomial& o) {
    check_compatible(o);
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  TracePolynomial operator+(const TracePolynomial& o) const {
    TracePolynomial r = *this;
    r += o;
    return r;
  }
  TracePolynomial operator*(const Rational& c) const {
    TracePolynomial r(interp_, n_);
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
  }
  TracePolynomial operator-(const TracePolynomial& o) const { return *this + o * Rational(-1); }
  TracePolynomial operator-() const { return *this * Rational(-1); }
  TracePolynomial operator*(const TracePolynomial& o) const {
    check_compatible(o);
    TracePolynomial r(interp_, n_);
    for (const auto& [m1, c1] : terms_) {
      for (const auto& [m2, c2] : o.terms_) {
        TraceMonomial m = m1;
        for (const auto& v : m2.factors) m.push_factor(v);
        m.a1_exp += m2.a1_exp;
        m.a2_exp += m2.a2_exp;
        r.add(m, c1 * c2);
      }
    }
    return r;
  }

  friend bool operator==(const TracePolynomial& a, const TracePolynomial& b) {
    return a.terms_ == b.terms_;
  }

 private:
  void check_compatible(const TracePolynomial& o) const {
    if (!terms_.empty() && !o.terms_.empty() && (interp_ != o.interp_ || n_ != o.n_))
      throw std::invalid_argument("mismatched interpretation or n");
  }

  Interpretation interp_ = Interpretation::Traceless;
  int n_ = 0;
  Map terms_;
};

// Rendering: terms descending, "T(A^3B^2)" for trace variables; constants plain.
inline std::string render(const TracePolynomial& p) {
  if (p.is_zero()) return "0";
  LetterMode mode =
      p.interpretation() == Interpretation::Generic ? LetterMode::Generic : LetterMode::Traceless;
  std::ostringstream os;
  bool first = true;
  const auto& terms = p.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string body;
    for (int k = 0; k < m.a1_exp; ++k) body += (body.empty() ? "" : "*") + std::string("a1");
    for (int k = 0; k < m.a2_exp; ++k) body += (body.empty() ? "" : "*") + std::string("a2");
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
      if (!body.empty()) body += "*";
      body += "T(" + render(m.factors[i], mode) + ")";
    }
    if (body.empty()) {
      os << to_string(a);
    } else if (a == 1) {
      os << body;
    } else {
      os << to_string(a) << "*" << body;
    }
  }
  return os.str();
}

}  // namespace matinv
