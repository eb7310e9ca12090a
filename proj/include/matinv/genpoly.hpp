#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <vector>

#include "rational.hpp"
#include "word.hpp"

namespace matinv {

inline constexpr int kMaxGenerators = 30;

// Exponent vector over the (traceless) generator set of a fixed session ring.
// Stored with fixed capacity; entries beyond the ring's size stay zero.
struct GenMonomial {
  std::array<std::uint8_t, kMaxGenerators> exps{};

  static GenMonomial one() { return {}; }
  static GenMonomial var(int i, int e = 1) {
    GenMonomial m;
    m.exps[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(e);
    return m;
  }
  bool is_one() const {
    for (auto e : exps)
      if (e) return false;
    return true;
  }
  GenMonomial operator*(const GenMonomial& o) const {
    GenMonomial m;
    for (std::size_t i = 0; i < exps.size(); ++i)
      m.exps[i] = static_cast<std::uint8_t>(exps[i] + o.exps[i]);
    return m;
  }
  // storage order only; the active monomial order is applied at output time
  friend auto operator<=>(const GenMonomial&, const GenMonomial&) = default;
};

enum class OrderKind { GrevLex, PaperCustom };

// Static description of the generator ring for one matrix size.
struct GenRing {
  int n = 0;                             // matrix size
  int count = 0;                         // number of traceless generators
  std::vector<std::string> names;        // rendered variable names
  std::vector<Bidegree> bidegrees;       // per generator
  std::vector<int> swap_image;           // A<->B involution: index image
  std::vector<int> swap_sign;            // and sign
  std::vector<int> custom_order_rank;    // rank[i] = position of var i in the
                                         // paper-custom ascending variable order

  int degree(int i) const { return bidegrees[static_cast<std::size_t>(i)].total(); }

  int monomial_degree(const GenMonomial& m) const {
    int d = 0;
    for (int i = 0; i < count; ++i) d += m.exps[static_cast<std::size_t>(i)] * degree(i);
    return d;
  }
  Bidegree monomial_bidegree(const GenMonomial& m) const {
    Bidegree b;
    for (int i = 0; i < count; ++i) {
      int e = m.exps[static_cast<std::size_t>(i)];
      b.r += e * bidegrees[static_cast<std::size_t>(i)].r;
      b.s += e * bidegrees[static_cast<std::size_t>(i)].s;
    }
    return b;
  }

  // monomial compare under the requested order: weighted degree (grading by
  // the sum of lengths), ties by reverse lexicography over the variable order
  bool monomial_less(const GenMonomial& a, const GenMonomial& b, OrderKind kind) const {
    int da = monomial_degree(a), db = monomial_degree(b);
    if (da != db) return da < db;
    // scan variables from smallest upward; first difference decides, with the
    // *larger* exponent on the smaller variable meaning the *smaller* monomial
    if (kind == OrderKind::PaperCustom) {
      for (int rank = 0; rank < count; ++rank) {
        int i = custom_order_position(rank);
        int ea = a.exps[static_cast<std::size_t>(i)], eb = b.exps[static_cast<std::size_t>(i)];
        if (ea != eb) return ea > eb;
      }
    } else {
      for (int i = 0; i < count; ++i) {
        int ea = a.exps[static_cast<std::size_t>(i)], eb = b.exps[static_cast<std::size_t>(i)];
        if (ea != eb) return ea > eb;
      }
    }
    return false;
  }

  int custom_order_position(int rank) const {  // inverse of custom_order_rank
    if (position_cache_.empty()) {
      position_cache_.assign(static_cast<std::size_t>(count), 0);
      for (int i = 0; i < count; ++i)
        position_cache_[static_cast<std::size_t>(custom_order_rank[static_cast<std::size_t>(i)])] = i;
    }
    return position_cache_[static_cast<std::size_t>(rank)];
  }

 private:
  mutable std::vector<int> position_cache_;
};

// Bigraded polynomial on the abstract generators, exact rational coefficients.
class GenPoly {
 public:
  using Map = std::map<GenMonomial, Rational>;

  GenPoly() = default;
  static GenPoly constant(const Rational& c) {
    GenPoly p;
    p.add(GenMonomial::one(), c);
    return p;
  }
  static GenPoly variable(int i) {
    GenPoly p;
    p.add(GenMonomial::var(i), Rational(1));
    return p;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
  }
  Rational constant_value() const {
    auto it = terms_.find(GenMonomial::one());
    return it == terms_.end() ? Rational(0) : it->second;
  }
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  void add(const GenMonomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  GenPoly& operator+=(const GenPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, c);
    return *this;
  }
  GenPoly& operator-=(const GenPoly& o) {
    for (const auto& [m, c] : o.terms_) add(m, -c);
    return *this;
  }
  GenPoly operator+(const GenPoly& o) const {
    GenPoly r = *this;
    r += o;
    return r;
  }
  GenPoly operator-(const GenPoly& o) const {
    GenPoly r = *this;
    r -= o;
    return r;
  }
  GenPoly operator-() const { return *this * Rational(-1); }
  GenPoly operator*(const Rational& c) const {
    GenPoly r;
    if (c == 0) return r;
    for (const auto& [m, x] : terms_) r.terms_.emplace(m, x * c);
    return r;
  }
  GenPoly operator*(const GenPoly& o) const {
    GenPoly r;
    for (const auto& [m1, c1] : terms_)
      for (const auto& [m2, c2] : o.terms_) r.add(m1 * m2, c1 * c2);
    return r;
  }
  GenPoly shifted(const GenMonomial& m, const Rational& c) const {  // c * m * this
    GenPoly r;
    if (c == 0) return r;
    for (const auto& [m1, c1] : terms_) r.terms_.emplace(m1 * m, c1 * c);
    return r;
  }

  friend bool operator==(const GenPoly&, const GenPoly&) = default;

  bool is_bihomogeneous(const GenRing& ring, Bidegree* out = nullptr) const {
    bool first = true;
    Bidegree b;
    for (const auto& [m, c] : terms_) {
      Bidegree mb = ring.monomial_bidegree(m);
      if (first) {
        b = mb;
        first = false;
      } else if (!(mb == b)) {
        return false;
      }
    }
    if (out && !first) *out = b;
    return true;
  }

 private:
  Map terms_;
};

// Image under the A<->B involution; exact on generators (each maps to a signed
// generator), hence exact on any polynomial.
inline GenPoly swap_involution(const GenRing& ring, const GenPoly& p) {
  GenPoly out;
  for (const auto& [m, c] : p.terms()) {
    GenMonomial im;
    int sign = 1;
    for (int i = 0; i < ring.count; ++i) {
      int e = m.exps[static_cast<std::size_t>(i)];
      if (!e) continue;
      int j = ring.swap_image[static_cast<std::size_t>(i)];
      im.exps[static_cast<std::size_t>(j)] =
          static_cast<std::uint8_t>(im.exps[static_cast<std::size_t>(j)] + e);
      if (ring.swap_sign[static_cast<std::size_t>(i)] < 0 && (e & 1)) sign = -sign;
    }
    out.add(im, sign > 0 ? c : -c);
  }
  return out;
}

// Canonical form: denominators cleared, integer-primitive, leading coefficient
// positive under the paper-custom order. Returns the scaled polynomial.
inline GenPoly canonical_form(const GenRing& ring, const GenPoly& p) {
  if (p.is_zero()) return p;
  Integer lcm_den(1), gcd_num(0);
  for (const auto& [m, c] : p.terms()) {
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), denominator(c).get_mpz_t());
  }
  for (const auto& [m, c] : p.terms()) {
    Integer scaled = numerator(c) * (lcm_den / denominator(c));
    mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), scaled.get_mpz_t());
  }
  Rational scale(lcm_den, gcd_num);
  scale.canonicalize();
  GenPoly out = p * scale;
  // sign: leading (largest) monomial under paper-custom gets a positive coefficient
  const GenMonomial* lead = nullptr;
  for (const auto& [m, c] : out.terms()) {
    if (!lead || ring.monomial_less(*lead, m, OrderKind::PaperCustom)) lead = &m;
  }
  if (lead && out.terms().at(*lead) < 0) out = out * Rational(-1);
  return out;
}

// ---- text form: terms like "1/12*a5*a6 + 1/2*a4*a7 - 1/2*a16", variables in
// ascending index inside a monomial, terms descending in the given order ----

inline std::string render(const GenRing& ring, const GenPoly& p,
                          OrderKind kind = OrderKind::PaperCustom) {
  if (p.is_zero()) return "0";
  std::vector<const GenPoly::Map::value_type*> terms;
  terms.reserve(p.size());
  for (const auto& t : p.terms()) terms.push_back(&t);
  std::sort(terms.begin(), terms.end(), [&](auto* a, auto* b) {
    return ring.monomial_less(b->first, a->first, kind);
  });
  std::ostringstream os;
  bool first = true;
  for (auto* t : terms) {
    const auto& [m, c] = *t;
    Rational a = c < 0 ? Rational(-c) : c;
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    std::string body;
    for (int i = 0; i < ring.count; ++i) {
      int e = m.exps[static_cast<std::size_t>(i)];
      if (!e) continue;
      if (!body.empty()) body += "*";
      body += ring.names[static_cast<std::size_t>(i)];
      if (e > 1) body += "^" + std::to_string(e);
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

inline GenPoly parse_genpoly(const GenRing& ring, const std::string& text) {
  GenPoly out;
  std::string s = text;
  // normalize: strip spaces, keep sign structure
  std::string compact;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) compact += c;
  if (compact.empty() || compact == "0") return out;
  std::size_t i = 0;
  while (i < compact.size()) {
    int sign = 1;
    if (compact[i] == '+') {
      ++i;
    } else if (compact[i] == '-') {
      sign = -1;
      ++i;
    }
    std::size_t j = i;
    while (j < compact.size() && compact[j] != '+' && compact[j] != '-') ++j;
    std::string term = compact.substr(i, j - i);
    i = j;
    // split on '*'
    Rational coef(1);
    GenMonomial m;
    std::size_t pos = 0;
    bool coef_seen = false;
    while (pos < term.size()) {
      std::size_t star = term.find('*', pos);
      std::string tok = term.substr(pos, star == std::string::npos ? std::string::npos : star - pos);
      pos = star == std::string::npos ? term.size() : star + 1;
      if (tok.empty()) throw std::invalid_argument("empty token in polynomial: " + text);
      if (std::isdigit(static_cast<unsigned char>(tok[0]))) {
        if (coef_seen) throw std::invalid_argument("two coefficients in term: " + term);
        coef = rational_from_string(tok);
        coef_seen = true;
        continue;
      }
      std::size_t caret = tok.find('^');
      std::string name = caret == std::string::npos ? tok : tok.substr(0, caret);
      int e = 1;
      if (caret != std::string::npos) e = std::stoi(tok.substr(caret + 1));
      auto it = std::find(ring.names.begin(), ring.names.end(), name);
      if (it == ring.names.end()) throw std::invalid_argument("unknown variable " + name);
      auto idx = static_cast<std::size_t>(it - ring.names.begin());
      m.exps[idx] = static_cast<std::uint8_t>(m.exps[idx] + e);
    }
    out.add(m, sign > 0 ? coef : -coef);
  }
  return out;
}

}  // namespace matinv
