#pragma once

#include <sstream>
#include <vector>

#include "rational.hpp"

namespace matinv {

// dense integer-coefficient polynomial in one variable t
struct IntPoly {
  std::vector<Integer> c;  // c[k] = coefficient of t^k

  static IntPoly from(std::initializer_list<std::pair<int, long>> terms) {
    IntPoly p;
    for (auto [k, v] : terms) {
      if (static_cast<std::size_t>(k) >= p.c.size()) p.c.resize(static_cast<std::size_t>(k) + 1);
      p.c[static_cast<std::size_t>(k)] = v;
    }
    return p;
  }
  static IntPoly one_minus_tk(int k) { return from({{0, 1}, {k, -1}}); }

  Integer coeff(int k) const {
    return static_cast<std::size_t>(k) < c.size() ? c[static_cast<std::size_t>(k)] : Integer(0);
  }
  int degree() const {
    for (std::size_t i = c.size(); i-- > 0;)
      if (c[i] != 0) return static_cast<int>(i);
    return -1;
  }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  IntPoly operator*(const IntPoly& o) const {
    IntPoly r;
    if (c.empty() || o.c.empty()) return r;
    r.c.assign(c.size() + o.c.size() - 1, Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    }
    return r;
  }
  IntPoly operator-(const IntPoly& o) const {
    IntPoly r = *this;
    if (o.c.size() > r.c.size()) r.c.resize(o.c.size());
    for (std::size_t j = 0; j < o.c.size(); ++j) r.c[j] -= o.c[j];
    r.trim();
    return r;
  }
  friend bool operator==(const IntPoly& a, const IntPoly& b) {
    IntPoly x = a, y = b;
    x.trim();
    y.trim();
    return x.c == y.c;
  }
};

// numerator/denominator with den(0) != 0; exact Taylor coefficients
struct RationalSeries {
  IntPoly num, den;

  std::vector<Rational> coefficients(int D) const {
    if (den.coeff(0) == 0) throw std::invalid_argument("denominator vanishes at 0");
    std::vector<Rational> out(static_cast<std::size_t>(D) + 1);
    Rational d0{den.coeff(0)};
    for (int k = 0; k <= D; ++k) {
      Rational acc{num.coeff(k)};
      for (int j = 1; j <= k; ++j) acc -= Rational(den.coeff(j)) * out[static_cast<std::size_t>(k - j)];
      out[static_cast<std::size_t>(k)] = acc / d0;
    }
    return out;
  }
  std::vector<Integer> integer_coefficients(int D) const {
    auto qs = coefficients(D);
    std::vector<Integer> out;
    out.reserve(qs.size());
    for (const auto& q : qs) {
      if (denominator(q) != 1) throw std::logic_error("series coefficient not an integer");
      out.push_back(numerator(q));
    }
    return out;
  }
};

inline IntPoly product_one_minus_t(const std::vector<int>& degrees) {
  IntPoly p = IntPoly::from({{0, 1}});
  for (int d : degrees) p = p * IntPoly::one_minus_tk(d);
  return p;
}

// the simply graded Hilbert series of C_42, displayed form
inline RationalSeries c42_series() {
  IntPoly n1 = IntPoly::from({{0, 1}, {2, -1}, {4, 1}});
  IntPoly n2 = IntPoly::from(
      {{0, 1}, {1, -1}, {3, -1}, {4, 1}, {5, 2}, {6, 1}, {7, -1}, {9, -1}, {10, 1}});
  RationalSeries s;
  s.num = n1 * n2;
  s.den = product_one_minus_t({1, 1, 1, 2, 2, 2, 2, 3, 3, 3, 3, 3, 4, 4, 4, 4, 4});
  return s;
}

// Hironaka-form series for C_32 (Teranishi's decomposition) and the free C_22
inline RationalSeries c32_series() {
  RationalSeries s;
  s.num = IntPoly::from({{0, 1}, {6, 1}});
  s.den = product_one_minus_t({1, 1, 2, 2, 2, 3, 3, 3, 3, 4});
  return s;
}
inline RationalSeries c22_series() {
  RationalSeries s;
  s.num = IntPoly::from({{0, 1}});
  s.den = product_one_minus_t({1, 1, 2, 2, 2});
  return s;
}

inline RationalSeries cn2_series(int n) {
  if (n == 4) return c42_series();
  if (n == 3) return c32_series();
  if (n == 2) return c22_series();
  throw std::invalid_argument("supported n: 2, 3, 4");
}

// series of the traceless part: multiply by (1-t)^2 to strip a1, a2
inline RationalSeries traceless_series(int n) {
  RationalSeries s = cn2_series(n);
  s.num = s.num * IntPoly::one_minus_tk(1) * IntPoly::one_minus_tk(1);
  return s;
}

inline RationalSeries free_ring_series(const std::vector<int>& degrees) {
  RationalSeries s;
  s.num = IntPoly::from({{0, 1}});
  s.den = product_one_minus_t(degrees);
  return s;
}

// the rescaling factor of Eq-(6): (1+t^2)(1+t+t^2)(1+t^3)^2
inline IntPoly rescale_factor() {
  return IntPoly::from({{0, 1}, {2, 1}}) * IntPoly::from({{0, 1}, {1, 1}, {2, 1}}) *
         IntPoly::from({{0, 1}, {3, 1}}) * IntPoly::from({{0, 1}, {3, 1}});
}

inline IntPoly expected_rescaled_numerator() {
  return IntPoly::from({{0, 1},  {5, 2},  {6, 2},  {7, 2},  {8, 4},  {9, 4},
                        {10, 4}, {11, 4}, {12, 2}, {13, 4}, {14, 4}, {15, 4},
                        {16, 4}, {17, 2}, {18, 2}, {19, 2}, {24, 1}});
}

inline std::vector<int> c42_primary_degrees() {
  return {1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 6, 6};
}
inline std::vector<int> c42_secondary_degrees() {
  std::vector<int> out{0};
  auto rep = [&](int d, int k) {
    for (int i = 0; i < k; ++i) out.push_back(d);
  };
  rep(5, 2); rep(6, 2); rep(7, 2); rep(8, 4); rep(9, 4); rep(10, 4); rep(11, 4);
  rep(12, 2); rep(13, 4); rep(14, 4); rep(15, 4); rep(16, 4); rep(17, 2);
  rep(18, 2); rep(19, 2); rep(24, 1);
  return out;
}

// multiplies the displayed series by the rescale factor; hard failure on any
// mismatch with the published numerator/denominator
struct RescaledForm {
  IntPoly numerator;
  IntPoly denominator;
};
inline RescaledForm rescaled_numerator() {
  RationalSeries h = c42_series();
  RescaledForm out;
  out.numerator = h.num * rescale_factor();
  out.denominator = h.den * rescale_factor();
  IntPoly expected_den = product_one_minus_t({1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 6, 6});
  if (!(out.denominator == expected_den))
    throw std::logic_error("rescaled denominator does not match (1-t)^2(1-t^2)^3(1-t^3)^4(1-t^4)^6(1-t^6)^2");
  if (!(out.numerator == expected_rescaled_numerator()))
    throw std::logic_error("rescaled numerator does not match the published coefficients");
  return out;
}

struct AccountingReport {
  bool match = true;
  int first_difference = -1;
  Integer lhs_coeff, rhs_coeff;
};

// sum_i t^(deg q_i) / prod_j (1 - t^(deg p_j)) == target, checked as an exact
// cross-multiplied polynomial identity; on mismatch reports the first
// coefficient where the series differ.
inline AccountingReport hironaka_accounting(const std::vector<int>& primary_degrees,
                                            const std::vector<int>& secondary_degrees,
                                            const RationalSeries& target, int report_depth = 64) {
  IntPoly sec;
  for (int d : secondary_degrees) {
    if (static_cast<std::size_t>(d) >= sec.c.size()) sec.c.resize(static_cast<std::size_t>(d) + 1);
    sec.c[static_cast<std::size_t>(d)] += 1;
  }
  IntPoly prim = product_one_minus_t(primary_degrees);
  AccountingReport rep;
  if (sec * target.den == target.num * prim) return rep;
  rep.match = false;
  RationalSeries lhs{sec, prim};
  auto l = lhs.coefficients(report_depth);
  auto r = target.coefficients(report_depth);
  for (int k = 0; k <= report_depth; ++k) {
    if (l[static_cast<std::size_t>(k)] != r[static_cast<std::size_t>(k)]) {
      rep.first_difference = k;
      rep.lhs_coeff = numerator(l[static_cast<std::size_t>(k)]);
      rep.rhs_coeff = numerator(r[static_cast<std::size_t>(k)]);
      break;
    }
  }
  return rep;
}

}  // namespace matinv
