#pragma once

#include <atomic>
#include <mutex>
#include <unordered_map>

#include "necklace.hpp"
#include "trace_poly.hpp"

namespace matinv {

// Kontsevich bracket of two plain words (generic letters), Eq-(4) shape:
// sum over position pairs of omega(u_i, v_j) times the glued cyclic remainders.
// omega(L1, L2) = +1.
inline NecklaceSum kontsevich_bracket(const Word& w1, const Word& w2) {
  NecklaceSum out;
  const std::string& a = w1.letters;
  const std::string& b = w2.letters;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i] == b[j]) continue;
      int sign = (a[i] == 'A') ? 1 : -1;
      std::string glue = a.substr(i + 1) + a.substr(0, i) + b.substr(j + 1) + b.substr(0, j);
      out.add(Necklace(Word(glue)), Rational(sign));
    }
  }
  return out;
}

// Corrected pairing on the traceless symplectic subspace: each position pair
// contributes omega * [Tr(glue) - (1/n) Tr(w1 minus letter i) Tr(w2 minus j)].
inline TracePolynomial traceless_bracket(const Word& w1, const Word& w2, int n) {
  TracePolynomial out(Interpretation::Traceless, n);
  const std::string& a = w1.letters;
  const std::string& b = w2.letters;
  const Rational corr(-1, n);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (a[i] == b[j]) continue;
      Rational sign((a[i] == 'A') ? 1 : -1);
      std::string glue = a.substr(i + 1) + a.substr(0, i) + b.substr(j + 1) + b.substr(0, j);
      out += TracePolynomial::trace(Interpretation::Traceless, n, Necklace(Word(glue))) * sign;
      TracePolynomial d1 = TracePolynomial::trace(Interpretation::Traceless, n,
                                                  Necklace(Word(a.substr(0, i) + a.substr(i + 1))));
      TracePolynomial d2 = TracePolynomial::trace(Interpretation::Traceless, n,
                                                  Necklace(Word(b.substr(0, j) + b.substr(j + 1))));
      out += d1 * d2 * (sign * corr);
    }
  }
  return out;
}

// Substitutes A = x - (1/n)Tr(x), B = y - (1/n)Tr(y) and expands multilinearly;
// output lives in the generic interpretation (length-1 traces are variables).
inline TracePolynomial expand_traceless(const Word& w, int n) {
  TracePolynomial out(Interpretation::Generic, n);
  const std::string& s = w.letters;
  const auto len = s.size();
  const Rational minus_inv_n(-1, n);
  for (std::uint64_t mask = 0; mask < (1ULL << len); ++mask) {
    std::string kept;
    TraceMonomial m;
    Rational c(1);
    for (std::size_t i = 0; i < len; ++i) {
      if (mask & (1ULL << i)) {
        c *= minus_inv_n;
        m.push_factor(Necklace(Word(std::string(1, s[i]))));
      } else {
        kept += s[i];
      }
    }
    Necklace v{Word(kept)};
    if (v.empty())
      c *= n;
    else
      m.push_factor(v);
    out.add(m, c);
  }
  return out;
}

// Inverse direction: x = A + (1/n)a1, y = B + (1/n)a2 with a1, a2 adjoined
// central scalars; Tr A = Tr B = 0 applied eagerly.
inline TracePolynomial contract_to_traceless(const TracePolynomial& f, int n) {
  TracePolynomial out(Interpretation::Traceless, n);
  const Rational inv_n(1, n);
  for (const auto& [mono, coef] : f.terms()) {
    // contract each factor, then multiply the factor polynomials
    TracePolynomial acc = TracePolynomial::constant(Interpretation::Traceless, n, coef);
    TraceMonomial scalars;
    scalars.a1_exp = mono.a1_exp;
    scalars.a2_exp = mono.a2_exp;
    acc = acc * [&] {
      TracePolynomial s(Interpretation::Traceless, n);
      s.add(scalars, Rational(1));
      return s;
    }();
    for (const auto& v : mono.factors) {
      const std::string& s = v.rep();
      TracePolynomial factor(Interpretation::Traceless, n);
      for (std::uint64_t mask = 0; mask < (1ULL << s.size()); ++mask) {
        std::string kept;
        TraceMonomial m;
        Rational c(1);
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (mask & (1ULL << i)) {
            c *= inv_n;
            (s[i] == 'A' ? m.a1_exp : m.a2_exp)++;
          } else {
            kept += s[i];
          }
        }
        Necklace kv{Word(kept)};
        if (kv.empty())
          c *= n;
        else if (kv.degree() == 1)
          continue;  // Tr A = Tr B = 0
        else
          m.push_factor(kv);
        factor.add(m, c);
      }
      acc = acc * factor;
    }
    out += acc;
  }
  return out;
}

// Memoizing engine for word-level brackets plus the Leibniz extension.
class BracketEngine {
 public:
  explicit BracketEngine(int n) : n_(n) {}

  int n() const { return n_; }

  // {Tr v1, Tr v2} as a TracePolynomial in the requested interpretation;
  // cached on the canonical ordered pair, antisymmetry handled by the cache.
  TracePolynomial bracket(const Necklace& v1, const Necklace& v2, Interpretation interp) {
    bool flip = compare_deglex(v2, v1) < 0;
    const Necklace& lo = flip ? v2 : v1;
    const Necklace& hi = flip ? v1 : v2;
    std::string key = lo.rep() + "|" + hi.rep() + (interp == Interpretation::Generic ? "|g" : "|t");
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = cache_.find(key);
      if (it != cache_.end()) {
        ++hits_;
        return flip ? -it->second : it->second;
      }
    }
    ++misses_;
    TracePolynomial val = interp == Interpretation::Generic
                              ? TracePolynomial::from_necklace_sum(interp, n_,
                                                                   kontsevich_bracket(lo.word(), hi.word()))
                              : traceless_bracket(lo.word(), hi.word(), n_);
    {
      std::lock_guard<std::mutex> lock(mu_);
      cache_.emplace(std::move(key), val);
    }
    return flip ? -val : val;
  }

  // Leibniz extension to products of trace variables. The a1/a2 scalars bracket
  // as {a1, a2} = n against each other and 0 against traceless traces.
  TracePolynomial poisson(const TracePolynomial& f, const TracePolynomial& g) {
    if (!f.is_zero() && !g.is_zero() &&
        (f.interpretation() != g.interpretation() || f.n() != g.n()))
      throw std::invalid_argument("poisson_bracket: mismatched interpretation or n");
    Interpretation interp = f.interpretation();
    TracePolynomial out(interp, n_);
    for (const auto& [mf, cf] : f.terms()) {
      for (const auto& [mg, cg] : g.terms()) {
        // trace x trace
        for (std::size_t i = 0; i < mf.factors.size(); ++i) {
          for (std::size_t j = 0; j < mg.factors.size(); ++j) {
            TracePolynomial b = bracket(mf.factors[i], mg.factors[j], interp);
            TraceMonomial rest;
            rest.a1_exp = mf.a1_exp + mg.a1_exp;
            rest.a2_exp = mf.a2_exp + mg.a2_exp;
            for (std::size_t k = 0; k < mf.factors.size(); ++k)
              if (k != i) rest.push_factor(mf.factors[k]);
            for (std::size_t k = 0; k < mg.factors.size(); ++k)
              if (k != j) rest.push_factor(mg.factors[k]);
            TracePolynomial restp(interp, n_);
            restp.add(rest, cf * cg);
            out += b * restp;
          }
        }
        // scalar x scalar: {a1, a2} = n (traceless side only; generic carries
        // the length-1 necklaces instead and is covered by the trace case)
        auto scalar_pair = [&](int e1, int e2, int sign) {
          if (!e1 || !e2) return;
          TraceMonomial rest;
          rest.a1_exp = mf.a1_exp + mg.a1_exp - 1;
          rest.a2_exp = mf.a2_exp + mg.a2_exp - 1;
          for (const auto& v : mf.factors) rest.push_factor(v);
          for (const auto& v : mg.factors) rest.push_factor(v);
          TracePolynomial restp(interp, n_);
          restp.add(rest, cf * cg * Rational(e1) * Rational(e2) * Rational(n_) * sign);
          out += restp;
        };
        scalar_pair(mf.a1_exp, mg.a2_exp, +1);
        scalar_pair(mf.a2_exp, mg.a1_exp, -1);
      }
    }
    return out;
  }

  std::uint64_t cache_hits() const { return hits_; }
  std::uint64_t cache_misses() const { return misses_; }
  std::size_t cache_size() const { return cache_.size(); }
  void clear_cache() {
    std::lock_guard<std::mutex> lock(mu_);
    cache_.clear();
    hits_ = misses_ = 0;
  }

 private:
  int n_;
  std::mutex mu_;
  std::unordered_map<std::string, TracePolynomial> cache_;
  std::atomic<std::uint64_t> hits_{0}, misses_{0};
};

}  // namespace matinv
