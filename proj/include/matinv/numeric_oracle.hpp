#pragma once

#include <map>
#include <sstream>
#include <string>

#include "generators.hpp"
#include "matrixq.hpp"
#include "trace_poly.hpp"

namespace matinv {

struct SamplerConfig {
  std::uint64_t seed = 0;
  long bound = 10;
};

struct RationalMatrixPair {
  RationalMatrix X, Y;
  std::string provenance;
};

inline RationalMatrixPair sample_generic(int n, const SamplerConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  RationalMatrixPair p{RationalMatrix(n), RationalMatrix(n), ""};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.X(i, j) = rng.uniform(-cfg.bound, cfg.bound);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.Y(i, j) = rng.uniform(-cfg.bound, cfg.bound);
  p.provenance = "generic seed=" + std::to_string(cfg.seed);
  return p;
}

// X generic, Y a random integer polynomial of degree < n in X, so [X,Y] = 0
inline RationalMatrixPair sample_commuting(int n, const SamplerConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  RationalMatrixPair p{RationalMatrix(n), RationalMatrix(n), ""};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) p.X(i, j) = rng.uniform(-cfg.bound, cfg.bound);
  RationalMatrix pow = RationalMatrix::identity(n);
  RationalMatrix acc(n);
  for (int k = 0; k < n; ++k) {
    acc = acc + pow * Rational(rng.uniform(-cfg.bound, cfg.bound));
    pow = pow * p.X;
  }
  p.Y = acc;
  p.provenance = "commuting seed=" + std::to_string(cfg.seed);
  return p;
}

// X = diag(x_i) pairwise distinct, Y_ij = p_i on the diagonal and 1/(x_i - x_j)
// off it; then [X,Y] + I is the all-ones matrix, rank one.
inline RationalMatrixPair sample_cm(int n, const SamplerConfig& cfg) {
  SplitMix64 rng(cfg.seed);
  RationalMatrixPair p{RationalMatrix(n), RationalMatrix(n), ""};
  std::vector<long> xs;
  int attempts = 0;
  while (static_cast<int>(xs.size()) < n) {
    if (++attempts > 1000) throw std::runtime_error("cm sampler: exhausted resampling attempts");
    long v = rng.uniform(-cfg.bound, cfg.bound);
    if (std::find(xs.begin(), xs.end(), v) == xs.end()) xs.push_back(v);
  }
  for (int i = 0; i < n; ++i) p.X(i, i) = xs[static_cast<std::size_t>(i)];
  for (int i = 0; i < n; ++i) {
    p.Y(i, i) = rng.uniform(-cfg.bound, cfg.bound);
    for (int j = 0; j < n; ++j)
      if (i != j)
        p.Y(i, j) = make_rational(Integer(1), Integer(xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)]));
  }
  p.provenance = "cm seed=" + std::to_string(cfg.seed);
  return p;
}

// Per-pair evaluation context with memoized word traces and generator values.
class Evaluator {
 public:
  Evaluator(const InvariantRing& inv, const RationalMatrixPair& pair)
      : inv_(inv), n_(inv.n()), pair_(pair) {
    A_ = pair.X.traceless_part();
    B_ = pair.Y.traceless_part();
    C_ = A_ * B_ - B_ * A_;
    gen_values_.resize(static_cast<std::size_t>(inv.count()));
    have_gen_.assign(static_cast<std::size_t>(inv.count()), false);
  }

  int n() const { return n_; }
  const RationalMatrixPair& pair() const { return pair_; }

  // product of the word's letters; generic letters are X/Y, traceless A/B
  RationalMatrix word_matrix(const std::string& w, Interpretation interp) const {
    RationalMatrix m = RationalMatrix::identity(n_);
    for (char c : w) {
      const RationalMatrix& l = (interp == Interpretation::Generic)
                                    ? (c == 'A' ? pair_.X : pair_.Y)
                                    : (c == 'A' ? A_ : B_);
      m = m * l;
    }
    return m;
  }

  Rational eval_word(const std::string& w, Interpretation interp) {
    if (w.empty()) return Rational(n_);
    auto& cache = (interp == Interpretation::Generic) ? generic_cache_ : traceless_cache_;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    Rational v = word_matrix(w, interp).trace();
    cache.emplace(w, v);
    return v;
  }
  Rational eval_necklace(const Necklace& v, Interpretation interp) {
    return eval_word(v.rep(), interp);
  }

  Rational eval(const TracePolynomial& p) {
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
      Rational t = c;
      for (int k = 0; k < m.a1_exp; ++k) t *= pair_.X.trace();
      for (int k = 0; k < m.a2_exp; ++k) t *= pair_.Y.trace();
      for (const auto& v : m.factors) t *= eval_necklace(v, p.interpretation());
      acc += t;
    }
    return acc;
  }

  // generator value straight from its defining matrix expression
  Rational generator_value(int idx) {
    if (have_gen_[static_cast<std::size_t>(idx)]) return gen_values_[static_cast<std::size_t>(idx)];
    const Generator& g = inv_.generator(idx);
    Rational acc(0);
    for (const auto& part : g.parts) {
      RationalMatrix m = comm_power_matrix(part.comm_power);
      for (char c : part.suffix) m = m * (c == 'A' ? A_ : B_);
      acc += part.coef * m.trace();
    }
    have_gen_[static_cast<std::size_t>(idx)] = true;
    gen_values_[static_cast<std::size_t>(idx)] = acc;
    return acc;
  }

  Rational eval(const GenPoly& p) {
    Rational acc(0);
    for (const auto& [m, c] : p.terms()) {
      Rational t = c;
      for (int i = 0; i < inv_.count(); ++i) {
        int e = m.exps[static_cast<std::size_t>(i)];
        for (int k = 0; k < e; ++k) t *= generator_value(i);
      }
      acc += t;
    }
    return acc;
  }

  // ---- matrix-calculus Poisson bracket ----
  // The symplectic pairing is Tr(X1 Y2 - X2 Y1), so {X_ij, Y_kl} = d_il d_jk
  // and the bracket of two trace functions contracts trace-style:
  //   {f, g} = Tr(Rf_X Rg_Y) - Tr(Rf_Y Rg_X),
  // where R_X is the sum over occurrences of the letter of the cyclic
  // remainder read after the occurrence (d Tr(W)/dX is its transpose).
  // Traceless letters project the remainder sums onto trace zero.
  struct Gradients {
    RationalMatrix gx, gy;
    bool zero = false;
  };

  Gradients word_gradients(const std::string& w, Interpretation interp) {
    Gradients g{RationalMatrix(n_), RationalMatrix(n_), w.empty()};
    if (w.empty()) return g;
    // prefix[i] = product of letters [0, i); suffix[i] = product of [i+1, end)
    std::vector<RationalMatrix> prefix(w.size() + 1, RationalMatrix::identity(n_));
    for (std::size_t i = 0; i < w.size(); ++i)
      prefix[i + 1] = prefix[i] * letter_matrix(w[i], interp);
    std::vector<RationalMatrix> suffix(w.size() + 1, RationalMatrix::identity(n_));
    for (std::size_t i = w.size(); i-- > 0;)
      suffix[i] = letter_matrix(w[i], interp) * suffix[i + 1];
    RationalMatrix rx(n_), ry(n_);
    for (std::size_t i = 0; i < w.size(); ++i) {
      RationalMatrix rem = suffix[i + 1] * prefix[i];  // cyclic remainder after position i
      if (w[i] == 'A')
        rx = rx + rem;
      else
        ry = ry + rem;
    }
    g.gx = rx;
    g.gy = ry;
    if (interp == Interpretation::Traceless) {
      g.gx = project_traceless(g.gx);
      g.gy = project_traceless(g.gy);
    }
    return g;
  }

  static Rational trace_product(const RationalMatrix& a, const RationalMatrix& b) {
    Rational acc(0);
    for (int i = 0; i < a.n(); ++i)
      for (int j = 0; j < a.n(); ++j) acc += a(i, j) * b(j, i);
    return acc;
  }

  // {f, g} via the remainder-sum contraction above
  Rational numeric_poisson(const TracePolynomial& f, const TracePolynomial& g) {
    Rational acc(0);
    for (const auto& [mf, cf] : f.terms()) {
      auto ffac = monomial_factors(mf, f.interpretation());
      for (const auto& [mg, cg] : g.terms()) {
        auto gfac = monomial_factors(mg, g.interpretation());
        for (std::size_t i = 0; i < ffac.size(); ++i) {
          for (std::size_t j = 0; j < gfac.size(); ++j) {
            Rational rest = cf * cg;
            for (std::size_t k = 0; k < ffac.size(); ++k)
              if (k != i) rest *= ffac[k].value;
            for (std::size_t k = 0; k < gfac.size(); ++k)
              if (k != j) rest *= gfac[k].value;
            if (rest == 0) continue;
            acc += rest * factor_bracket(ffac[i], gfac[j]);
          }
        }
      }
    }
    return acc;
  }

  bool verify_zero(const GenPoly& p) { return eval(p) == 0; }

 private:
  struct Factor {
    std::string word;  // empty + kind for the a1/a2 scalars
    int kind = 0;      // 0 = trace of word, 1 = a1, 2 = a2
    Interpretation interp = Interpretation::Traceless;
    Rational value;
  };

  std::vector<Factor> monomial_factors(const TraceMonomial& m, Interpretation interp) {
    std::vector<Factor> out;
    for (int k = 0; k < m.a1_exp; ++k)
      out.push_back(Factor{"", 1, interp, pair_.X.trace()});
    for (int k = 0; k < m.a2_exp; ++k)
      out.push_back(Factor{"", 2, interp, pair_.Y.trace()});
    for (const auto& v : m.factors)
      out.push_back(Factor{v.rep(), 0, interp, eval_word(v.rep(), interp)});
    return out;
  }

  Rational factor_bracket(const Factor& a, const Factor& b) {
    Gradients ga = factor_gradients(a);
    Gradients gb = factor_gradients(b);
    return trace_product(ga.gx, gb.gy) - trace_product(ga.gy, gb.gx);
  }

  Gradients factor_gradients(const Factor& f) {
    if (f.kind == 1) {
      Gradients g{RationalMatrix::identity(n_), RationalMatrix(n_), false};
      return g;
    }
    if (f.kind == 2) {
      Gradients g{RationalMatrix(n_), RationalMatrix::identity(n_), false};
      return g;
    }
    auto key = std::make_pair(f.word, f.interp);
    auto it = grad_cache_.find(key);
    if (it != grad_cache_.end()) return it->second;
    Gradients g = word_gradients(f.word, f.interp);
    grad_cache_.emplace(key, g);
    return g;
  }

  const RationalMatrix& letter_matrix(char c, Interpretation interp) const {
    if (interp == Interpretation::Generic) return c == 'A' ? pair_.X : pair_.Y;
    return c == 'A' ? A_ : B_;
  }

  RationalMatrix project_traceless(const RationalMatrix& m) const {
    RationalMatrix r = m;
    Rational shift = m.trace() / n_;
    for (int i = 0; i < n_; ++i) r(i, i) -= shift;
    return r;
  }

  const InvariantRing& inv_;
  int n_;
  RationalMatrixPair pair_;
  RationalMatrix A_, B_, C_;
  std::map<std::string, Rational> generic_cache_, traceless_cache_;
  std::map<std::pair<std::string, Interpretation>, Gradients> grad_cache_;
  std::vector<Rational> gen_values_;
  std::vector<bool> have_gen_;

  RationalMatrix comm_power_matrix(int m) {
    RationalMatrix r = RationalMatrix::identity(n_);
    for (int k = 0; k < m; ++k) r = r * C_;
    return r;
  }
};

struct VerifyReport {
  bool pass = true;
  int failed_trial = -1;
  std::string witness;
};

// checks lhs_minus_rhs == 0 exactly at `trials` sampled pairs
template <typename SampleFn, typename EvalFn>
VerifyReport verify_identity(const InvariantRing& inv, SampleFn&& sample, EvalFn&& value,
                             int trials, std::uint64_t master_seed) {
  VerifyReport rep;
  for (int t = 0; t < trials; ++t) {
    RationalMatrixPair pair = sample(derive_seed(master_seed, static_cast<std::uint64_t>(t)));
    Evaluator ev(inv, pair);
    Rational v = value(ev);
    if (v != 0) {
      rep.pass = false;
      rep.failed_trial = t;
      std::ostringstream os;
      os << "X=[";
      for (int i = 0; i < pair.X.n(); ++i) {
        os << (i ? ";" : "") << "[";
        for (int j = 0; j < pair.X.n(); ++j) os << (j ? "," : "") << to_string(pair.X(i, j));
        os << "]";
      }
      os << "] Y=[";
      for (int i = 0; i < pair.Y.n(); ++i) {
        os << (i ? ";" : "") << "[";
        for (int j = 0; j < pair.Y.n(); ++j) os << (j ? "," : "") << to_string(pair.Y(i, j));
        os << "]";
      }
      os << "]";
      rep.witness = os.str();
      return rep;
    }
  }
  return rep;
}

}  // namespace matinv
