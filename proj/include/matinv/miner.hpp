#pragma once

#include <functional>
#include <sstream>
#include <thread>

#include "linsolve.hpp"
#include "numeric_oracle.hpp"
#include "session.hpp"

namespace matinv {

struct Relation {
  Bidegree bidegree;
  GenPoly poly;      // canonical form
  std::string origin;
};

// Graded relation store with per-bidegree span caches (monomial multiples of
// the stored relations, row-reduced over the graded monomial basis).
class RelationIdeal {
 public:
  explicit RelationIdeal(const GenRing& ring) : ring_(&ring) {}

  const std::vector<Relation>& relations() const { return relations_; }
  std::size_t size() const { return relations_.size(); }

  // remainder of cand after eliminating against the span at its bidegree;
  // zero remainder == membership
  GenPoly reduce_against(Bidegree b, const GenPoly& cand) {
    Piece& piece = ensure_piece(b);
    std::vector<Rational> row = to_row(piece, cand);
    eliminate(piece, row);
    return from_row(piece, row);
  }

  // appends (already reduced) relation in canonical form; returns index.
  // Built pieces fold it in lazily via their `applied` counter.
  int add(Bidegree b, const GenPoly& poly, std::string origin) {
    GenPoly canon = canonical_form(*ring_, poly);
    relations_.push_back(Relation{b, canon, std::move(origin)});
    return static_cast<int>(relations_.size()) - 1;
  }

  int piece_rank(Bidegree b) {
    Piece& piece = ensure_piece(b);
    return static_cast<int>(piece.rows.size());
  }

  int graded_dim(int degree) {
    int acc = 0;
    for (int r = 0; r <= degree; ++r) acc += piece_rank({r, degree - r});
    return acc;
  }

 private:
  struct Piece {
    Bidegree b;
    std::vector<GenMonomial> basis;             // descending paper-custom order
    std::map<GenMonomial, int> index;
    std::vector<std::vector<Rational>> rows;    // echelon rows
    std::vector<int> pivots;
    std::size_t applied = 0;  // how many relations have been folded in
  };

  Piece& ensure_piece(Bidegree b) {
    auto key = std::make_pair(b.r, b.s);
    auto it = pieces_.find(key);
    if (it == pieces_.end()) {
      Piece piece;
      piece.b = b;
      piece.basis = graded_basis(*ring_, b, all_vars(*ring_));
      for (std::size_t i = 0; i < piece.basis.size(); ++i)
        piece.index.emplace(piece.basis[i], static_cast<int>(i));
      it = pieces_.emplace(key, std::move(piece)).first;
    }
    Piece& piece = it->second;
    while (piece.applied < relations_.size()) {
      maybe_apply(piece, key, relations_[piece.applied]);
      ++piece.applied;
    }
    return piece;
  }

  void maybe_apply(Piece& piece, const std::pair<int, int>& key, const Relation& rel) {
    Bidegree left{key.first - rel.bidegree.r, key.second - rel.bidegree.s};
    if (left.r < 0 || left.s < 0) return;
    for (const GenMonomial& m : graded_basis(*ring_, left, all_vars(*ring_))) {
      GenPoly shifted = rel.poly.shifted(m, Rational(1));
      std::vector<Rational> row = to_row(piece, shifted);
      insert_row(piece, std::move(row));
    }
  }

  std::vector<Rational> to_row(const Piece& piece, const GenPoly& p) const {
    std::vector<Rational> row(piece.basis.size(), Rational(0));
    for (const auto& [m, c] : p.terms()) {
      auto it = piece.index.find(m);
      if (it == piece.index.end())
        throw std::logic_error("polynomial leaves its graded piece");
      row[static_cast<std::size_t>(it->second)] = c;
    }
    return row;
  }
  GenPoly from_row(const Piece& piece, const std::vector<Rational>& row) const {
    GenPoly p;
    for (std::size_t i = 0; i < row.size(); ++i)
      if (row[i] != 0) p.add(piece.basis[i], row[i]);
    return p;
  }

  void eliminate(const Piece& piece, std::vector<Rational>& row) const {
    for (std::size_t k = 0; k < piece.rows.size(); ++k) {
      int pc = piece.pivots[k];
      if (row[static_cast<std::size_t>(pc)] == 0) continue;
      Rational f = row[static_cast<std::size_t>(pc)] /
                   piece.rows[k][static_cast<std::size_t>(pc)];
      for (std::size_t j = 0; j < row.size(); ++j)
        if (piece.rows[k][j] != 0) row[j] -= f * piece.rows[k][j];
    }
  }
  void insert_row(Piece& piece, std::vector<Rational>&& row) {
    eliminate(piece, row);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) {
        piece.pivots.push_back(static_cast<int>(j));
        piece.rows.push_back(std::move(row));
        return;
      }
    }
  }

  const GenRing* ring_;
  std::vector<Relation> relations_;
  std::map<std::pair<int, int>, Piece> pieces_;
};

inline bool is_breaking_pair(const InvariantRing& inv, const Necklace& first,
                             const Necklace& second, Bidegree target) {
  Bidegree sum = first.bidegree() + second.bidegree();
  if (!(sum == Bidegree{target.r + 1, target.s + 1})) return false;
  if (first.degree() < 2) return false;
  if (compare_deglex(first, second) >= 0) return false;
  if (first.degree() == 2 && !is_chn(second, inv.n())) return false;
  if (inv.in_support(first) && inv.in_support(second)) return false;
  return true;
}

struct MineConfig {
  int max_degree = 13;
  std::uint64_t seed = 0;
  int jobs = 1;
  int verify_trials = 0;  // >0: numeric spot verification of new table entries
  long verify_bound = 6;
};

struct BidegreeStats {
  Bidegree b;
  int unknowns = 0;
  int equations_built = 0;
  int rank = 0;
  int relations_found = 0;
  bool special_used = false;
  bool used_fallback = false;
  bool rank_complete = true;
  std::vector<std::string> relation_origins;
};

struct DegreeStats {
  int degree = 0;
  int target_ideal_dim = 0;
  int ideal_dim = 0;
  int relations_found = 0;
  int propagated = 0;
};

struct MineLog {
  std::vector<BidegreeStats> bidegrees;
  std::vector<DegreeStats> degrees;
  std::vector<std::string> notes;

  std::string to_text() const {
    std::ostringstream os;
    for (const auto& d : degrees) {
      os << "degree " << d.degree << ": target_ideal_dim=" << d.target_ideal_dim
         << " ideal_dim=" << d.ideal_dim << " new_relations=" << d.relations_found
         << " propagated=" << d.propagated << "\n";
      for (const auto& b : bidegrees) {
        if (b.b.total() != d.degree) continue;
        os << "  (" << b.b.r << "," << b.b.s << "): unknowns=" << b.unknowns
           << " equations=" << b.equations_built << " rank=" << b.rank
           << " relations=" << b.relations_found << (b.special_used ? " special" : "")
           << (b.used_fallback ? " fallback" : "") << (b.rank_complete ? "" : " RANK-DEFICIT")
           << "\n";
        for (const auto& o : b.relation_origins) os << "    relation from " << o << "\n";
      }
    }
    for (const auto& n : notes) os << "note: " << n << "\n";
    return os.str();
  }
};

struct MineResult {
  bool deficit_filled = true;
  bool relations_below_12 = false;
  MineLog log;
};

// The degree-by-degree driver: Cayley-Hamilton reduction, breaking-pair
// systems, the commutator-power equation on the diagonal, Poisson-adjoint
// propagation, and Hilbert-deficit bookkeeping.
class Miner {
 public:
  Miner(Session& session, MineConfig config)
      : session_(session), config_(config), ideal_(session.ring()) {
    const auto& ring = session_.ring();
    std::vector<int> degrees;
    for (int i = 0; i < ring.count; ++i) degrees.push_back(ring.degree(i));
    auto free_coeffs = free_ring_series(degrees).integer_coefficients(config_.max_degree);
    auto target_coeffs = traceless_series(session_.n()).integer_coefficients(config_.max_degree);
    for (int d = 0; d <= config_.max_degree; ++d) {
      Integer deficit = free_coeffs[static_cast<std::size_t>(d)] -
                        target_coeffs[static_cast<std::size_t>(d)];
      target_ideal_dims_.push_back(static_cast<int>(deficit.get_si()));
    }
  }

  RelationIdeal& ideal() { return ideal_; }
  const MineLog& log() const { return log_; }
  int target_ideal_dim(int d) const { return target_ideal_dims_[static_cast<std::size_t>(d)]; }

  MineResult run() {
    MineResult result;
    for (int d = 2; d <= config_.max_degree; ++d) {
      DegreeStats ds;
      ds.degree = d;
      ds.target_ideal_dim = target_ideal_dims_[static_cast<std::size_t>(d)];
      std::size_t before = ideal_.size();
      for (int r = d; 2 * r >= d; --r) {
        int s = d - r;
        if (d >= 12 && session_.n() >= 3) ds.propagated += propagate_into(r, s);
        process_bidegree({r, s});
      }
      ds.relations_found = static_cast<int>(ideal_.size() - before);
      ds.ideal_dim = ideal_.graded_dim(d);
      log_.degrees.push_back(ds);
      session_.table().set_frontier(d);
      if (ds.ideal_dim != ds.target_ideal_dim) {
        result.deficit_filled = false;
        log_.notes.push_back("deficit unfilled at degree " + std::to_string(d) + ": dim " +
                             std::to_string(ds.ideal_dim) + " of " +
                             std::to_string(ds.target_ideal_dim));
      }
      if (d < 12 && ds.relations_found > 0) {
        result.relations_below_12 = true;
        log_.notes.push_back("unexpected relations below degree 12 at degree " +
                             std::to_string(d));
      }
      if (config_.verify_trials > 0) verify_degree(d);
    }
    result.log = log_;
    return result;
  }

  // ---- spec-level single operations, also used by the driver ----

  struct Equation {
    std::vector<Rational> lhs;
    GenPoly rhs;
    std::string tag;
  };

  // splits a trace polynomial into (linear part over the unknown traces of
  // bidegree `target`, reduced known part)
  std::pair<std::vector<Rational>, GenPoly> classify(
      const TracePolynomial& p, Bidegree target,
      const std::map<Necklace, int, DegLexLess>& unknown_index) {
    std::vector<Rational> vec(unknown_index.size(), Rational(0));
    GenPoly known;
    for (const auto& [m, c] : p.terms()) {
      if (m.a1_exp || m.a2_exp) throw std::logic_error("scalars in the mining arena");
      if (m.factors.size() == 1 && m.factors[0].bidegree() == target) {
        auto it = unknown_index.find(m.factors[0]);
        if (it != unknown_index.end() && !session_.table().contains(m.factors[0])) {
          vec[static_cast<std::size_t>(it->second)] += c;
          continue;
        }
      }
      GenPoly term = GenPoly::constant(c);
      for (const auto& v : m.factors) term = term * session_.reducer().reduce(v);
      known += term;
    }
    return {std::move(vec), std::move(known)};
  }

  // {Tr w1, expr} for a known GenPoly expr, Leibniz over generator occurrences
  std::pair<std::vector<Rational>, GenPoly> bracket_vs_genpoly(
      const Word& w1, const GenPoly& expr, Bidegree target,
      const std::map<Necklace, int, DegLexLess>& unknown_index) {
    std::vector<Rational> vec(unknown_index.size(), Rational(0));
    GenPoly known;
    const auto& inv = session_.invariants();
    Necklace v1{w1};
    for (const auto& [m, c] : expr.terms()) {
      for (int k = 0; k < inv.count(); ++k) {
        int e = m.exps[static_cast<std::size_t>(k)];
        if (!e) continue;
        GenMonomial cof = m;
        cof.exps[static_cast<std::size_t>(k)] -= 1;
        Rational scale = c * e;
        bool unit_cof = cof.is_one();
        for (const auto& [w2, c2] : inv.expansion(k).terms()) {
          TracePolynomial b = session_.engine().bracket(v1, w2, Interpretation::Traceless);
          auto [bvec, bknown] = classify(b, target, unknown_index);
          if (unit_cof) {
            for (std::size_t i = 0; i < vec.size(); ++i) vec[i] += bvec[i] * (scale * c2);
            known += bknown * (scale * c2);
          } else {
            for (const auto& q : bvec)
              if (q != 0) throw std::logic_error("unknown trace under a nonconstant cofactor");
            known += bknown.shifted(cof, scale * c2);
          }
        }
      }
    }
    return {std::move(vec), std::move(known)};
  }

  Equation pair_equation(const Necklace& w1, const Necklace& w2, Bidegree target,
                         const std::map<Necklace, int, DegLexLess>& unknown_index) {
    TracePolynomial raw =
        session_.engine().bracket(w1, w2, Interpretation::Traceless);
    auto [vec_raw, known_raw] = classify(raw, target, unknown_index);
    GenPoly expr2 = session_.reducer().reduce(w2);
    auto [vec_sub, known_sub] = bracket_vs_genpoly(w1.word(), expr2, target, unknown_index);
    Equation eq;
    eq.lhs.resize(vec_raw.size());
    for (std::size_t i = 0; i < vec_raw.size(); ++i) eq.lhs[i] = vec_raw[i] - vec_sub[i];
    eq.rhs = known_sub - known_raw;
    eq.tag = "pair(" + render(w1) + "," + render(w2) + ")";
    return eq;
  }

  Equation special_equation(int m, const std::map<Necklace, int, DegLexLess>& unknown_index) {
    NecklaceSum expand = session_.reducer().commutator_power_expand(m);
    TracePolynomial p =
        TracePolynomial::from_necklace_sum(Interpretation::Traceless, session_.n(), expand);
    auto [vec, known] = classify(p, {m, m}, unknown_index);
    Equation eq;
    eq.lhs = std::move(vec);
    eq.rhs = session_.reducer().commutator_power_reduce(m) - known;
    eq.tag = "special(Tr[A,B]^" + std::to_string(m) + ")";
    return eq;
  }

  Equation generator_equation(int k, Bidegree target,
                              const std::map<Necklace, int, DegLexLess>& unknown_index) {
    TracePolynomial p = TracePolynomial::from_necklace_sum(
        Interpretation::Traceless, session_.n(), session_.invariants().expansion(k));
    auto [vec, known] = classify(p, target, unknown_index);
    Equation eq;
    eq.lhs = std::move(vec);
    eq.rhs = GenPoly::variable(k) - known;
    eq.tag = "def(" + session_.ring().names[static_cast<std::size_t>(k)] + ")";
    return eq;
  }

  std::vector<std::pair<Necklace, Necklace>> breaking_pairs(Bidegree target) {
    std::vector<std::pair<Necklace, Necklace>> out;
    const auto& inv = session_.invariants();
    for (int r1 = 0; r1 <= target.r + 1; ++r1) {
      for (int s1 = 0; s1 <= target.s + 1; ++s1) {
        int r2 = target.r + 1 - r1, s2 = target.s + 1 - s1;
        if (r2 < 0 || s2 < 0 || r1 + s1 < 2) continue;
        for (const auto& w1 : enumerate_necklaces({r1, s1})) {
          for (const auto& w2 : enumerate_necklaces({r2, s2})) {
            if (is_breaking_pair(inv, w1, w2, target)) out.emplace_back(w1, w2);
          }
        }
      }
    }
    return out;
  }

  // Pairs that satisfy the first three breaking-pair conditions but not the
  // support condition. Their equations are equally valid (the second trace is
  // still reducible); they are only consulted when the strict pairs leave the
  // system rank-deficient, which does happen, e.g. at bidegree (3,3) for n = 4
  // where only two strict pairs exist for four unknown traces.
  std::vector<std::pair<Necklace, Necklace>> fallback_pairs(Bidegree target) {
    std::vector<std::pair<Necklace, Necklace>> out;
    const auto& inv = session_.invariants();
    for (int r1 = 0; r1 <= target.r + 1; ++r1) {
      for (int s1 = 0; s1 <= target.s + 1; ++s1) {
        int r2 = target.r + 1 - r1, s2 = target.s + 1 - s1;
        if (r2 < 0 || s2 < 0 || r1 + s1 < 2) continue;
        for (const auto& w1 : enumerate_necklaces({r1, s1})) {
          for (const auto& w2 : enumerate_necklaces({r2, s2})) {
            if (w1.degree() < 2 || compare_deglex(w1, w2) >= 0) continue;
            if (w1.degree() == 2 && !is_chn(w2, inv.n())) continue;
            if (!(inv.in_support(w1) && inv.in_support(w2))) continue;  // strict pair already
            out.emplace_back(w1, w2);
          }
        }
      }
    }
    return out;
  }

  void process_bidegree(Bidegree b) {
    BidegreeStats stats;
    stats.b = b;
    const int n = session_.n();
    const int degree = b.total();
    auto necks = enumerate_necklaces(b);
    // Cayley-Hamilton necklaces reduce outright
    std::map<Necklace, int, DegLexLess> unknown_index;
    std::vector<Necklace> unknowns;
    for (const auto& v : necks) {
      if (is_chn(v, n)) {
        session_.reducer().reduce(v);
      } else if (!session_.table().contains(v)) {
        unknown_index.emplace(v, static_cast<int>(unknowns.size()));
        unknowns.push_back(v);
      }
    }
    stats.unknowns = static_cast<int>(unknowns.size());

    LinearSystem system(static_cast<int>(unknowns.size()));
    int special_index = -1;

    auto deficit_open = [&] {
      if (degree < 12) return false;
      return ideal_.graded_dim(degree) < target_ideal_dims_[static_cast<std::size_t>(degree)];
    };
    auto want_more = [&] { return !system.full_rank() || deficit_open(); };

    auto feed = [&](Equation&& eq) {
      ++stats.equations_built;
      auto res = system.add_equation(eq.lhs, eq.rhs);
      if (res.status == LinearSystem::Status::Inconsistent) {
        GenPoly reduced = ideal_.reduce_against(b, res.relation);
        if (!reduced.is_zero()) {
          bool with_special =
              special_index >= 0 &&
              res.certificate[static_cast<std::size_t>(special_index)] != 0;
          std::string origin = eq.tag + (with_special ? " [uses special]" : "");
          ideal_.add(b, reduced, origin);
          stats.relation_origins.push_back(origin);
          ++stats.relations_found;
          if (b.r != b.s) {
            GenPoly sw = ideal_.reduce_against(b.swapped(),
                                               swap_involution(session_.ring(), reduced));
            if (!sw.is_zero()) ideal_.add(b.swapped(), sw, origin + " [swap]");
          } else {
            GenPoly sw = ideal_.reduce_against(b, swap_involution(session_.ring(), reduced));
            if (!sw.is_zero()) {
              ideal_.add(b, sw, origin + " [swap]");
              stats.relation_origins.push_back(origin + " [swap]");
              ++stats.relations_found;
            }
          }
        }
      }
    };

    // the commutator-power equation opens the diagonal bidegrees
    if (b.r == b.s && b.r >= 1 && (!unknowns.empty() || degree >= 12)) {
      stats.special_used = true;
      special_index = 0;
      feed(special_equation(b.r, unknown_index));
    }
    // generator definitions in this bidegree
    for (int k = 0; k < session_.invariants().count(); ++k) {
      if (session_.ring().bidegrees[static_cast<std::size_t>(k)] == b && !unknowns.empty())
        feed(generator_equation(k, b, unknown_index));
    }
    // breaking pairs in canonical order until the system closes; the fallback
    // tier only runs when the strict pairs were not enough
    if (want_more() && !unknowns.empty()) {
      for (const auto& [w1, w2] : breaking_pairs(b)) {
        if (!want_more()) break;
        feed(pair_equation(w1, w2, b, unknown_index));
      }
    }
    if (want_more() && !unknowns.empty()) {
      stats.used_fallback = true;
      for (const auto& [w1, w2] : fallback_pairs(b)) {
        if (!want_more()) break;
        feed(pair_equation(w1, w2, b, unknown_index));
      }
    }

    stats.rank = system.rank();
    stats.rank_complete = system.full_rank() || unknowns.empty();
    if (stats.rank_complete && !unknowns.empty()) {
      auto xs = system.solve();
      for (std::size_t i = 0; i < unknowns.size(); ++i)
        session_.table().insert(unknowns[i], xs[i]);
    }

    // mirror bidegree is filled by the letter swap
    if (b.r != b.s && stats.rank_complete) {
      for (const auto& v : necks) {
        Necklace sv = swap_letters(v);
        if (!session_.table().contains(sv)) {
          auto expr = session_.table().find(v);
          session_.table().insert(sv, swap_involution(session_.ring(), *expr));
        }
      }
    }
    log_.bidegrees.push_back(std::move(stats));
  }

  // Poisson-adjoint candidates for bidegree (r, s): {a5, rho} from (r+1, s-1)
  // and {a6, rho} from (r-2, s+1); returns how many entered the ideal.
  int propagate_into(int r, int s) {
    int added = 0;
    auto try_candidates = [&](int seed_index, Bidegree source) {
      if (source.r < 0 || source.s < 0) return;
      std::vector<GenPoly> cands;
      for (const auto& rel : ideal_.relations()) {
        if (!(rel.bidegree == source)) continue;
        cands.push_back(session_.adjoint_apply(session_.adjoint_row(seed_index), rel.poly));
      }
      for (auto& c : cands) {
        if (c.is_zero()) continue;
        GenPoly reduced = ideal_.reduce_against({r, s}, c);
        if (reduced.is_zero()) continue;
        std::string origin = std::string("propagate(") + (seed_index == 2 ? "a5" : "a6") + " from (" +
                             std::to_string(source.r) + "," + std::to_string(source.s) + "))";
        ideal_.add({r, s}, reduced, origin);
        ++added;
        if (r != s) {
          GenPoly sw = ideal_.reduce_against({s, r}, swap_involution(session_.ring(), reduced));
          if (!sw.is_zero()) ideal_.add({s, r}, sw, origin + " [swap]");
        } else {
          GenPoly sw = ideal_.reduce_against({r, s}, swap_involution(session_.ring(), reduced));
          if (!sw.is_zero()) {
            ideal_.add({r, s}, sw, origin + " [swap]");
            ++added;
          }
        }
      }
    };
    try_candidates(2, {r + 1, s - 1});  // a5
    try_candidates(3, {r - 2, s + 1});  // a6
    return added;
  }

 private:
  // A solved representative always evaluates to the true trace: the kept rows
  // are identities satisfied by the true values, and a consistent full-rank
  // system has exactly one solution. So exact numeric equality is required at
  // every degree, not just below 12.
  void verify_degree(int d) {
    std::vector<Evaluator> evals;
    for (int t = 0; t < config_.verify_trials; ++t) {
      SamplerConfig sc{derive_seed(config_.seed, static_cast<std::uint64_t>(t)),
                       config_.verify_bound};
      evals.emplace_back(session_.invariants(), sample_generic(session_.n(), sc));
    }
    auto snapshot = session_.table().snapshot();
    for (const auto& [v, expr] : snapshot) {
      if (v.degree() != d) continue;
      for (auto& ev : evals) {
        if (ev.eval_necklace(v, Interpretation::Traceless) != ev.eval(expr))
          throw std::runtime_error("table entry fails numeric verification: " + render(v));
      }
    }
  }

  Session& session_;
  MineConfig config_;
  RelationIdeal ideal_;
  MineLog log_;
  std::vector<int> target_ideal_dims_;
};

}  // namespace matinv
