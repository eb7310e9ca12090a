#pragma once

#include <memory>

#include "bracket.hpp"
#include "chreduce.hpp"
#include "generators.hpp"
#include "hilbert.hpp"

namespace matinv {

// Everything tied to one matrix size: generator tables, the expression table,
// the bracket cache, and the reducer over them.
class Session {
 public:
  explicit Session(int n)
      : inv_(n), engine_(n), reducer_(inv_, table_) {
    reducer_.seed_table();
  }

  int n() const { return inv_.n(); }
  const InvariantRing& invariants() const { return inv_; }
  const GenRing& ring() const { return inv_.ring(); }
  ExpressionTable& table() { return table_; }
  const ExpressionTable& table() const { return table_; }
  BracketEngine& engine() { return engine_; }
  ChReducer& reducer() { return reducer_; }

  // reduce every trace factor of a TracePolynomial; throws if some necklace is
  // beyond the frontier
  GenPoly reduce_all(const TracePolynomial& p) {
    GenPoly out;
    for (const auto& [m, c] : p.terms()) {
      if (m.a1_exp || m.a2_exp)
        throw std::logic_error("reduce_all: scalar variables in the traceless arena");
      GenPoly term = GenPoly::constant(c);
      for (const auto& v : m.factors) term = term * reducer_.reduce(v);
      out += term;
    }
    return out;
  }

  // {Tr(seed word), a_k} fully reduced; requires the table frontier to cover
  // degree(seed) + degree(a_k) - 2
  GenPoly adjoint_bracket(const Word& seed, int k) {
    GenPoly out;
    for (const auto& [v, c] : inv_.expansion(k).terms()) {
      TracePolynomial b = engine_.bracket(Necklace(seed), v, Interpretation::Traceless);
      out += reduce_all(b) * c;
    }
    return out;
  }

  // Poisson bracket of a seed generator with a GenPoly, via the Leibniz rule
  // over a precomputed adjoint row.
  GenPoly adjoint_apply(const std::vector<GenPoly>& adjoint_row, const GenPoly& p) const {
    GenPoly out;
    for (const auto& [m, c] : p.terms()) {
      for (int k = 0; k < inv_.count(); ++k) {
        int e = m.exps[static_cast<std::size_t>(k)];
        if (!e) continue;
        GenMonomial cof = m;
        cof.exps[static_cast<std::size_t>(k)] -= 1;
        out += adjoint_row[static_cast<std::size_t>(k)].shifted(cof, c * e);
      }
    }
    return out;
  }

  const std::vector<GenPoly>& adjoint_row(int seed_index) {
    auto& row = adjoint_rows_[seed_index];
    if (row.empty()) {
      const std::string word = seed_index == 2 ? "BB" : "AAA";  // a5 resp. a6
      row.resize(static_cast<std::size_t>(inv_.count()));
      for (int k = 0; k < inv_.count(); ++k)
        row[static_cast<std::size_t>(k)] = adjoint_bracket(Word(word), k);
    }
    return row;
  }

 private:
  InvariantRing inv_;
  ExpressionTable table_;
  BracketEngine engine_;
  ChReducer reducer_;
  std::map<int, std::vector<GenPoly>> adjoint_rows_;
};

}  // namespace matinv
