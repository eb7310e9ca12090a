#pragma once

#include <map>
#include <vector>

#include "genpoly.hpp"
#include "rational.hpp"

namespace matinv {

// Incremental fraction-free (Bareiss) elimination over exact integers with
// GenPoly right-hand sides. Each accepted equation becomes one echelon level;
// a new row is swept through all levels with the one-step-division update
//   row <- (pivot_L * row - row[col_L] * basis_L) / pivot_{L-1},
// which keeps every entry an integer minor of the original system. Rows that
// vanish on the left with a nonzero right-hand side yield a left-null-vector
// certificate y (y.A = 0, y.b != 0) whose y.b is the relation candidate.
class LinearSystem {
 public:
  enum class Status { NewPivot, Dependent, Inconsistent };

  struct AddResult {
    Status status = Status::Dependent;
    GenPoly relation;                  // y.b, only for Inconsistent
    std::vector<Rational> certificate; // y over the added equations
  };

  explicit LinearSystem(int num_unknowns) : cols_(num_unknowns) {}

  // checked exact division: the Bareiss identity guarantees divisibility, and
  // a failed check means corrupted elimination rather than silent nonsense
  static void exact_div(Integer& out, const Integer& num, const Integer& den) {
    Integer q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (r != 0) throw std::logic_error("fraction-free elimination: non-exact division");
    out = std::move(q);
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  int unknowns() const { return cols_; }
  bool full_rank() const { return rank() == cols_; }
  int equations_added() const { return num_added_; }

  AddResult add_equation(const std::vector<Rational>& lhs, const GenPoly& rhs,
                         bool keep_original = false) {
    Row row;
    row.lhs.resize(static_cast<std::size_t>(cols_));
    // clear denominators across the whole augmented row
    Integer lcm(1);
    for (const auto& q : lhs)
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), denominator(q).get_mpz_t());
    for (const auto& [m, c] : rhs.terms())
      mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), denominator(c).get_mpz_t());
    for (std::size_t j = 0; j < lhs.size(); ++j)
      row.lhs[j] = numerator(lhs[j]) * (lcm / denominator(lhs[j]));
    row.rhs = rhs * Rational(lcm);
    int eq_index = num_added_++;
    row.cert[eq_index] = lcm;
    if (keep_original) originals_.push_back({row.lhs, row.rhs, eq_index});

    for (std::size_t level = 0; level < rows_.size(); ++level) {
      const Row& basis = rows_[level];
      const Integer& piv = basis.lhs[static_cast<std::size_t>(basis.pivot)];
      const Integer& prev = level == 0 ? one_ : rows_[level - 1].lhs[static_cast<std::size_t>(
                                                    rows_[level - 1].pivot)];
      Integer x = row.lhs[static_cast<std::size_t>(basis.pivot)];
      for (std::size_t j = 0; j < row.lhs.size(); ++j) {
        Integer v = piv * row.lhs[j] - x * basis.lhs[j];
        exact_div(row.lhs[j], v, prev);
      }
      row.rhs = (row.rhs * Rational(piv) - basis.rhs * Rational(x)) * make_rational(Integer(1), prev);
      combine_cert(row.cert, piv, basis.cert, x, prev);
    }

    int pivot = -1;
    for (int j = 0; j < cols_; ++j)
      if (row.lhs[static_cast<std::size_t>(j)] != 0) {
        pivot = j;
        break;
      }
    AddResult res;
    if (pivot < 0) {
      if (row.rhs.is_zero()) {
        res.status = Status::Dependent;
        return res;
      }
      res.status = Status::Inconsistent;
      res.relation = row.rhs;
      res.certificate.assign(static_cast<std::size_t>(num_added_), Rational(0));
      for (const auto& [k, v] : row.cert) res.certificate[static_cast<std::size_t>(k)] = v;
      return res;
    }
    row.pivot = pivot;
    rows_.push_back(std::move(row));
    res.status = Status::NewPivot;
    return res;
  }

  // Solutions as GenPoly per unknown; requires full rank.
  std::vector<GenPoly> solve() const {
    if (!full_rank()) throw std::logic_error("solve() on a rank-deficient system");
    std::vector<GenPoly> xs(static_cast<std::size_t>(cols_));
    std::vector<bool> have(static_cast<std::size_t>(cols_), false);
    for (std::size_t level = rows_.size(); level-- > 0;) {
      const Row& r = rows_[level];
      GenPoly acc = r.rhs;
      for (int j = 0; j < cols_; ++j) {
        if (j == r.pivot) continue;
        const Integer& c = r.lhs[static_cast<std::size_t>(j)];
        if (c == 0) continue;
        if (!have[static_cast<std::size_t>(j)])
          throw std::logic_error("back-substitution hit an unresolved column");
        acc -= xs[static_cast<std::size_t>(j)] * Rational(c);
      }
      xs[static_cast<std::size_t>(r.pivot)] =
          acc * make_rational(Integer(1), r.lhs[static_cast<std::size_t>(r.pivot)]);
      have[static_cast<std::size_t>(r.pivot)] = true;
    }
    return xs;
  }

  // exact check y.A = 0 over the kept originals (testing hook)
  bool certificate_annihilates(const std::vector<Rational>& y) const {
    for (int j = 0; j < cols_; ++j) {
      Rational acc(0);
      for (const auto& o : originals_)
        acc += y[static_cast<std::size_t>(o.index)] * Rational(o.lhs[static_cast<std::size_t>(j)]);
      if (acc != 0) return false;
    }
    return true;
  }

 private:
  struct Row {
    std::vector<Integer> lhs;
    GenPoly rhs;
    std::map<int, Integer> cert;
    int pivot = -1;
  };
  struct Original {
    std::vector<Integer> lhs;
    GenPoly rhs;
    int index;
  };

  static void combine_cert(std::map<int, Integer>& cert, const Integer& piv,
                           const std::map<int, Integer>& basis_cert, const Integer& x,
                           const Integer& prev) {
    std::map<int, Integer> out;
    for (const auto& [k, v] : cert) {
      Integer t = piv * v;
      auto it = basis_cert.find(k);
      if (it != basis_cert.end()) t -= x * it->second;
      if (t != 0) {
        exact_div(t, t, prev);
        out[k] = t;
      }
    }
    for (const auto& [k, v] : basis_cert) {
      if (cert.count(k)) continue;
      Integer t = -x * v;
      if (t != 0) {
        exact_div(t, t, prev);
        out[k] = t;
      }
    }
    cert = std::move(out);
  }

  int cols_;
  int num_added_ = 0;
  std::vector<Row> rows_;
  std::vector<Original> originals_;
  Integer one_{1};
};

}  // namespace matinv
