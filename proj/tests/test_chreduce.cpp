#include <catch2/catch_amalgamated.hpp>

#include <matinv/miner.hpp>
#include <matinv/numeric_oracle.hpp>
#include <matinv/session.hpp>

using namespace matinv;

namespace {

Necklace neck(const std::string& s) { return Necklace(parse_word(s)); }

// verify Tr(v) - reduce(v) vanishes on sampled pairs
void check_reduction(Session& session, const Necklace& v, int trials, std::uint64_t seed) {
  GenPoly expr = session.reducer().reduce(v);
  for (int t = 0; t < trials; ++t) {
    Evaluator ev(session.invariants(),
                 sample_generic(session.n(), {derive_seed(seed, static_cast<std::uint64_t>(t)), 6}));
    REQUIRE(ev.eval_necklace(v, Interpretation::Traceless) == ev.eval(expr));
  }
}

// Run mining up to max_degree so the table covers what the test needs.
std::unique_ptr<Miner> mined(Session& session, int max_degree) {
  MineConfig cfg;
  cfg.max_degree = max_degree;
  auto miner = std::make_unique<Miner>(session, cfg);
  miner->run();
  return miner;
}

}  // namespace

TEST_CASE("newton_elementary: specializations and diagonal oracle") {
  // identity matrix: p_k = n gives c_k = binomial(n, k)
  for (int n : {2, 3, 4}) {
    std::vector<GenPoly> p(static_cast<std::size_t>(n), GenPoly::constant(Rational(n)));
    auto c = newton_elementary(p, n);
    long binom = 1;
    for (int k = 1; k <= n; ++k) {
      binom = binom * (n - k + 1) / k;
      REQUIRE(c[static_cast<std::size_t>(k - 1)].is_constant());
      CHECK(c[static_cast<std::size_t>(k - 1)].constant_value() == binom);
    }
  }

  // p1 = 0 forces c2 = -p2/2 (symbolically, over one variable)
  std::vector<GenPoly> p{GenPoly(), GenPoly::variable(0)};
  auto c = newton_elementary(p, 2);
  CHECK(c[0].is_zero());
  CHECK(c[1] == GenPoly::variable(0) * Rational(-1, 2));

  // random diagonal matrices: c_k equal the elementary symmetric functions
  SplitMix64 rng(55);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 4;
    std::vector<Rational> eig;
    for (int i = 0; i < n; ++i) eig.push_back(Rational(static_cast<long>(rng.next() % 11) - 5));
    std::vector<GenPoly> ps;
    for (int k = 1; k <= n; ++k) {
      Rational pk(0);
      for (const auto& e : eig) {
        Rational t(1);
        for (int j = 0; j < k; ++j) t *= e;
        pk += t;
      }
      ps.push_back(GenPoly::constant(pk));
    }
    auto cs = newton_elementary(ps, n);
    // elementary symmetric by direct subset sums
    for (int k = 1; k <= n; ++k) {
      Rational ek(0);
      for (int mask = 0; mask < (1 << n); ++mask) {
        if (__builtin_popcount(static_cast<unsigned>(mask)) != k) continue;
        Rational t(1);
        for (int i = 0; i < n; ++i)
          if (mask & (1 << i)) t *= eig[static_cast<std::size_t>(i)];
        ek += t;
      }
      CHECK(cs[static_cast<std::size_t>(k - 1)].constant_value() == ek);
    }
  }
}

TEST_CASE("det_word: pinned examples and numeric determinants") {
  Session s4(4);
  // e4 of a traceless 4x4 letter: (a3^2 - 2 a10)/8
  GenPoly e4 = s4.reducer().det_word({1, 0});
  GenPoly expected = (GenPoly::variable(0) * GenPoly::variable(0) -
                      GenPoly::variable(7) * Rational(2)) *
                     Rational(1, 8);
  CHECK(e4 == expected);
  CHECK(s4.reducer().det_word({0, 0}) == GenPoly::constant(Rational(1)));

  // multiplicativity against numeric determinants
  for (int n : {2, 3, 4}) {
    Session s(n);
    for (int t = 0; t < 6; ++t) {
      Evaluator ev(s.invariants(), sample_generic(n, {derive_seed(91, static_cast<std::uint64_t>(t)), 5}));
      RationalMatrix A = ev.pair().X.traceless_part();
      RationalMatrix B = ev.pair().Y.traceless_part();
      CHECK(ev.eval(s.reducer().det_word({1, 1})) == (A * B).det());
      CHECK(ev.eval(s.reducer().det_word({2, 1})) == (A * A * B).det());
    }
  }
}

TEST_CASE("ch_substitute and reduce: the degree-5 values of the paper") {
  Session s(4);
  auto miner = mined(s, 5);
  auto var = [](int display) { return GenPoly::variable(display - 3); };

  CHECK(s.reducer().reduce_str("AAAA") == var(10));
  CHECK(s.reducer().reduce_str("A^5") == var(3) * var(6) * Rational(5, 6));
  CHECK(s.reducer().reduce_str("A^4B") ==
        var(3) * var(7) * Rational(1, 2) + var(4) * var(6) * Rational(1, 3));
  GenPoly sum = var(5) * var(6) + var(4) * var(7) * Rational(6) + var(3) * var(8) * Rational(3);
  CHECK(s.reducer().reduce_str("A^3B^2") == (sum - var(16) * Rational(6)) * Rational(1, 12));
  CHECK(s.reducer().reduce_str("A^2BAB") == (sum + var(16) * Rational(6)) * Rational(1, 12));
}

TEST_CASE("reduce: soundness on random CH necklaces across sizes") {
  for (int n : {2, 3, 4}) {
    Session s(n);
    mined(s, 6);
    for (Bidegree b : std::vector<Bidegree>{{7, 0}, {5, 2}, {4, 3}, {6, 1}, {4, 4}, {5, 3}}) {
      for (const auto& v : enumerate_necklaces(b)) {
        if (!is_chn(v, n)) continue;
        check_reduction(s, v, 4, 1234 + n);
      }
    }
  }
}

TEST_CASE("pure powers reduce through the determinant route: Tr((AB)^4)") {
  Session s(4);
  mined(s, 7);
  Necklace v = neck("ABABABAB");
  REQUIRE(is_chn(v, 4));
  auto d = find_ch_decomposition(v, 4);
  REQUIRE(d.has_value());
  CHECK(d->tail.empty());
  check_reduction(s, v, 10, 88);
}

TEST_CASE("confluence: alternative CH decompositions agree symbolically below 12") {
  Session s(4);
  mined(s, 8);
  SplitMix64 rng(1717);
  int checked = 0;
  for (int trial = 0; trial < 400 && checked < 30; ++trial) {
    int len = 5 + static_cast<int>(rng.next() % 5);
    std::string word;
    for (int i = 0; i < len; ++i) word += (rng.next() & 1) ? 'B' : 'A';
    Necklace v{Word(word)};
    if (!is_chn(v, 4)) continue;
    GenPoly reference = s.reducer().reduce(v);
    // every valid decomposition, not only the canonical one
    const std::string ww = v.rep() + v.rep();
    int L = v.degree();
    for (int l = 1; 4 * l <= L; ++l) {
      for (int i = 0; i < L; ++i) {
        bool ok = true;
        for (int j = i; j < i + 3 * l; ++j)
          if (ww[static_cast<std::size_t>(j)] != ww[static_cast<std::size_t>(j + l)]) {
            ok = false;
            break;
          }
        if (!ok) continue;
        Word u{ww.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(l))};
        Word tail{ww.substr(static_cast<std::size_t>(i + 4 * l), static_cast<std::size_t>(L - 4 * l))};
        CHECK(s.reducer().ch_substitute_via(u, tail) == reference);
        ++checked;
      }
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("commutator powers: expansion, reduction, and numeric agreement") {
  Session s(4);
  mined(s, 5);
  // m = 2 expansion: 2 Tr(ABAB) - 2 Tr(A^2B^2) = 2 a15
  NecklaceSum e2 = s.reducer().commutator_power_expand(2);
  REQUIRE(e2.terms().size() == 2);
  CHECK(e2.terms().at(neck("ABAB")) == 2);
  CHECK(e2.terms().at(neck("A^2B^2")) == -2);
  GenPoly r2 = s.reducer().commutator_power_reduce(2);
  CHECK(r2 == GenPoly::variable(12) * Rational(2));

  // m = 3 reduce: 3 a21 by definition
  CHECK(s.reducer().commutator_power_reduce(3) == GenPoly::variable(18) * Rational(3));

  // m = 5, 6: numeric agreement of the reduce branch with the matrix expression
  for (int m : {5, 6}) {
    GenPoly reduced = s.reducer().commutator_power_reduce(m);
    for (int t = 0; t < 10; ++t) {
      Evaluator ev(s.invariants(), sample_generic(4, {derive_seed(300 + m, static_cast<std::uint64_t>(t)), 6}));
      RationalMatrix A = ev.pair().X.traceless_part();
      RationalMatrix B = ev.pair().Y.traceless_part();
      RationalMatrix C = A * B - B * A;
      RationalMatrix Cm = RationalMatrix::identity(4);
      for (int k = 0; k < m; ++k) Cm = Cm * C;
      CHECK(ev.eval(reduced) == Cm.trace());
    }
  }
}
