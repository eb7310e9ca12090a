#include <catch2/catch_amalgamated.hpp>

#include <matinv/bracket.hpp>
#include <matinv/numeric_oracle.hpp>

using namespace matinv;

namespace {
Necklace neck(const std::string& s) { return Necklace(parse_word(s)); }
TracePolynomial trace_of(const std::string& s, Interpretation interp, int n) {
  return TracePolynomial::trace(interp, n, neck(s));
}
}

TEST_CASE("samplers: commuting pairs commute, CM pairs satisfy the rank-one condition") {
  for (int n : {2, 3, 4}) {
    for (std::uint64_t seed : {11ULL, 22ULL, 33ULL}) {
      auto c = sample_commuting(n, {seed, 10});
      CHECK(c.X * c.Y == c.Y * c.X);

      auto m = sample_cm(n, {seed, 10});
      RationalMatrix comm = m.X * m.Y - m.Y * m.X;
      CHECK((comm + RationalMatrix::identity(n)).rank() == 1);
    }
  }
  // determinism
  auto p1 = sample_generic(4, {77, 10});
  auto p2 = sample_generic(4, {77, 10});
  CHECK(p1.X == p2.X);
  CHECK(p1.Y == p2.Y);
}

TEST_CASE("eval_necklace: pinned values and rotation invariance") {
  InvariantRing inv(2);
  RationalMatrixPair p{RationalMatrix(2), RationalMatrix(2), "nilpotent"};
  p.X(0, 1) = 1;
  p.Y(1, 0) = 1;
  Evaluator ev(inv, p);
  CHECK(ev.eval_necklace(neck("XY"), Interpretation::Generic) == 1);
  CHECK(ev.eval_necklace(neck("A"), Interpretation::Traceless) == 0);

  InvariantRing inv4(4);
  SplitMix64 rng(4242);
  for (int t = 0; t < 10; ++t) {
    Evaluator e4(inv4, sample_generic(4, {rng.next(), 8}));
    std::string w;
    for (int i = 0; i < 7; ++i) w += (rng.next() & 1) ? 'B' : 'A';
    Rational ref = e4.eval_word(w, Interpretation::Traceless);
    for (std::size_t i = 1; i < w.size(); ++i) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
      CHECK(e4.eval_word(w, Interpretation::Traceless) == ref);
    }
  }
}

TEST_CASE("generator a15 evaluates to 6 on Calogero-Moser points") {
  InvariantRing inv(4);
  for (std::uint64_t seed : {5ULL, 6ULL, 7ULL}) {
    Evaluator ev(inv, sample_cm(4, {seed, 9}));
    CHECK(ev.generator_value(12) == 6);  // a15
  }
}

TEST_CASE("numeric Poisson bracket: coordinate pairs and pinned bracket") {
  InvariantRing inv(4);
  auto g = [&](const std::string& s) { return trace_of(s, Interpretation::Generic, 4); };
  auto t = [&](const std::string& s) { return trace_of(s, Interpretation::Traceless, 4); };
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    Evaluator ev(inv, sample_generic(4, {seed, 10}));
    CHECK(ev.numeric_poisson(g("X"), g("Y")) == 4);
    CHECK(ev.numeric_poisson(g("X^2Y"), g("X^2Y")) == 0);
    // {Tr(B^2), Tr(A^4B)} = eval of -4 Tr(A^3B^2) - 4 Tr(A^2BAB)
    Rational lhs = ev.numeric_poisson(t("B^2"), t("A^4B"));
    Rational rhs = Rational(-4) * ev.eval_necklace(neck("A^3B^2"), Interpretation::Traceless) +
                   Rational(-4) * ev.eval_necklace(neck("A^2BAB"), Interpretation::Traceless);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("oracle consistency: symbolic bracket routes match the matrix calculus") {
  const int n = 4;
  InvariantRing inv(n);
  BracketEngine engine(n);
  SplitMix64 rng(31337);
  for (int trial = 0; trial < 25; ++trial) {
    std::string s1, s2;
    int d1 = 1 + static_cast<int>(rng.next() % 5), d2 = 1 + static_cast<int>(rng.next() % 5);
    for (int i = 0; i < d1; ++i) s1 += (rng.next() & 1) ? 'B' : 'A';
    for (int i = 0; i < d2; ++i) s2 += (rng.next() & 1) ? 'B' : 'A';
    TracePolynomial symbolic = traceless_bracket(Word(s1), Word(s2), n);
    TracePolynomial generic_route = contract_to_traceless(
        engine.poisson(expand_traceless(Word(s1), n), expand_traceless(Word(s2), n)), n);
    for (int t = 0; t < 4; ++t) {
      Evaluator ev(inv, sample_generic(n, {derive_seed(808, rng.next()), 7}));
      Rational numeric = ev.numeric_poisson(trace_of(s1, Interpretation::Traceless, n),
                                            trace_of(s2, Interpretation::Traceless, n));
      CHECK(ev.eval(symbolic) == numeric);
      CHECK(ev.eval(generic_route) == numeric);
    }
  }
}

TEST_CASE("generic-interpretation numeric bracket matches the Kontsevich expansion") {
  const int n = 3;
  InvariantRing inv(n);
  SplitMix64 rng(60);
  for (int trial = 0; trial < 20; ++trial) {
    std::string s1, s2;
    int d1 = 1 + static_cast<int>(rng.next() % 4), d2 = 1 + static_cast<int>(rng.next() % 4);
    for (int i = 0; i < d1; ++i) s1 += (rng.next() & 1) ? 'B' : 'A';
    for (int i = 0; i < d2; ++i) s2 += (rng.next() & 1) ? 'B' : 'A';
    TracePolynomial symbolic = TracePolynomial::from_necklace_sum(
        Interpretation::Generic, n, kontsevich_bracket(Word(s1), Word(s2)));
    Evaluator ev(inv, sample_generic(n, {rng.next(), 6}));
    CHECK(ev.eval(symbolic) == ev.numeric_poisson(trace_of(s1, Interpretation::Generic, n),
                                                  trace_of(s2, Interpretation::Generic, n)));
  }
}

TEST_CASE("verify_identity: a true identity passes, a perturbed one fails with witness") {
  InvariantRing inv(4);
  auto sampler = [](std::uint64_t seed) { return sample_generic(4, {seed, 10}); };
  // Tr(A^5) - (5/6) a3 a6 vanishes identically
  auto good = verify_identity(inv, sampler, [&](Evaluator& ev) -> Rational {
    return ev.eval_necklace(neck("A^5"), Interpretation::Traceless) -
           Rational(5, 6) * ev.generator_value(0) * ev.generator_value(3);
  }, 20, 424242);
  CHECK(good.pass);

  auto bad = verify_identity(inv, sampler, [&](Evaluator& ev) -> Rational {
    return ev.eval_necklace(neck("A^5"), Interpretation::Traceless) -
           Rational(5, 7) * ev.generator_value(0) * ev.generator_value(3);
  }, 20, 424242);
  CHECK_FALSE(bad.pass);
  CHECK(!bad.witness.empty());
}
