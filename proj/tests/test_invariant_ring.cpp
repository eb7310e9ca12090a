#include <catch2/catch_amalgamated.hpp>

#include <matinv/generators.hpp>
#include <matinv/numeric_oracle.hpp>

using namespace matinv;

namespace {
Necklace neck(const std::string& s) { return Necklace(parse_word(s)); }
}

TEST_CASE("generator tables: counts, degrees, names") {
  InvariantRing g2(2), g3(3), g4(4);
  CHECK(g2.count() == 3);   // traceless part of the five C22 generators
  CHECK(g3.count() == 9);
  CHECK(g4.count() == 30);
  CHECK_THROWS_AS(InvariantRing(5), std::invalid_argument);

  // n = 4 degree profile: 2,2,2, 3x4, 4x6, 5x2, 6x4, 7x2, 8x4, 9x4, 10
  std::map<int, int> profile;
  for (int i = 0; i < g4.count(); ++i) profile[g4.ring().degree(i)]++;
  std::map<int, int> expected{{2, 3}, {3, 4}, {4, 6}, {5, 2}, {6, 4}, {7, 2}, {8, 4}, {9, 4}, {10, 1}};
  CHECK(profile == expected);

  CHECK(g4.generator(29).name == "a32");
  CHECK(g4.ring().degree(29) == 10);
  CHECK(g4.generator(12).name == "a15");
  CHECK(g4.ring().bidegrees[12] == Bidegree{2, 2});
  CHECK(g4.generator(12).parts[0].coef == Rational(1, 2));

  // n = 3 aliases for the two commutator-trace generators
  CHECK(g3.generator(7).name == "g10");
  CHECK(g3.generator(7).alias == "a15");
  CHECK(g3.generator(8).name == "g11");
  CHECK(g3.generator(8).alias == "a21");
  CHECK(g3.ring().bidegrees[7] == Bidegree{2, 2});
  CHECK(g3.ring().bidegrees[8] == Bidegree{3, 3});
}

TEST_CASE("generator expansions: pinned examples") {
  InvariantRing g4(4);
  // a16 = Tr([A,B]^2 A) = -Tr(A^3B^2) + Tr(A^2BAB)
  const NecklaceSum& a16 = g4.expansion(13);
  REQUIRE(a16.terms().size() == 2);
  CHECK(a16.terms().at(neck("A^3B^2")) == -1);
  CHECK(a16.terms().at(neck("A^2BAB")) == 1);

  // a15 = (1/2)Tr([A,B]^2) = Tr(ABAB) - Tr(A^2B^2)
  const NecklaceSum& a15 = g4.expansion(12);
  REQUIRE(a15.terms().size() == 2);
  CHECK(a15.terms().at(neck("ABAB")) == 1);
  CHECK(a15.terms().at(neck("A^2B^2")) == -1);

  // a7 = Tr(A^2B), a single trace
  const NecklaceSum& a7 = g4.expansion(4);
  REQUIRE(a7.terms().size() == 1);
  CHECK(a7.terms().at(neck("A^2B")) == 1);
}

TEST_CASE("every expansion matches its defining matrix expression numerically") {
  for (int n : {2, 3, 4}) {
    InvariantRing inv(n);
    for (int t = 0; t < 10; ++t) {
      Evaluator ev(inv, sample_generic(n, {derive_seed(2024, static_cast<std::uint64_t>(t)), 7}));
      for (int i = 0; i < inv.count(); ++i) {
        Rational via_expansion(0);
        for (const auto& [v, c] : inv.expansion(i).terms())
          via_expansion += c * ev.eval_necklace(v, Interpretation::Traceless);
        CHECK(via_expansion == ev.generator_value(i));
      }
    }
  }
}

TEST_CASE("generator support: pinned membership") {
  InvariantRing g4(4);
  CHECK(g4.in_support(neck("ABAB")));
  CHECK(g4.in_support(neck("A^2B")));
  CHECK_FALSE(g4.in_support(neck("A^4B")));
}

TEST_CASE("graded basis: pinned examples") {
  InvariantRing g4(4);
  const GenRing& ring = g4.ring();
  auto vars = all_vars(ring);

  auto b21 = graded_basis(ring, {2, 1}, vars);
  REQUIRE(b21.size() == 1);
  CHECK(b21[0] == GenMonomial::var(4));  // a7

  auto b11 = graded_basis(ring, {1, 1}, vars);
  REQUIRE(b11.size() == 1);
  CHECK(b11[0] == GenMonomial::var(1));  // a4

  auto b22 = graded_basis(ring, {2, 2}, vars);
  REQUIRE(b22.size() == 4);
  std::set<GenMonomial> got(b22.begin(), b22.end());
  std::set<GenMonomial> expected{GenMonomial::var(9), GenMonomial::var(12),
                                 GenMonomial::var(0) * GenMonomial::var(2),
                                 GenMonomial::var(1, 2)};  // a12, a15, a3 a5, a4^2
  CHECK(got == expected);
  for (std::size_t i = 0; i + 1 < b22.size(); ++i)
    CHECK(ring.monomial_less(b22[i + 1], b22[i], OrderKind::PaperCustom));
}

TEST_CASE("paper-custom variable order: the three stated ties") {
  InvariantRing g4(4);
  const GenRing& ring = g4.ring();
  auto rank = [&](int display) { return ring.custom_order_rank[static_cast<std::size_t>(display - 3)]; };
  CHECK(rank(15) < rank(12));
  CHECK(rank(21) < rank(19));
  CHECK(rank(27) < rank(25));
  // bidegree-lex: a5 is least, a28 is greatest
  CHECK(rank(5) == 0);
  CHECK(rank(28) == ring.count - 1);
}

TEST_CASE("swap involution on generators: pinned images") {
  InvariantRing g4(4);
  const GenRing& ring = g4.ring();
  auto image = [&](int display) {
    return std::make_pair(ring.swap_image[static_cast<std::size_t>(display - 3)] + 3,
                          ring.swap_sign[static_cast<std::size_t>(display - 3)]);
  };
  CHECK(image(16) == std::make_pair(17, 1));
  CHECK(image(21) == std::make_pair(21, -1));
  CHECK(image(4) == std::make_pair(4, 1));
  CHECK(image(15) == std::make_pair(15, 1));
  CHECK(image(24) == std::make_pair(26, -1));
  CHECK(image(29) == std::make_pair(30, -1));
  CHECK(image(32) == std::make_pair(32, -1));

  // involution on random polynomials
  SplitMix64 rng(77);
  for (int t = 0; t < 40; ++t) {
    GenPoly p;
    for (int k = 0; k < 3; ++k) {
      GenMonomial m = GenMonomial::var(static_cast<int>(rng.next() % 30)) *
                      GenMonomial::var(static_cast<int>(rng.next() % 30));
      p.add(m, Rational(static_cast<long>(rng.next() % 9) - 4));
    }
    CHECK(swap_involution(ring, swap_involution(ring, p)) == p);
  }
}

TEST_CASE("swap involution agrees with evaluating on the swapped pair") {
  for (int n : {2, 3, 4}) {
    InvariantRing inv(n);
    for (int t = 0; t < 5; ++t) {
      RationalMatrixPair pair = sample_generic(n, {derive_seed(5150, static_cast<std::uint64_t>(t)), 6});
      RationalMatrixPair swapped{pair.Y, pair.X, pair.provenance};
      Evaluator ev(inv, pair), evs(inv, swapped);
      for (int i = 0; i < inv.count(); ++i) {
        GenPoly im = swap_involution(inv.ring(), GenPoly::variable(i));
        CHECK(evs.eval(im) == ev.generator_value(i));
      }
    }
  }
}

TEST_CASE("canonical form: primitive integer, positive leading coefficient") {
  InvariantRing g4(4);
  const GenRing& ring = g4.ring();
  GenPoly p = GenPoly::variable(13) * Rational(-2, 3) +
              GenPoly::variable(4) * GenPoly::variable(0) * Rational(4, 3);
  GenPoly c = canonical_form(ring, p);
  // scaled by 3/2 to primitive integers; a16 (idx 13) is the leading monomial
  // under paper-custom and must come out positive
  CHECK(c.terms().at(GenMonomial::var(13)) == 1);
  CHECK(c.terms().at(GenMonomial::var(4) * GenMonomial::var(0)) == -2);
  CHECK(canonical_form(ring, c) == c);
}
