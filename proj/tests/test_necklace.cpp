#include <catch2/catch_amalgamated.hpp>

#include <matinv/necklace.hpp>
#include <matinv/rational.hpp>

#include <set>

using namespace matinv;

namespace {

Necklace neck(const std::string& s) { return Necklace(parse_word(s)); }

// exhaustive rotation-closure oracle used to cross-check enumeration
std::set<std::string> rotation_closure_classes(Bidegree b) {
  std::set<std::string> out;
  int len = b.total();
  for (std::uint64_t mask = 0; mask < (1ULL << len); ++mask) {
    std::string w;
    int ones = 0;
    for (int i = 0; i < len; ++i) {
      bool bee = mask & (1ULL << i);
      ones += bee;
      w += bee ? 'B' : 'A';
    }
    if (ones != b.s) continue;
    std::string best = w;
    for (int i = 1; i < len; ++i) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
      if (w < best) best = w;
    }
    out.insert(best);
  }
  return out;
}

std::string random_word(SplitMix64& rng, int len) {
  std::string w;
  for (int i = 0; i < len; ++i) w += (rng.next() & 1) ? 'B' : 'A';
  return w;
}

}  // namespace

TEST_CASE("canonicalize picks the maximal rotation under A > B") {
  CHECK(neck("BAAAB").rep() == "AAABB");
  CHECK(neck("BABAA").rep() == "AABAB");
  CHECK(Necklace(Word("")).rep().empty());
  CHECK(render(neck("BAAAB")) == "A^3B^2");
  CHECK(render(neck("BABAA")) == "A^2BAB");
}

TEST_CASE("canonicalization is rotation invariant and idempotent") {
  SplitMix64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::string w = random_word(rng, 1 + static_cast<int>(rng.next() % 12));
    Necklace v{Word(w)};
    for (std::size_t i = 0; i < w.size(); ++i) {
      std::rotate(w.begin(), w.begin() + 1, w.end());
      CHECK(Necklace(Word(w)) == v);
    }
    CHECK(Necklace(v.word()) == v);
  }
}

TEST_CASE("deg-lex order: spec examples") {
  CHECK(compare_deglex(neck("AAB"), neck("AAA")) < 0);   // A^2B < A^3
  CHECK(compare_deglex(neck("BB"), neck("AAAAB")) < 0);  // B^2 < A^4B
  CHECK(compare_deglex(neck("AABB"), neck("AABB")) == 0);
}

TEST_CASE("deg-lex order is a strict total order") {
  SplitMix64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    Necklace a{Word(random_word(rng, 1 + static_cast<int>(rng.next() % 8)))};
    Necklace b{Word(random_word(rng, 1 + static_cast<int>(rng.next() % 8)))};
    Necklace c{Word(random_word(rng, 1 + static_cast<int>(rng.next() % 8)))};
    // trichotomy
    int cmp = (compare_deglex(a, b) < 0) + (compare_deglex(b, a) < 0) + (a == b);
    CHECK(cmp == 1);
    // transitivity
    if (compare_deglex(a, b) < 0 && compare_deglex(b, c) < 0) CHECK(compare_deglex(a, c) < 0);
  }
}

TEST_CASE("CH_n detection: spec examples") {
  CHECK(is_chn(neck("AAAAB"), 4));
  CHECK_FALSE(is_chn(neck("AAABB"), 4));
  CHECK(is_chn(neck("ABABABAB"), 4));
}

TEST_CASE("CH_n detection is rotation invariant") {
  SplitMix64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::string w = random_word(rng, 2 + static_cast<int>(rng.next() % 10));
    bool expected = is_chn(Necklace(Word(w)), 4);
    std::rotate(w.begin(), w.begin() + 1 + static_cast<long>(rng.next() % w.size()) % static_cast<long>(w.size()), w.end());
    CHECK(is_chn(Necklace(Word(w)), 4) == expected);
  }
}

TEST_CASE("CH decomposition: spec examples and reassembly") {
  auto d1 = find_ch_decomposition(neck("AAAAA"), 4);
  REQUIRE(d1.has_value());
  CHECK(d1->u.letters == "A");
  CHECK(d1->tail.letters == "A");

  auto d2 = find_ch_decomposition(neck("ABABABAB"), 4);
  REQUIRE(d2.has_value());
  CHECK(d2->u.letters == "AB");
  CHECK(d2->tail.empty());

  CHECK_FALSE(find_ch_decomposition(neck("AAABB"), 4).has_value());

  SplitMix64 rng(23);
  for (int n : {2, 3, 4}) {
    for (int trial = 0; trial < 200; ++trial) {
      Necklace v{Word(random_word(rng, 2 + static_cast<int>(rng.next() % 10)))};
      auto d = find_ch_decomposition(v, n);
      CHECK(d.has_value() == is_chn(v, n));
      if (d) {
        CHECK(d->u.size() * n + d->tail.size() == v.degree());
        std::string rebuilt;
        for (int k = 0; k < n; ++k) rebuilt += d->u.letters;
        rebuilt += d->tail.letters;
        CHECK(Necklace(Word(rebuilt)) == v);
      }
    }
  }
}

TEST_CASE("enumerate_necklaces: spec examples, order, and closure") {
  auto e1 = enumerate_necklaces({2, 1});
  REQUIRE(e1.size() == 1);
  CHECK(e1[0].rep() == "AAB");

  auto e2 = enumerate_necklaces({2, 2});
  REQUIRE(e2.size() == 2);
  CHECK(e2[0].rep() == "AABB");
  CHECK(e2[1].rep() == "ABAB");

  auto e3 = enumerate_necklaces({3, 2});
  REQUIRE(e3.size() == 2);
  CHECK(e3[0].rep() == "AAABB");
  CHECK(e3[1].rep() == "AABAB");

  for (int r = 0; r <= 5; ++r) {
    for (int s = 0; s <= 5; ++s) {
      if (r + s == 0) continue;
      auto got = enumerate_necklaces({r, s});
      auto expected = rotation_closure_classes({r, s});
      REQUIRE(got.size() == expected.size());
      std::set<std::string> reps;
      for (std::size_t i = 0; i < got.size(); ++i) {
        CHECK(got[i].bidegree() == Bidegree{r, s});
        reps.insert(got[i].rep());
        if (i + 1 < got.size()) CHECK(compare_deglex(got[i + 1], got[i]) < 0);
      }
      CHECK(reps == expected);
    }
  }
}

TEST_CASE("swap_letters: examples and involution") {
  CHECK(swap_letters(neck("AAAAB")).rep() == "ABBBB");
  CHECK(swap_letters(neck("ABAB")).rep() == "ABAB");
  CHECK(swap_letters(neck("AAABB")).rep() == "AABBB");
  SplitMix64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    Necklace v{Word(random_word(rng, 1 + static_cast<int>(rng.next() % 10)))};
    CHECK(swap_letters(swap_letters(v)) == v);
    Bidegree b = v.bidegree();
    CHECK(swap_letters(v).bidegree() == Bidegree{b.s, b.r});
  }
}

TEST_CASE("word grammar: parse and render") {
  CHECK(parse_word("A^4B").letters == "AAAAB");
  CHECK(parse_word("AABAB").letters == "AABAB");
  CHECK(parse_word("X^2Y").letters == "AAB");
  CHECK_THROWS_AS(parse_word("A^0B"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("AXB"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("AQB"), std::invalid_argument);
  CHECK_THROWS_AS(parse_word("A^"), std::invalid_argument);

  CHECK(render_word(Word("AAABB")) == "A^3B^2");
  CHECK(render_word(Word("AAB"), LetterMode::Generic) == "X^2Y");
  CHECK(render_word(Word("")) == "1");

  SplitMix64 rng(47);
  for (int trial = 0; trial < 200; ++trial) {
    Necklace v{Word(random_word(rng, 1 + static_cast<int>(rng.next() % 12)))};
    CHECK(Necklace(parse_word(render(v))) == v);
  }
}
