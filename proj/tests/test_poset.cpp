#include <doctest.h>

#include <set>

#include "wittkit/config.hpp"
#include "wittkit/error.hpp"
#include "wittkit/poset.hpp"
#include "wittkit/random.hpp"

using namespace wittkit;

namespace {

RawPoset raw_of(const TruncationPoset& p) {
  RawPoset raw;
  for (Elem e = 0; e < static_cast<Elem>(p.size()); ++e)
    raw.elements.push_back(p.info(e));
  for (Elem e = 0; e < static_cast<Elem>(p.size()); ++e)
    for (Elem m : p.multiples(e))
      if (m != e) raw.divides.emplace_back(p.id(e), p.id(m));
  return raw;
}

}  // namespace

TEST_CASE("validate accepts the stock examples") {
  auto p = TruncationPoset::from_set({1, 2, 4});
  CHECK(p.size() == 3);
  CHECK(p.component_count() == 1);

  // gcd poset {(1,2),(2,4)}: norms 1 and 2
  auto g = TruncationPoset::gcd_poset({{2, 4}, {1, 2}}, std::nullopt);
  CHECK(g.size() == 2);
  CHECK(g.norm(0) == 1);
  CHECK(g.norm(1) == 2);
  CHECK(g.divides(0, 1));
}

TEST_CASE("validate reports the right axiom") {
  // norm 3 element with no norm-1 divisor listed
  RawPoset raw;
  raw.elements = {{1, 1, ""}, {2, 2, ""}, {3, 3, ""}};
  raw.divides = {{1, 2}};
  auto res = TruncationPoset::check(std::move(raw));
  auto* w = std::get_if<AxiomWitness>(&res);
  REQUIRE(w != nullptr);
  CHECK(w->axiom == 3);

  // norms that do not divide along the order
  RawPoset bad1;
  bad1.elements = {{1, 1, ""}, {2, 3, ""}};
  bad1.divides = {{1, 2}};
  // fine: 1 | 3. now break it with a second layer
  bad1.elements.push_back({3, 2, ""});
  bad1.divides.emplace_back(3, 2);  // norm 2 divides into norm 3
  auto res1 = TruncationPoset::check(std::move(bad1));
  auto* w1 = std::get_if<AxiomWitness>(&res1);
  REQUIRE(w1 != nullptr);
  CHECK(w1->axiom == 1);

  // two multiples of the same norm (axiom 4)
  RawPoset bad4;
  bad4.elements = {{1, 1, ""}, {2, 2, "x"}, {3, 2, "y"}};
  bad4.divides = {{1, 2}, {1, 3}};
  auto res4 = TruncationPoset::check(std::move(bad4));
  auto* w4 = std::get_if<AxiomWitness>(&res4);
  REQUIRE(w4 != nullptr);
  CHECK(w4->axiom == 4);

  // a relation cycle is not a partial order
  RawPoset cyc;
  cyc.elements = {{1, 1, ""}, {2, 1, ""}};
  cyc.divides = {{1, 2}, {2, 1}};
  auto resc = TruncationPoset::check(std::move(cyc));
  auto* wc = std::get_if<AxiomWitness>(&resc);
  REQUIRE(wc != nullptr);
  CHECK(wc->axiom == 0);
}

TEST_CASE("random mutation of a valid poset is rejected with a witness") {
  RandomSource rng(99);
  int rejected = 0;
  for (int i = 0; i < 60; ++i) {
    PosetPtr p = random_poset(rng, 7);
    if (p->size() < 2) continue;
    RawPoset raw = raw_of(*p);
    if (rng.one_in(2)) {
      // corrupt one norm
      auto& e = raw.elements[static_cast<size_t>(
          rng.below(static_cast<int64_t>(raw.elements.size())))];
      e.norm += rng.between(1, 3);
    } else if (!raw.divides.empty()) {
      // drop one relation pair (breaks closure-derived axioms)
      raw.divides.erase(raw.divides.begin() +
                        static_cast<long>(rng.below(
                            static_cast<int64_t>(raw.divides.size()))));
    }
    auto res = TruncationPoset::check(std::move(raw));
    if (auto* w = std::get_if<AxiomWitness>(&res)) {
      CHECK(w->axiom >= 0);
      CHECK(w->axiom <= 4);
      CHECK(!w->message.empty());
      ++rejected;
    }
    // a mutation can occasionally produce another valid poset; that is fine
  }
  CHECK(rejected > 20);
}

TEST_CASE("divisor_poset and from_set") {
  CHECK(TruncationPoset::divisor_poset(1).size() == 1);
  auto d6 = TruncationPoset::divisor_poset(6);
  CHECK(d6.values() == std::vector<int64_t>{1, 2, 3, 6});
  CHECK(TruncationPoset::divisor_poset(4).values() == std::vector<int64_t>{1, 2, 4});

  CHECK(TruncationPoset::from_set({1, 2, 3}).size() == 3);
  CHECK_THROWS_WITH_AS(TruncationPoset::from_set({2, 4}),
                       doctest::Contains("not division closed"), Error);
  CHECK(TruncationPoset::from_set({1}).size() == 1);
}

TEST_CASE("components split along norm-1 roots") {
  auto p = TruncationPoset::from_set({1, 2, 4});
  CHECK(p.component_count() == 1);

  auto a = TruncationPoset::from_set({1, 2});
  auto b = TruncationPoset::from_set({1, 3});
  auto co = TruncationPoset::coproduct(a, b);
  CHECK(co.poset.size() == 4);
  CHECK(co.poset.component_count() == 2);

  auto s13 = TruncationPoset::from_set({1, 3});
  CHECK(s13.component_count() == 1);

  // every component, read through its norms, is an ordinary truncation set
  RandomSource rng(3);
  for (int i = 0; i < 30; ++i) {
    PosetPtr p2 = random_poset(rng, 8);
    for (const auto& comp : p2->components()) {
      std::vector<int64_t> vals;
      for (Elem e : comp) vals.push_back(p2->norm(e));
      CHECK_NOTHROW(TruncationPoset::from_set(vals));
    }
  }
}

TEST_CASE("coproduct with the empty poset") {
  auto p = TruncationPoset::from_set({1, 2});
  auto e = TruncationPoset::empty();
  auto co = TruncationPoset::coproduct(p, e);
  CHECK(co.poset.size() == 2);
  CHECK(co.poset.isomorphic_as_labeled(p));
  auto co2 = TruncationPoset::coproduct(e, e);
  CHECK(co2.poset.is_empty());
}

TEST_CASE("scale_quotient") {
  auto s = TruncationPoset::from_set({1, 2, 3, 6});
  auto sq = s.scale_quotient(2);
  CHECK(sq.quotient.values() == std::vector<int64_t>{1, 3});
  auto s13 = TruncationPoset::from_set({1, 3});
  auto sq2 = s13.scale_quotient(2);
  CHECK(sq2.scaled.values() == std::vector<int64_t>{1, 2, 3, 6});
  auto s1 = TruncationPoset::from_set({1});
  auto sq3 = s1.scale_quotient(1);
  CHECK(sq3.quotient.values() == std::vector<int64_t>{1});
  CHECK(sq3.scaled.values() == std::vector<int64_t>{1});

  // a two-component poset has duplicate norm-1 elements, so it is not an
  // ordinary truncation set (the gcd chain {(1,2),(2,4)} is: it is isomorphic
  // to {1,2} through the norm)
  auto two = TruncationPoset::coproduct(TruncationPoset::from_set({1, 2}),
                                        TruncationPoset::from_set({1, 3}));
  CHECK_THROWS_AS(two.poset.scale_quotient(2), Error);
  CHECK_NOTHROW(
      TruncationPoset::gcd_poset({{1, 2}, {2, 4}}, std::nullopt).scale_quotient(2));
}

TEST_CASE("gcd_poset weights") {
  auto p = TruncationPoset::gcd_poset({{2}, {4}}, std::vector<int64_t>{2});
  CHECK(p.size() == 2);
  CHECK(p.norm(0) == 1);
  CHECK(p.norm(1) == 2);
  CHECK_THROWS_WITH_AS(TruncationPoset::gcd_poset({{3}}, std::vector<int64_t>{2}),
                       doctest::Contains("weight violation"), Error);
  CHECK_THROWS_WITH_AS(TruncationPoset::gcd_poset({{2, 4}}, std::nullopt),
                       doctest::Contains("not division closed"), Error);
}

TEST_CASE("word_poset block conventions") {
  // |x1x2x1x2| = 2 for blocks of 1 or 2, but 1 for blocks of 4
  for (int a : {1, 2}) {
    auto p = TruncationPoset::word_poset({"abab", "ab"}, 2, a);
    REQUIRE(p.size() == 2);
    CHECK(p.norm(1) == 2);  // the longer class has norm 2
  }
  auto p4 = TruncationPoset::word_poset({"abab"}, 2, 4);
  CHECK(p4.size() == 1);
  CHECK(p4.norm(0) == 1);

  auto chain = TruncationPoset::word_poset({"a", "aa"}, 1, 1);
  CHECK(chain.size() == 2);
  CHECK(chain.norm(1) == 2);

  CHECK_THROWS_WITH_AS(TruncationPoset::word_poset({"aba"}, 2, 2),
                       doctest::Contains("not divisible by block"), Error);
  CHECK_THROWS_WITH_AS(TruncationPoset::word_poset({"aaaa"}, 1, 2),
                       doctest::Contains("not division closed"), Error);

  // cyclic block equivalence: abab ~ baba when a = 1
  auto q = TruncationPoset::word_poset({"ab", "ba", "abab"}, 2, 1);
  CHECK(q.size() == 2);  // ab and ba collapse to one class
}

TEST_CASE("has_joins") {
  for (int64_t n = 1; n <= 100; ++n)
    CHECK(TruncationPoset::divisor_poset(n).has_joins());
  CHECK_FALSE(TruncationPoset::from_set({1, 2, 3}).has_joins());
  CHECK(TruncationPoset::from_set({1}).has_joins());

  // agreement with a brute-force check over all pairs
  RandomSource rng(7);
  for (int i = 0; i < 40; ++i) {
    PosetPtr p = random_poset(rng, 8);
    bool brute = true;
    for (Elem a = 0; a < static_cast<Elem>(p->size()) && brute; ++a)
      for (Elem b = 0; b < static_cast<Elem>(p->size()) && brute; ++b) {
        bool lower = false;
        for (Elem c = 0; c < static_cast<Elem>(p->size()); ++c)
          if (p->divides(c, a) && p->divides(c, b)) lower = true;
        if (!lower) continue;
        bool upper = false;
        for (Elem c = 0; c < static_cast<Elem>(p->size()); ++c)
          if (p->divides(a, c) && p->divides(b, c)) upper = true;
        if (!upper) brute = false;
      }
    CHECK(p->has_joins() == brute);
  }
}

TEST_CASE("size cap") {
  auto& cap = limits().max_poset_elements;
  int64_t old = cap;
  cap = 3;
  CHECK_THROWS_WITH_AS(TruncationPoset::divisor_poset(6),
                       doctest::Contains("size cap"), Error);
  cap = old;
  CHECK_NOTHROW(TruncationPoset::divisor_poset(6));
}
