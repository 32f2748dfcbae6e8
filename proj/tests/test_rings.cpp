#include <doctest.h>

#include "wittkit/error.hpp"
#include "wittkit/random.hpp"
#include "wittkit/ring.hpp"

using namespace wittkit;

namespace {

RingElement zi(int64_t v) { return RingElement::integer(RingHandle::integers(), BigInt(v)); }

RingPtr ab_ring() { return RingHandle::poly({"a", "b"}); }

RingElement random_element(RandomSource& rng, const RingPtr& r) {
  if (r->kind() == RingKind::Poly) {
    RingElement acc = RingElement::integer(r, BigInt(rng.between(-4, 4)));
    for (size_t v = 0; v < r->vars().size(); ++v) {
      RingElement term = RingElement::variable(r, static_cast<uint32_t>(v))
                             .pow(static_cast<uint64_t>(rng.between(0, 2)))
                             .times(BigInt(rng.between(-3, 3)));
      acc = acc + term;
    }
    return acc;
  }
  return RingElement::integer(r, BigInt(rng.between(-50, 50)));
}

}  // namespace

TEST_CASE("integer and modular arithmetic") {
  CHECK(zi(2) + zi(3) == zi(5));
  auto z4 = RingHandle::modular(4);
  auto m = [&](int64_t v) { return RingElement::integer(z4, BigInt(v)); };
  CHECK(m(3) * m(3) == m(1));
  CHECK(m(-1) == m(3));
  CHECK(m(2) + m(2) == m(0));
}

TEST_CASE("polynomial arithmetic and canonical text") {
  auto R = ab_ring();
  auto a = RingElement::variable(R, 0);
  auto b = RingElement::variable(R, 1);
  auto sq = (a + b).pow(2);
  CHECK(sq == a * a + (a * b).times(2) + b * b);
  CHECK(sq.to_text() == "a^2 + 2*a*b + b^2");
  CHECK((a - a).to_text() == "0");
  CHECK((zi(5) - zi(8)).to_text() == "-3");

  // terms sorted graded-lex, constants last
  auto p = a * a + b.times(2) + RingElement::integer(R, 7);
  CHECK(p.to_text() == "a^2 + 2*b + 7");
}

TEST_CASE("polynomial text parses back losslessly") {
  auto R = ab_ring();
  RandomSource rng(11);
  for (int i = 0; i < 50; ++i) {
    RingElement p = random_element(rng, R) * random_element(rng, R);
    CHECK(RingElement::parse(R, p.to_text()) == p);
  }
  CHECK(RingElement::parse(R, "(a + b)^2 - 2*a*b") ==
        RingElement::variable(R, 0).pow(2) + RingElement::variable(R, 1).pow(2));
  CHECK_THROWS_AS(RingElement::parse(R, "c + 1"), Error);
  CHECK_THROWS_AS(RingElement::parse(R, "a +"), Error);
}

TEST_CASE("div_exact") {
  CHECK(zi(6).div_exact(3) == zi(2));
  CHECK_THROWS_AS(zi(5).div_exact(2), Error);
  auto R = ab_ring();
  auto a = RingElement::variable(R, 0);
  auto b = RingElement::variable(R, 1);
  CHECK((a.times(2) + b.times(4)).div_exact(2) == a + b.times(2));
  CHECK_THROWS_AS((a.times(2) + b.times(3)).div_exact(2), Error);
  auto z4 = RingHandle::modular(4);
  CHECK_THROWS_AS(RingElement::integer(z4, 2).div_exact(2), Error);
}

TEST_CASE("frobenius lift") {
  CHECK(zi(7).frobenius_lift(3) == zi(7));
  auto R = ab_ring();
  auto a = RingElement::variable(R, 0);
  auto b = RingElement::variable(R, 1);
  CHECK((a + b).frobenius_lift(2) == a.pow(2) + b.pow(2));
  CHECK(RingElement::integer(R, 3).frobenius_lift(2) == RingElement::integer(R, 3));
  auto z4 = RingHandle::modular(4);
  CHECK_THROWS_AS(RingElement::integer(z4, 1).frobenius_lift(2), Error);

  // phi_p(x) == x^p mod p, and phi_p is a ring homomorphism
  RandomSource rng(5);
  for (int i = 0; i < 30; ++i) {
    RingElement x = random_element(rng, R);
    RingElement y = random_element(rng, R);
    for (int64_t p : {2, 3, 5}) {
      CHECK(x.frobenius_lift(p).congruent(x.pow(static_cast<uint64_t>(p)), p));
      CHECK((x * y).frobenius_lift(p) == x.frobenius_lift(p) * y.frobenius_lift(p));
      CHECK((x + y).frobenius_lift(p) == x.frobenius_lift(p) + y.frobenius_lift(p));
    }
  }
}

TEST_CASE("evaluate") {
  auto R = ab_ring();
  auto a = RingElement::variable(R, 0);
  auto b = RingElement::variable(R, 1);
  auto Z = RingHandle::integers();
  std::map<uint32_t, RingElement> binds{{0, zi(1)}, {1, zi(3)}};
  CHECK((a + b.times(2)).evaluate(Z, binds) == zi(7));

  auto z7 = RingHandle::modular(7);
  std::map<uint32_t, RingElement> mbinds{{0, RingElement::integer(z7, 3)}};
  CHECK(a.pow(2).evaluate(z7, mbinds) == RingElement::integer(z7, 2));

  CHECK(RingElement::integer(R, 5).evaluate(Z, {}) == zi(5));
  CHECK_THROWS_AS((a + b).evaluate(Z, binds = {{0, zi(1)}}), Error);

  // evaluation is a ring homomorphism in the polynomial argument
  RandomSource rng(17);
  for (int i = 0; i < 30; ++i) {
    RingElement p = random_element(rng, R);
    RingElement q = random_element(rng, R);
    std::map<uint32_t, RingElement> bs{{0, zi(rng.between(-5, 5))},
                                       {1, zi(rng.between(-5, 5))}};
    CHECK((p + q).evaluate(Z, bs) == p.evaluate(Z, bs) + q.evaluate(Z, bs));
    CHECK((p * q).evaluate(Z, bs) == p.evaluate(Z, bs) * q.evaluate(Z, bs));
  }
}

TEST_CASE("ring axioms on random triples") {
  RandomSource rng(23);
  std::vector<RingPtr> rings{RingHandle::integers(), RingHandle::modular(6), ab_ring()};
  for (const auto& r : rings) {
    for (int i = 0; i < 25; ++i) {
      RingElement x = random_element(rng, r);
      RingElement y = random_element(rng, r);
      RingElement z = random_element(rng, r);
      CHECK((x + y) + z == x + (y + z));
      CHECK(x + y == y + x);
      CHECK((x * y) * z == x * (y * z));
      CHECK(x * y == y * x);
      CHECK(x * (y + z) == x * y + x * z);
      CHECK(x + RingElement::zero(r) == x);
      CHECK(x * RingElement::one(r) == x);
      CHECK(x + (-x) == RingElement::zero(r));
    }
  }
}

TEST_CASE("handle mismatch is rejected") {
  auto z4 = RingHandle::modular(4);
  CHECK_THROWS_AS(zi(1) + RingElement::integer(z4, 1), Error);
}
