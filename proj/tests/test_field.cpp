#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace qlin;
using testutil::draw;
using testutil::random_element;
using testutil::random_nonzero;

TEST_CASE("prime field arithmetic matches integer arithmetic") {
  for (uint64_t p : {2ull, 7ull, 31ull, 2147483629ull}) {
    FieldCtx f = make_prime_field(p);
    std::mt19937_64 g(101 + p);
    for (int it = 0; it < 200; ++it) {
      uint64_t a = draw(g, p), b = draw(g, p);
      REQUIRE(f.c_add(a, b) == (a + b) % p);
      REQUIRE(f.c_sub(a, b) == (a + p - b) % p);
      REQUIRE(f.c_mul(a, b) == (a * b) % p);
      REQUIRE(f.c_neg(a) == (p - a) % p);
      if (b != 0) REQUIRE(f.c_mul(f.c_inv(b), b) == 1);
    }
    REQUIRE_THROWS_AS(f.c_inv(0), DivisionByZero);
  }
}

TEST_CASE("characteristic validation") {
  REQUIRE_THROWS_AS(make_prime_field(0), NotPrime);
  REQUIRE_THROWS_AS(make_prime_field(1), NotPrime);
  REQUIRE_THROWS_AS(make_prime_field(6), NotPrime);
  REQUIRE_THROWS_AS(make_prime_field(91), NotPrime);  // 7 * 13
  REQUIRE_THROWS_AS(make_prime_field(uint64_t(1) << 40), Unsupported);
}

static void check_axioms(const FieldCtx& f, uint64_t seed) {
  std::mt19937_64 g(seed);
  const FieldElement zero = FieldElement::zero(f);
  const FieldElement one = FieldElement::one(f);
  for (int it = 0; it < 40; ++it) {
    FieldElement a = random_element(f, g);
    FieldElement b = random_element(f, g);
    FieldElement c = random_element(f, g);
    REQUIRE(a + b == b + a);
    REQUIRE(a * b == b * a);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a + zero == a);
    REQUIRE(a * one == a);
    REQUIRE(a - a == zero);
    REQUIRE(a + (-a) == zero);
    if (!a.is_zero()) {
      REQUIRE(a * a.inv() == one);
      REQUIRE(a / a == one);
    }
  }
}

TEST_CASE("field axioms hold in extensions and towers") {
  FieldCtx f2 = make_prime_field(2);
  FieldCtx f3 = make_prime_field(3);
  FieldCtx f5 = make_prime_field(5);
  FieldCtx f7 = make_prime_field(7);
  check_axioms(extend_field(f2, 4), 11);   // table-backed
  check_axioms(extend_field(f3, 2), 12);
  check_axioms(extend_field(f7, 4), 13);   // above the table threshold
  check_axioms(extend_field(extend_field(f5, 2), 3), 14);  // two layers
}

TEST_CASE("every nonzero element of a quartic extension is invertible") {
  // Exhaustive over a field big enough to use the generic span path.
  FieldCtx f = extend_field(make_prime_field(7), 4);
  REQUIRE(f.cardinality() == 2401);
  const FieldElement one = FieldElement::one(f);
  for (uint64_t v = 1; v < 2401; ++v) {
    FieldElement a = FieldElement::from_code(f, v);
    REQUIRE(a * a.inv() == one);
  }
  REQUIRE_THROWS_AS(FieldElement::zero(f).inv(), DivisionByZero);
}

TEST_CASE("encode and decode are inverse bijections") {
  FieldCtx f = extend_field(make_prime_field(3), 3);
  REQUIRE(f.cardinality() == 27);
  for (uint64_t v = 0; v < 27; ++v) {
    FieldElement a = FieldElement::from_code(f, v);
    REQUIRE(a.code() == v);
  }
  // canonical comparison agrees with integer code order
  for (uint64_t v = 0; v + 1 < 27; ++v) {
    FieldElement a = FieldElement::from_code(f, v);
    FieldElement b = FieldElement::from_code(f, v + 1);
    REQUIRE(f.e_cmp(a.data(), b.data()) < 0);
    REQUIRE(f.e_cmp(b.data(), a.data()) > 0);
    REQUIRE(f.e_cmp(a.data(), a.data()) == 0);
  }
}

TEST_CASE("power map respects the group order") {
  FieldCtx f = extend_field(make_prime_field(7), 4);
  std::mt19937_64 g(77);
  for (int it = 0; it < 30; ++it) {
    FieldElement a = random_nonzero(f, g);
    REQUIRE(a.pow(2400).is_one());
    REQUIRE(a.pow(0).is_one());
    REQUIRE(a.pow(1) == a);
    REQUIRE(a.pow(5) == a * a * a * a * a);
  }
}

TEST_CASE("frobenius is a ring map fixing exactly the base field") {
  FieldCtx f2 = make_prime_field(2);
  FieldCtx f16 = extend_field(f2, 4);
  std::mt19937_64 g(5);
  for (int it = 0; it < 30; ++it) {
    FieldElement a = random_element(f16, g);
    FieldElement b = random_element(f16, g);
    REQUIRE(frobenius(a + b, 1, f2) ==
            frobenius(a, 1, f2) + frobenius(b, 1, f2));
    REQUIRE(frobenius(a * b, 1, f2) ==
            frobenius(a, 1, f2) * frobenius(b, 1, f2));
    REQUIRE(frobenius(a, 4, f2) == a);  // full orbit returns home
  }
  int fixed = 0;
  for (uint64_t v = 0; v < 16; ++v) {
    FieldElement a = FieldElement::from_code(f16, v);
    if (frobenius(a, 1, f2) == a) {
      ++fixed;
      REQUIRE(v < 2);  // only the prime-field constants
    }
  }
  REQUIRE(fixed == 2);

  // relative frobenius over an intermediate field
  FieldCtx f4 = extend_field(f2, 2);
  FieldCtx f4_3 = extend_field(f4, 3);
  std::mt19937_64 g2(6);
  for (int it = 0; it < 20; ++it) {
    FieldElement a = random_element(f4_3, g2);
    REQUIRE(frobenius(a, 3, f4) == a);
    REQUIRE(frobenius(a, 1, f4) == a.pow(4));
  }
}

TEST_CASE("norm is multiplicative and matches its exponent formula") {
  FieldCtx f3 = make_prime_field(3);
  FieldCtx f9 = extend_field(f3, 2);
  std::mt19937_64 g(9);
  const uint64_t k = (9 - 1) / (3 - 1);  // (Q^n - 1) / (Q - 1)
  for (int it = 0; it < 40; ++it) {
    FieldElement a = random_element(f9, g);
    FieldElement b = random_element(f9, g);
    REQUIRE(norm(a * b, f3) == norm(a, f3) * norm(b, f3));
    FieldElement p = a.pow(k);
    REQUIRE(p.codes()[0] == norm(a, f3).code());
    REQUIRE(p.codes()[1] == 0);
  }
  REQUIRE(norm(FieldElement::one(f9), f3).is_one());
  REQUIRE(norm(FieldElement::zero(f9), f3).is_zero());
}

TEST_CASE("tower navigation") {
  FieldCtx f5 = make_prime_field(5);
  FieldCtx f25 = extend_field(f5, 2);
  FieldCtx top = extend_field(f25, 3);
  REQUIRE(top.tower_contains(f25));
  REQUIRE(top.tower_contains(f5));
  REQUIRE(top.tower_contains(top));
  REQUIRE_FALSE(f25.tower_contains(top));
  REQUIRE(top.degree_over(f5) == 6);
  REQUIRE(top.degree_over(f25) == 3);
  REQUIRE(top.total_degree() == 6);
  REQUIRE(top.base_field() == f25);
  REQUIRE(top.cardinality() == 15625);
  FieldCtx f7 = make_prime_field(7);
  REQUIRE_FALSE(top.tower_contains(f7));
  REQUIRE_THROWS_AS(top.degree_over(f7), NotInTower);
}

TEST_CASE("element text form round-trips") {
  FieldCtx f = extend_field(make_prime_field(5), 3);
  std::mt19937_64 g(21);
  for (int it = 0; it < 30; ++it) {
    FieldElement a = random_element(f, g);
    REQUIRE(parse_element(f, element_to_string(a)) == a);
  }
  REQUIRE(parse_element(f, "4") ==
          FieldElement(f, std::vector<uint64_t>{4, 0, 0}));
  REQUIRE(parse_element(f, "1,2") ==
          FieldElement(f, std::vector<uint64_t>{1, 2, 0}));
  REQUIRE_THROWS_AS(parse_element(f, "1,2,3,4"), DegreeMismatch);
  REQUIRE_THROWS_AS(parse_element(f, "x"), ParseError);
  REQUIRE_THROWS_AS(parse_element(f, "1,,2"), ParseError);
  REQUIRE_THROWS_AS(parse_element(f, ""), ParseError);
  REQUIRE_THROWS_AS(parse_element(f, "7"), FieldMismatch);  // digit too big
}

TEST_CASE("element enumeration is bounded by the field size") {
  FieldCtx f2 = make_prime_field(2);
  auto got = enumerate_elements(f2, 2);
  REQUIRE(got.size() == 2);
  REQUIRE(got[0].is_zero());
  REQUIRE(got[1].is_one());
  REQUIRE_THROWS_AS(enumerate_elements(f2, 3), FieldTooSmall);
  FieldCtx f8 = extend_field(f2, 3);
  auto eight = enumerate_elements(f8, 8);
  for (uint64_t v = 0; v < 8; ++v) REQUIRE(eight[v].code() == v);
}

TEST_CASE("subfield embeddings are canonical ring maps") {
  FieldCtx f2 = make_prime_field(2);
  FieldCtx f4 = extend_field(f2, 2);
  FieldCtx f16 = extend_field(f2, 4);
  const SubfieldEmbedding& emb = get_embedding(f4, f16);

  // homomorphism, injectivity, and identity on the shared constants
  std::vector<FieldElement> images;
  for (uint64_t v = 0; v < 4; ++v) {
    FieldElement a = FieldElement::from_code(f4, v);
    FieldElement im = emb.map(a);
    for (const FieldElement& seen : images) REQUIRE_FALSE(seen == im);
    images.push_back(im);
  }
  REQUIRE(images[0].is_zero());
  REQUIRE(images[1].is_one());
  for (uint64_t v = 0; v < 4; ++v)
    for (uint64_t w = 0; w < 4; ++w) {
      FieldElement a = FieldElement::from_code(f4, v);
      FieldElement b = FieldElement::from_code(f4, w);
      REQUIRE(emb.map(a + b) == emb.map(a) + emb.map(b));
      REQUIRE(emb.map(a * b) == emb.map(a) * emb.map(b));
    }

  // the image of the generator is a root of the lifted defining modulus
  Poly mod = field_modulus(f4);
  FieldElement gen(f4);
  gen.data()[1] = 1;
  REQUIRE(poly_eval(mod, emb.map(gen)).is_zero());

  // repeated lookups hand back one cached object
  REQUIRE(&get_embedding(f4, f16) == &emb);

  FieldCtx f8 = extend_field(f2, 3);
  REQUIRE_THROWS_AS(get_embedding(f4, f8), NotInTower);

  // a tower member embeds by constant lifting
  FieldCtx top = extend_field(f4, 3);
  const SubfieldEmbedding& lift = get_embedding(f4, top);
  std::mt19937_64 g(15);
  for (int it = 0; it < 10; ++it) {
    FieldElement a = random_element(f4, g);
    FieldElement b = random_element(f4, g);
    REQUIRE(lift.map(a * b) == lift.map(a) * lift.map(b));
    REQUIRE(lift.map(a + b) == lift.map(a) + lift.map(b));
  }
}

TEST_CASE("mixed-field operations are rejected") {
  FieldCtx f3 = make_prime_field(3);
  FieldCtx f5 = make_prime_field(5);
  FieldElement a = FieldElement::one(f3);
  FieldElement b = FieldElement::one(f5);
  REQUIRE_THROWS_AS(a + b, FieldMismatch);
  REQUIRE_THROWS_AS(a * b, FieldMismatch);
  REQUIRE_FALSE(a == b);
}
