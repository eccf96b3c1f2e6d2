#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"

using namespace qlin;
using testutil::charpoly_perm;
using testutil::draw;
using testutil::random_element;
using testutil::random_matrix;
using testutil::random_nonzero;

TEST_CASE("dense characteristic polynomial matches permutation expansion") {
  FieldCtx f7 = make_prime_field(7);
  FieldCtx f4 = extend_field(make_prime_field(2), 2);
  uint64_t seed = 401;
  for (const FieldCtx& f : {f7, f4}) {
    std::mt19937_64 g(seed++);
    for (size_t n = 1; n <= 5; ++n) {
      for (int it = 0; it < 6; ++it) {
        DenseMatrix m = random_matrix(f, n, g);
        Poly got = charpoly_dense(m);
        REQUIRE(got == charpoly_perm(m));
        REQUIRE(got.is_monic());
        REQUIRE(got.degree() == int64_t(n));
      }
    }
  }
}

TEST_CASE("characteristic polynomials of structured matrices") {
  FieldCtx f5 = make_prime_field(5);
  const size_t n = 6;
  const Poly one = Poly::one(f5);
  const Poly xn = Poly::monomial(FieldElement::one(f5), n);

  DenseMatrix zero(f5, n);
  REQUIRE(charpoly_dense(zero) == xn);

  DenseMatrix id = DenseMatrix::identity(f5, n);
  Poly xm1 = parse_poly(f5, "4;1");
  Poly want = one;
  for (size_t i = 0; i < n; ++i) want = poly_mul(want, xm1);
  REQUIRE(charpoly_dense(id) == want);

  DenseMatrix cyc(f5, n);  // one long cycle
  for (size_t i = 0; i < n; ++i)
    cyc.set(i, (i + 1) % n, FieldElement::one(f5));
  REQUIRE(charpoly_dense(cyc) == poly_sub(xn, one));

  DenseMatrix shift(f5, n);  // nilpotent
  for (size_t i = 1; i < n; ++i)
    shift.set(i, i - 1, FieldElement::one(f5));
  REQUIRE(charpoly_dense(shift) == xn);

  // block diagonal: the factors multiply
  std::mt19937_64 g(31);
  DenseMatrix a = random_matrix(f5, 2, g);
  DenseMatrix b = random_matrix(f5, 3, g);
  DenseMatrix blk(f5, 5);
  for (size_t i = 0; i < 2; ++i)
    for (size_t j = 0; j < 2; ++j) blk.set(i, j, a.get(i, j));
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j) blk.set(2 + i, 2 + j, b.get(i, j));
  REQUIRE(charpoly_dense(blk) ==
          poly_mul(charpoly_perm(a), charpoly_perm(b)));
}

TEST_CASE("a hand-computed three by three case") {
  FieldCtx f7 = make_prime_field(7);
  DenseMatrix m(f7, 3);
  const uint64_t rows[3][3] = {{1, 2, 0}, {3, 0, 4}, {0, 5, 0}};
  for (size_t i = 0; i < 3; ++i)
    for (size_t j = 0; j < 3; ++j)
      m.set(i, j, FieldElement::from_code(f7, rows[i][j]));
  REQUIRE(poly_to_string(charpoly_dense(m)) == "6;2;6;1");
}

TEST_CASE("trace appears with opposite sign below the leading term") {
  FieldCtx f = extend_field(make_prime_field(3), 2);
  std::mt19937_64 g(47);
  for (int it = 0; it < 10; ++it) {
    size_t n = 2 + draw(g, 4);
    DenseMatrix m = random_matrix(f, n, g);
    FieldElement tr = FieldElement::zero(f);
    for (size_t i = 0; i < n; ++i) tr = tr + m.get(i, i);
    REQUIRE(charpoly_dense(m).coeff(n - 1) == -tr);
  }
}

TEST_CASE("every matrix annihilates its characteristic polynomial") {
  FieldCtx f5 = make_prime_field(5);
  std::mt19937_64 g(53);
  for (size_t n : {4, 5}) {
    for (int it = 0; it < 4; ++it) {
      DenseMatrix m = random_matrix(f5, n, g);
      Poly c = charpoly_dense(m);
      DenseMatrix acc(f5, n);
      for (size_t i = c.coeff_count(); i-- > 0;) {
        acc = mat_mul(acc, m);
        acc = mat_add(acc,
                      mat_scale(DenseMatrix::identity(f5, n), c.coeff(i)));
      }
      REQUIRE(acc == DenseMatrix(f5, n));
    }
  }
}

TEST_CASE("products in either order share a characteristic polynomial") {
  FieldCtx f9 = extend_field(make_prime_field(3), 2);
  std::mt19937_64 g(59);
  for (int it = 0; it < 6; ++it) {
    DenseMatrix a = random_matrix(f9, 4, g);
    DenseMatrix b = random_matrix(f9, 4, g);
    REQUIRE(charpoly_dense(mat_mul(a, b)) == charpoly_dense(mat_mul(b, a)));
  }
}

static std::vector<FieldElement> coords(const FieldCtx& G,
                                        const FieldElement& x) {
  std::vector<FieldElement> out;
  out.reserve(x.codes().size());
  for (uint64_t c : x.codes()) out.push_back(FieldElement::from_code(G, c));
  return out;
}

TEST_CASE("the matrix acts exactly as the map") {
  struct Case {
    uint64_t p, e, m, r, ell;
  };
  for (Case c : {Case{3, 1, 2, 2, 3}, Case{2, 2, 1, 1, 4},
                 Case{5, 1, 1, 2, 4}, Case{2, 1, 3, 1, 2}}) {
    FieldCtx prime = make_prime_field(c.p);
    FieldCtx G = c.e == 1 ? prime : extend_field(prime, uint32_t(c.e));
    FieldCtx C = c.m == 1 ? G : extend_field(G, uint32_t(c.m));
    std::mt19937_64 g(600 + c.p * 10 + c.m);
    std::vector<FieldElement> t;
    for (uint64_t i = 0; i + 1 <= c.r; ++i) t.push_back(random_element(C, g));
    t.push_back(random_nonzero(C, g));
    LinearizedPoly L(G, t);
    REQUIRE(L.r() == c.r);
    REQUIRE(L.m() == c.m);
    REQUIRE(L.q() == *G.cardinality());

    const size_t n = size_t(c.m * c.ell);
    DenseMatrix M = matrix_of(L, c.ell);
    REQUIRE(M.size() == n);
    FieldCtx F = extend_field(G, uint32_t(n));
    for (int it = 0; it < 8; ++it) {
      FieldElement x = random_element(F, g);
      FieldElement y = random_element(F, g);
      // matrix times coordinates == coordinates of the image
      REQUIRE(mat_vec(M, coords(G, x)) == coords(G, L.apply(x)));
      // additivity and scaling by ground constants
      REQUIRE(L.apply(x + y) == L.apply(x) + L.apply(y));
      uint64_t code = draw(g, *G.cardinality());
      FieldElement lam = FieldElement::from_code(F, code);
      REQUIRE(L.apply(lam * x) == lam * L.apply(x));
    }
  }
}

TEST_CASE("the power map yields the cyclotomic-style closed form") {
  for (uint64_t p : {2ull, 3ull}) {
    FieldCtx G = make_prime_field(p);
    LinearizedPoly L(G, {FieldElement::zero(G), FieldElement::one(G)});
    for (uint64_t ell : {4ull, 6ull}) {
      Poly c = charpoly_direct(L, ell);
      Poly want = poly_sub(Poly::monomial(FieldElement::one(G), size_t(ell)),
                           Poly::one(G));
      REQUIRE(c == want);
    }
  }
}

TEST_CASE("a map on the trivial extension scales by its coefficient sum") {
  FieldCtx f5 = make_prime_field(5);
  std::mt19937_64 g(71);
  for (int it = 0; it < 10; ++it) {
    FieldElement t0 = random_element(f5, g);
    FieldElement t1 = random_nonzero(f5, g);
    LinearizedPoly L(f5, {t0, t1});
    Poly c = charpoly_direct(L, 1);
    // on the ground field x^q = x, so the map is multiplication by t0 + t1
    Poly want = poly_sub(Poly::x(f5), Poly::constant(t0 + t1));
    REQUIRE(c == want);
  }
}

TEST_CASE("map construction is validated") {
  FieldCtx f3 = make_prime_field(3);
  FieldCtx f9 = extend_field(f3, 2);
  FieldCtx f81 = extend_field(f9, 2);
  FieldElement one3 = FieldElement::one(f3);
  FieldElement one9 = FieldElement::one(f9);

  REQUIRE_THROWS_AS(LinearizedPoly(f3, {one3}), InvalidInstance);
  REQUIRE_THROWS_AS(LinearizedPoly(f3, {one3, FieldElement::zero(f3)}),
                    InvalidInstance);
  REQUIRE_THROWS_AS(LinearizedPoly(f3, {one3, one9}), FieldMismatch);
  // two levels above the ground is not a direct extension
  REQUIRE_THROWS_AS(
      LinearizedPoly(f3, {FieldElement::one(f81), FieldElement::one(f81)}),
      InvalidInstance);

  LinearizedPoly ok(f3, {one9, one9});
  REQUIRE_THROWS_AS(matrix_of(ok, 0), InvalidInstance);
  REQUIRE_THROWS_AS(matrix_of(ok, (uint64_t(1) << 20)), DegreeTooLarge);
}
