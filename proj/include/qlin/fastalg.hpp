#pragma once

#include "qlin/interp.hpp"
#include "qlin/linmap.hpp"
#include "qlin/parallel.hpp"
#include "qlin/recurrence.hpp"

namespace qlin {

/* Quasi-linear characteristic polynomials.
 *
 * The map's characteristic polynomials over the extension ladder form a
 * linear recurrence sequence of order at most 2^r over F_q[T].  The plan
 * bootstraps enough leading terms with the dense path, fits the minimal
 * recurrence once, and afterwards reaches any index by evaluating: pick a
 * field with more points than the target degree, push each point through
 * powers of the evaluated companion matrix, and interpolate the results.
 * Nothing along the fast path ever expands a far term symbolically.
 */

struct PipelinePlan {
  LinearizedPoly map;
  size_t bootstrap_count;            // 2^(r+1)
  std::vector<Poly> bootstrap_terms; // indices 1..bootstrap_count
  LinearRecurrence rec;
  bool parallel = false;
  unsigned threads = 0;  // 0 picks the hardware count
};

// Constant coefficient of the degree-n characteristic polynomial: a signed
// power of the leading coefficient's norm down to F_q.
inline FieldElement norm_coefficient(const LinearizedPoly& L, uint64_t ell) {
  if (ell == 0) throw InvalidInstance("extension index must be positive");
  const FieldCtx& G = L.ground();
  FieldElement n = norm(L.coeffs().back(), G).pow(ell);
  const uint64_t r = L.r(), m = L.m();
  uint64_t parity = (((r - 1) & 1) & (m & 1) & (ell & 1)) ^ (r & 1);
  return parity ? -n : n;
}

inline PipelinePlan make_plan(const LinearizedPoly& L, bool parallel = false,
                              unsigned threads = 0) {
  const uint32_t r = L.r();
  if (r > 20) throw DegreeTooLarge("bootstrap would be astronomically large");
  const size_t count = size_t(1) << (r + 1);
  std::vector<Poly> terms;
  terms.reserve(count);
  for (size_t i = 1; i <= count; ++i)
    terms.push_back(charpoly_direct(L, i));
  LinearRecurrence rec = fit_recurrence(terms, size_t(1) << r);
  rec.degree_bound = uint64_t(L.m()) << (r - 1);
  return PipelinePlan{L, count, std::move(terms), std::move(rec), parallel,
                      threads};
}

// Smallest context over the ground field with at least want elements.
inline FieldCtx eval_field_for(const FieldCtx& ground, uint64_t want) {
  const uint64_t q = *ground.cardinality();
  uint32_t s = 1;
  uint64_t card = q;
  while (card < want) {
    if (card > (uint64_t(1) << 62) / q)
      throw Unsupported("evaluation field would overflow");
    card *= q;
    ++s;
  }
  return s == 1 ? ground : extend_field(ground, s);
}

inline Poly fast_charpoly(const PipelinePlan& plan, uint64_t ell) {
  if (ell == 0) throw InvalidInstance("extension index must be positive");
  if (ell <= plan.bootstrap_count) return plan.bootstrap_terms[ell - 1];
  const FieldCtx& G = plan.map.ground();
  const uint64_t n = uint64_t(plan.map.m()) * ell;
  FieldCtx E = eval_field_for(G, n + 1);
  std::vector<FieldElement> pts = enumerate_elements(E, size_t(n + 1));
  std::vector<FieldElement> vals(pts.size(), FieldElement::zero(E));
  auto one_point = [&](size_t i) {
    vals[i] = term_at_point(plan.rec, pts[i], ell);
  };
  if (plan.parallel)
    parallel_for(pts.size(), plan.threads, one_point);
  else
    for (size_t i = 0; i < pts.size(); ++i) one_point(i);
  Poly pe = poly_interpolate(pts, vals);
  if (pe.degree() != int64_t(n) || !pe.is_monic())
    throw Falsification("reconstructed polynomial has the wrong shape");
  if (E == G) return pe;
  // every coefficient must already lie in the ground field
  std::vector<FieldElement> coeffs;
  coeffs.reserve(pe.coeff_count());
  for (size_t i = 0; i < pe.coeff_count(); ++i) {
    const uint64_t* span = pe.cp(i);
    for (size_t k = 1; k < E.elem_len(); ++k)
      if (span[k] != 0)
        throw Falsification("coefficient escapes the ground field");
    coeffs.push_back(FieldElement::from_code(G, span[0]));
  }
  return Poly::from_coeffs(G, coeffs);
}

inline Poly fast_charpoly(const LinearizedPoly& L, uint64_t ell,
                          bool parallel = false, unsigned threads = 0) {
  if (ell == 0) throw InvalidInstance("extension index must be positive");
  if (ell <= (uint64_t(1) << (L.r() + 1))) return charpoly_direct(L, ell);
  return fast_charpoly(make_plan(L, parallel, threads), ell);
}

/* The root-power operator: for monic P with roots a_i, the image under
 * index ell is the monic polynomial with roots a_i^ell.  Computed as the
 * outer-variable determinant of xI - A^ell for the companion matrix A,
 * expanded by permutations since the entries live in a polynomial ring.
 * Coefficients of P may themselves be polynomials.
 */

namespace detail {

using PolyMat = std::vector<std::vector<Poly>>;

inline PolyMat polymat_mul(const PolyMat& a, const PolyMat& b,
                           const FieldCtx& F) {
  const size_t n = a.size();
  PolyMat c(n, std::vector<Poly>(n, Poly::zero(F)));
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (a[i][k].is_zero()) continue;
      for (size_t j = 0; j < n; ++j) {
        if (b[k][j].is_zero()) continue;
        c[i][j] = poly_add(c[i][j], poly_mul(a[i][k], b[k][j]));
      }
    }
  return c;
}

inline PolyMat polymat_pow(PolyMat b, uint64_t e, const FieldCtx& F) {
  const size_t n = b.size();
  PolyMat r(n, std::vector<Poly>(n, Poly::zero(F)));
  for (size_t i = 0; i < n; ++i) r[i][i] = Poly::one(F);
  while (e) {
    if (e & 1) r = polymat_mul(r, b, F);
    e >>= 1;
    if (e) b = polymat_mul(b, b, F);
  }
  return r;
}

inline int perm_parity(const std::vector<size_t>& p) {
  int inv = 0;
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inv;
  return inv & 1;
}

// Companion of a monic outer polynomial given by its coefficient list
// p_0..p_r (p_r = 1): reversed negated coefficients across the first row,
// ones on the subdiagonal.
inline PolyMat companion_of_monic(const std::vector<Poly>& P,
                                  const FieldCtx& F) {
  const size_t r = P.size() - 1;
  PolyMat a(r, std::vector<Poly>(r, Poly::zero(F)));
  for (size_t j = 0; j < r; ++j) a[0][j] = poly_neg(P[r - 1 - j]);
  for (size_t i = 1; i < r; ++i) a[i][i - 1] = Poly::one(F);
  return a;
}

inline void check_outer_poly(const std::vector<Poly>& P) {
  if (P.size() < 2) throw DegreeMismatch("outer degree must be positive");
  const FieldCtx& F = P[0].field();
  for (const auto& c : P)
    if (!(c.field() == F))
      throw FieldMismatch("outer coefficients in different fields");
  if (!P.back().is_one()) throw NotMonic("outer polynomial must be monic");
  if (P.size() > 7)
    throw DegreeTooLarge("permutation expansion capped at outer degree 6");
}

}  // namespace detail

inline std::vector<Poly> eps_ell(const std::vector<Poly>& P, uint64_t ell) {
  detail::check_outer_poly(P);
  const FieldCtx& F = P[0].field();
  const size_t r = P.size() - 1;
  detail::PolyMat B =
      detail::polymat_pow(detail::companion_of_monic(P, F), ell, F);
  // det(xI - B) by permutation expansion; entries are linear in x
  std::vector<Poly> out(r + 1, Poly::zero(F));
  std::vector<size_t> perm(r);
  for (size_t i = 0; i < r; ++i) perm[i] = i;
  do {
    int par = detail::perm_parity(perm);
    // product over i of (delta * x - B[i][perm[i]]), tracked by x-degree
    std::vector<Poly> prod{Poly::one(F)};
    for (size_t i = 0; i < r; ++i) {
      const Poly& low = B[i][perm[i]];
      const bool diag = perm[i] == i;
      std::vector<Poly> nxt(prod.size() + (diag ? 1 : 0), Poly::zero(F));
      for (size_t k = 0; k < prod.size(); ++k) {
        if (!low.is_zero())
          nxt[k] = poly_sub(nxt[k], poly_mul(prod[k], low));
        if (diag) nxt[k + 1] = poly_add(nxt[k + 1], prod[k]);
      }
      prod = std::move(nxt);
    }
    for (size_t k = 0; k < prod.size(); ++k) {
      if (par)
        out[k] = poly_sub(out[k], prod[k]);
      else
        out[k] = poly_add(out[k], prod[k]);
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (!out.back().is_one())
    throw Falsification("root-power image lost monicity");
  return out;
}

// The scalar sequence det(I - A^ell), ell = 1..count; each value is the
// image polynomial evaluated at 1, and the whole sequence satisfies a
// linear recurrence of order at most 2^r.
inline std::vector<Poly> lrs_of_eps_values(const std::vector<Poly>& P,
                                           size_t count) {
  detail::check_outer_poly(P);
  const FieldCtx& F = P[0].field();
  const size_t r = P.size() - 1;
  detail::PolyMat A = detail::companion_of_monic(P, F);
  detail::PolyMat B = A;
  std::vector<Poly> out;
  out.reserve(count);
  std::vector<size_t> perm(r);
  for (size_t ell = 1; ell <= count; ++ell) {
    for (size_t i = 0; i < r; ++i) perm[i] = i;
    Poly det = Poly::zero(F);
    do {
      int par = detail::perm_parity(perm);
      Poly prod = Poly::one(F);
      for (size_t i = 0; i < r && !prod.is_zero(); ++i) {
        Poly entry = poly_neg(B[i][perm[i]]);
        if (perm[i] == i) entry = poly_add(entry, Poly::one(F));
        prod = poly_mul(prod, entry);
      }
      det = par ? poly_sub(det, prod) : poly_add(det, prod);
    } while (std::next_permutation(perm.begin(), perm.end()));
    out.push_back(std::move(det));
    if (ell < count) B = detail::polymat_mul(B, A, F);
  }
  return out;
}

}  // namespace qlin
