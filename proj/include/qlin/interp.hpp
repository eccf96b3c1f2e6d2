#pragma once

#include <memory>
#include <optional>

#include "qlin/poly.hpp"

namespace qlin {

/* Interpolation and multipoint evaluation.
 *
 * Small instances use Newton divided differences and per-point Horner;
 * large ones switch to a subproduct tree, where evaluation walks remainders
 * down the tree and interpolation combines weighted leaves back up.  The
 * division along the tree is by monic polynomials, done through power-series
 * inversion of the reversed divisor, so the whole pass stays within the
 * multiplication budget of the tree itself.
 */

inline constexpr size_t kFastInterpMin = 128;  // points; below this, Newton
inline constexpr size_t kFastDivMin = 32;      // degrees; below, schoolbook

// First k coefficients of a (truncation mod x^k).
inline Poly poly_truncate(const Poly& a, size_t k) {
  const FieldCtx& F = a.field();
  size_t n = std::min(k, a.coeff_count());
  std::vector<FieldElement> c;
  c.reserve(n);
  for (size_t i = 0; i < n; ++i) c.push_back(a.coeff(i));
  return Poly::from_coeffs(F, c);
}

// Coefficient reversal relative to degree k: x^k * a(1/x).
inline Poly poly_reverse(const Poly& a, size_t k) {
  const FieldCtx& F = a.field();
  std::vector<FieldElement> c(k + 1, FieldElement::zero(F));
  for (size_t i = 0; i < a.coeff_count() && i <= k; ++i)
    c[k - i] = a.coeff(i);
  return Poly::from_coeffs(F, c);
}

// Inverse of f as a power series mod x^k; f must have an invertible
// constant term.
inline Poly poly_series_inverse(const Poly& f, size_t k) {
  if (f.is_zero() || f.coeff(0).is_zero())
    throw DivisionByZero("series inverse of a non-unit");
  const FieldCtx& F = f.field();
  Poly g = Poly::constant(f.coeff(0).inv());
  size_t t = 1;
  while (t < k) {
    t = std::min(t * 2, k);
    Poly fg = poly_truncate(poly_mul(poly_truncate(f, t), g), t);
    Poly two_minus = poly_sub(poly_add(Poly::one(F), Poly::one(F)), fg);
    g = poly_truncate(poly_mul(g, two_minus), t);
  }
  return g;
}

// Division by a monic divisor via reversal; falls back to schoolbook for
// small operands.
inline std::pair<Poly, Poly> poly_divrem_monic(const Poly& a, const Poly& b) {
  detail::check_same_field(a, b);
  if (!b.is_monic()) throw NotMonic("divisor must be monic");
  int64_t da = a.degree(), db = b.degree();
  if (da < db) return {Poly::zero(a.field()), a};
  size_t qlen = size_t(da - db) + 1;
  if (size_t(db) < kFastDivMin || qlen < kFastDivMin) return poly_divrem(a, b);
  Poly ra = poly_reverse(a, size_t(da));
  Poly rb = poly_reverse(b, size_t(db));
  Poly rq = poly_truncate(poly_mul(ra, poly_series_inverse(rb, qlen)), qlen);
  Poly q = poly_reverse(rq, qlen - 1);
  Poly r = poly_sub(a, poly_mul(b, q));
  if (r.degree() >= db) throw Falsification("division remainder too large");
  return {q, r};
}

// Inverses of a list of nonzero elements with a single field inversion.
inline std::vector<FieldElement> batch_inverse(
    const std::vector<FieldElement>& a) {
  if (a.empty()) return {};
  const FieldCtx& F = a[0].field();
  std::vector<FieldElement> prefix(a.size(), FieldElement::zero(F));
  FieldElement run = FieldElement::one(F);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) throw DivisionByZero("batch inverse of zero");
    run = run * a[i];
    prefix[i] = run;
  }
  FieldElement inv_run = run.inv();
  std::vector<FieldElement> out(a.size(), FieldElement::zero(F));
  for (size_t i = a.size(); i-- > 1;) {
    out[i] = prefix[i - 1] * inv_run;
    inv_run = inv_run * a[i];
  }
  out[0] = inv_run;
  return out;
}

namespace detail {

struct SubTree {
  size_t lo, hi;  // point index range [lo, hi)
  Poly m;         // prod_{i in range} (x - points[i])
  std::unique_ptr<SubTree> left, right;
};

inline std::unique_ptr<SubTree> build_subtree(
    const std::vector<FieldElement>& pts, size_t lo, size_t hi) {
  auto node = std::make_unique<SubTree>();
  node->lo = lo;
  node->hi = hi;
  const FieldCtx& F = pts[lo].field();
  if (hi - lo == 1) {
    node->m = Poly::from_coeffs(F, {-pts[lo], FieldElement::one(F)});
    return node;
  }
  size_t mid = lo + (hi - lo) / 2;
  node->left = build_subtree(pts, lo, mid);
  node->right = build_subtree(pts, mid, hi);
  node->m = poly_mul(node->left->m, node->right->m);
  return node;
}

inline void eval_down(const SubTree& node, const Poly& f,
                      const std::vector<FieldElement>& pts,
                      std::vector<FieldElement>& out) {
  if (node.hi - node.lo <= kFastDivMin) {
    for (size_t i = node.lo; i < node.hi; ++i)
      out[i] = poly_eval(f, pts[i]);
    return;
  }
  eval_down(*node.left, poly_divrem_monic(f, node.left->m).second, pts, out);
  eval_down(*node.right, poly_divrem_monic(f, node.right->m).second, pts, out);
}

inline Poly interp_up(const SubTree& node,
                      const std::vector<FieldElement>& weighted) {
  if (node.hi - node.lo == 1) return Poly::constant(weighted[node.lo]);
  Poly fl = interp_up(*node.left, weighted);
  Poly fr = interp_up(*node.right, weighted);
  return poly_add(poly_mul(fl, node.right->m), poly_mul(fr, node.left->m));
}

}  // namespace detail

// Values of f at each point.
inline std::vector<FieldElement> multipoint_eval(
    const Poly& f, const std::vector<FieldElement>& pts) {
  if (pts.empty()) return {};
  const FieldCtx& F = pts[0].field();
  std::vector<FieldElement> out(pts.size(), FieldElement::zero(F));
  if (pts.size() < kFastInterpMin || f.coeff_count() < kFastInterpMin) {
    for (size_t i = 0; i < pts.size(); ++i) out[i] = poly_eval(f, pts[i]);
    return out;
  }
  auto tree = detail::build_subtree(pts, 0, pts.size());
  detail::eval_down(*tree, poly_divrem_monic(f, tree->m).second, pts, out);
  return out;
}

// Divided-difference interpolation; quadratic, for small point counts.
inline Poly newton_interpolate(const std::vector<FieldElement>& pts,
                               const std::vector<FieldElement>& vals) {
  const FieldCtx& F = pts[0].field();
  size_t n = pts.size();
  std::vector<FieldElement> c(vals);
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n; i-- > j;)
      c[i] = (c[i] - c[i - 1]) / (pts[i] - pts[i - j]);
  Poly p = Poly::constant(c[n - 1]);
  for (size_t i = n - 1; i-- > 0;) {
    Poly lin = Poly::from_coeffs(F, {-pts[i], FieldElement::one(F)});
    p = poly_add(poly_mul(p, lin), Poly::constant(c[i]));
  }
  return p;
}

// Tree interpolation: weights 1/m'(x_i), then one upward combine.
inline Poly fast_interpolate(const std::vector<FieldElement>& pts,
                             const std::vector<FieldElement>& vals) {
  auto tree = detail::build_subtree(pts, 0, pts.size());
  Poly dm = poly_derivative(tree->m);
  std::vector<FieldElement> dvals(pts.size(),
                                  FieldElement::zero(pts[0].field()));
  detail::eval_down(*tree, poly_divrem_monic(dm, tree->m).second, pts, dvals);
  std::vector<FieldElement> w = batch_inverse(dvals);
  std::vector<FieldElement> weighted(pts.size(),
                                     FieldElement::zero(pts[0].field()));
  for (size_t i = 0; i < pts.size(); ++i) weighted[i] = vals[i] * w[i];
  return detail::interp_up(*tree, weighted);
}

// The unique polynomial of degree < #points through the given data, with an
// optional monic-degree constraint.  With exactly monic_degree points the
// leading term is imposed and the rest interpolated; with monic_degree+1 or
// more points the plain interpolant must come out monic of that degree on
// its own, anything else is reported as a falsification.
inline Poly poly_interpolate(const std::vector<FieldElement>& pts,
                             const std::vector<FieldElement>& vals,
                             std::optional<size_t> monic_degree = {}) {
  if (pts.empty() || pts.size() != vals.size())
    throw TooFewPoints("point and value lists must be nonempty and equal");
  const FieldCtx& F = pts[0].field();
  for (const auto& x : pts)
    if (!(x.field() == F)) throw FieldMismatch("points in different fields");
  for (const auto& v : vals)
    if (!(v.field() == F)) throw FieldMismatch("values in different fields");
  {
    std::vector<const FieldElement*> sorted;
    sorted.reserve(pts.size());
    for (const auto& x : pts) sorted.push_back(&x);
    std::sort(sorted.begin(), sorted.end(),
              [&](const FieldElement* a, const FieldElement* b) {
                return F.e_cmp(a->data(), b->data()) < 0;
              });
    for (size_t i = 1; i < sorted.size(); ++i)
      if (F.e_cmp(sorted[i - 1]->data(), sorted[i]->data()) == 0)
        throw DuplicateAbscissa("repeated interpolation point");
  }
  if (monic_degree && pts.size() <= *monic_degree) {
    if (pts.size() < *monic_degree)
      throw TooFewPoints("monic interpolation needs degree many points");
    // impose the leading term, interpolate the remainder
    std::vector<FieldElement> adj(vals);
    for (size_t i = 0; i < pts.size(); ++i)
      adj[i] = adj[i] - pts[i].pow(uint64_t(*monic_degree));
    Poly low = poly_interpolate(pts, adj);
    return poly_add(low, Poly::monomial(FieldElement::one(F), *monic_degree));
  }
  Poly p = pts.size() < kFastInterpMin ? newton_interpolate(pts, vals)
                                       : fast_interpolate(pts, vals);
  if (monic_degree &&
      (p.degree() != int64_t(*monic_degree) || !p.is_monic()))
    throw Falsification("interpolant is not monic of the stated degree");
  return p;
}

}  // namespace qlin
