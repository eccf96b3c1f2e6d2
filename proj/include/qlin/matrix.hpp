#pragma once

#include "qlin/poly.hpp"

namespace qlin {

/* Dense square matrices over a field context, stored as one flat code
 * buffer, row major, elem_len words per entry.  The characteristic
 * polynomial runs in cubic time: a similarity reduction to Hessenberg form
 * followed by the minor recurrence on that form.
 */

class DenseMatrix {
 public:
  DenseMatrix(FieldCtx f, size_t n)
      : f_(std::move(f)), n_(n), d_(n * n * f_.elem_len(), 0) {}

  static DenseMatrix identity(const FieldCtx& f, size_t n) {
    DenseMatrix m(f, n);
    for (size_t i = 0; i < n; ++i) f.e_one(m.at(i, i));
    return m;
  }

  const FieldCtx& field() const { return f_; }
  size_t size() const { return n_; }

  uint64_t* at(size_t i, size_t j) {
    return d_.data() + (i * n_ + j) * f_.elem_len();
  }
  const uint64_t* at(size_t i, size_t j) const {
    return d_.data() + (i * n_ + j) * f_.elem_len();
  }

  FieldElement get(size_t i, size_t j) const {
    FieldElement e(f_);
    f_.e_copy(e.data(), at(i, j));
    return e;
  }
  void set(size_t i, size_t j, const FieldElement& v) {
    if (!(v.field() == f_)) throw FieldMismatch("entry from another field");
    f_.e_copy(at(i, j), v.data());
  }

  bool operator==(const DenseMatrix& o) const {
    return f_ == o.f_ && n_ == o.n_ && d_ == o.d_;
  }

 private:
  FieldCtx f_;
  size_t n_;
  std::vector<uint64_t> d_;
};

namespace detail {

inline void check_same_shape(const DenseMatrix& a, const DenseMatrix& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatch("matrices over different fields");
  if (a.size() != b.size()) throw DegreeMismatch("matrix sizes differ");
}

}  // namespace detail

inline DenseMatrix mat_add(const DenseMatrix& a, const DenseMatrix& b) {
  detail::check_same_shape(a, b);
  const FieldCtx& F = a.field();
  DenseMatrix c(F, a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      F.e_add(c.at(i, j), a.at(i, j), b.at(i, j));
  return c;
}

inline DenseMatrix mat_scale(const DenseMatrix& a, const FieldElement& s) {
  if (!(s.field() == a.field())) throw FieldMismatch("scalar field differs");
  const FieldCtx& F = a.field();
  DenseMatrix c(F, a.size());
  std::vector<uint64_t> scr(F.mul_scratch_len());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j)
      F.e_mul(c.at(i, j), a.at(i, j), s.data(), scr.data());
  return c;
}

inline DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  detail::check_same_shape(a, b);
  const FieldCtx& F = a.field();
  const size_t n = a.size(), L = F.elem_len();
  DenseMatrix c(F, n);
  std::vector<uint64_t> t(L), scr(F.mul_scratch_len());
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (F.e_is_zero(a.at(i, k))) continue;
      for (size_t j = 0; j < n; ++j) {
        F.e_mul(t.data(), a.at(i, k), b.at(k, j), scr.data());
        F.e_add(c.at(i, j), c.at(i, j), t.data());
      }
    }
  return c;
}

inline std::vector<FieldElement> mat_vec(const DenseMatrix& a,
                                         const std::vector<FieldElement>& v) {
  if (v.size() != a.size()) throw DegreeMismatch("vector length mismatch");
  const FieldCtx& F = a.field();
  std::vector<uint64_t> t(F.elem_len()), scr(F.mul_scratch_len());
  std::vector<FieldElement> out(a.size(), FieldElement::zero(F));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) {
      F.e_mul(t.data(), a.at(i, j), v[j].data(), scr.data());
      F.e_add(out[i].data(), out[i].data(), t.data());
    }
  return out;
}

inline DenseMatrix mat_pow(const DenseMatrix& a, uint64_t e) {
  DenseMatrix r = DenseMatrix::identity(a.field(), a.size());
  DenseMatrix b = a;
  while (e) {
    if (e & 1) r = mat_mul(r, b);
    e >>= 1;
    if (e) b = mat_mul(b, b);
  }
  return r;
}

// Characteristic polynomial det(xI - M), monic of degree n.
inline Poly charpoly_dense(const DenseMatrix& m_in) {
  const FieldCtx& F = m_in.field();
  const size_t n = m_in.size();
  if (n == 0) return Poly::one(F);
  DenseMatrix h = m_in;
  const size_t L = F.elem_len();
  std::vector<uint64_t> u(L), t(L), scr(F.mul_scratch_len());

  // similarity reduction to Hessenberg form, pivoting on the subdiagonal
  for (size_t k = 0; k + 2 < n; ++k) {
    size_t piv = k + 1;
    while (piv < n && F.e_is_zero(h.at(piv, k))) ++piv;
    if (piv == n) continue;
    if (piv != k + 1) {
      for (size_t j = 0; j < n; ++j) {
        F.e_copy(t.data(), h.at(k + 1, j));
        F.e_copy(h.at(k + 1, j), h.at(piv, j));
        F.e_copy(h.at(piv, j), t.data());
      }
      for (size_t i = 0; i < n; ++i) {
        F.e_copy(t.data(), h.at(i, k + 1));
        F.e_copy(h.at(i, k + 1), h.at(i, piv));
        F.e_copy(h.at(i, piv), t.data());
      }
    }
    std::vector<uint64_t> pinv(L);
    F.e_inv(pinv.data(), h.at(k + 1, k));
    for (size_t i = k + 2; i < n; ++i) {
      if (F.e_is_zero(h.at(i, k))) continue;
      F.e_mul(u.data(), h.at(i, k), pinv.data(), scr.data());
      // row_i -= u * row_{k+1}; col_{k+1} += u * col_i  (a conjugation)
      for (size_t j = k; j < n; ++j) {
        F.e_mul(t.data(), u.data(), h.at(k + 1, j), scr.data());
        F.e_sub(h.at(i, j), h.at(i, j), t.data());
      }
      for (size_t r = 0; r < n; ++r) {
        F.e_mul(t.data(), u.data(), h.at(r, i), scr.data());
        F.e_add(h.at(r, k + 1), h.at(r, k + 1), t.data());
      }
    }
  }

  // minor recurrence on the Hessenberg form
  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::one(F));
  for (size_t m = 1; m <= n; ++m) {
    Poly lin = Poly::from_coeffs(F, {-h.get(m - 1, m - 1),
                                     FieldElement::one(F)});
    Poly cur = poly_mul(lin, p[m - 1]);
    FieldElement prod = FieldElement::one(F);
    for (size_t i = 1; i < m; ++i) {
      prod = prod * h.get(m - i, m - i - 1);
      if (prod.is_zero()) break;
      FieldElement c = h.get(m - 1 - i, m - 1) * prod;
      if (c.is_zero()) continue;
      cur = poly_sub(cur, poly_mul_scalar(p[m - 1 - i], c));
    }
    p.push_back(std::move(cur));
  }
  return p[n];
}

}  // namespace qlin
