#pragma once

#include "qlin/embed.hpp"
#include "qlin/matrix.hpp"

namespace qlin {

/* A linearized polynomial sum t_i Z^(q^i), i = 0..r, with coefficients in an
 * extension of the ground field F_q.  It acts F_q-linearly on every further
 * extension; the matrix of that action on F_{q^n}, taken in the power basis
 * of the canonical generator, is assembled column by column from Frobenius
 * powers of the generator.
 */

class LinearizedPoly {
 public:
  // coeffs holds t_0..t_r over F_{q^m}; ground is F_q.
  LinearizedPoly(FieldCtx ground, std::vector<FieldElement> coeffs)
      : ground_(std::move(ground)), t_(std::move(coeffs)) {
    if (t_.size() < 2)
      throw InvalidInstance("need degree at least q (two coefficients)");
    coeff_field_ = t_[0].field();
    for (const auto& c : t_)
      if (!(c.field() == coeff_field_))
        throw FieldMismatch("coefficients in different fields");
    if (!(coeff_field_ == ground_)) {
      if (coeff_field_.is_prime_field() ||
          !(coeff_field_.base_field() == ground_))
        throw InvalidInstance(
            "coefficient field must be the ground field or a direct "
            "extension of it");
    }
    if (t_.back().is_zero())
      throw InvalidInstance("leading coefficient is zero");
    if (!ground_.cardinality())
      throw Unsupported("ground field cardinality exceeds word size");
  }

  const FieldCtx& ground() const { return ground_; }
  const FieldCtx& coeff_field() const { return coeff_field_; }
  uint32_t r() const { return uint32_t(t_.size() - 1); }
  uint32_t m() const {
    return coeff_field_ == ground_ ? 1 : coeff_field_.degree();
  }
  uint64_t q() const { return *ground_.cardinality(); }
  const std::vector<FieldElement>& coeffs() const { return t_; }

  // Evaluate the map at a point of any field containing the coefficients'
  // scope: sum of embedded t_i times x^(q^i).
  FieldElement apply(const FieldElement& x) const {
    const FieldCtx& X = x.field();
    const SubfieldEmbedding& emb = get_embedding(coeff_field_, X);
    FieldElement acc = FieldElement::zero(X);
    FieldElement fr = x;
    const uint64_t Q = q();
    for (size_t i = 0; i < t_.size(); ++i) {
      if (!t_[i].is_zero()) acc = acc + emb.map(t_[i]) * fr;
      if (i + 1 < t_.size()) fr = fr.pow(Q);
    }
    return acc;
  }

 private:
  FieldCtx ground_, coeff_field_;
  std::vector<FieldElement> t_;
};

// Matrix over F_q of the action on F_{q^(m*l)}, in the power basis of the
// canonical generator.
inline DenseMatrix matrix_of(const LinearizedPoly& L, uint64_t ell) {
  if (ell == 0) throw InvalidInstance("extension index must be positive");
  const FieldCtx& G = L.ground();
  const uint64_t n64 = uint64_t(L.m()) * ell;
  if (n64 > (1u << 20)) throw DegreeTooLarge("matrix dimension too large");
  const size_t n = size_t(n64);
  FieldCtx F = extend_field(G, uint32_t(n));
  const SubfieldEmbedding& emb = get_embedding(L.coeff_field(), F);
  const uint64_t Q = L.q();

  FieldElement g(F);
  if (n == 1)
    g = FieldElement::one(F);  // the basis of a trivial extension
  else
    g.data()[1] = 1;

  // column j collects sum_i t_i * (g^(q^i))^j
  std::vector<FieldElement> cols(n, FieldElement::zero(F));
  FieldElement h = g;  // g^(q^i) for the current i
  for (size_t i = 0; i < L.coeffs().size(); ++i) {
    const FieldElement& ti = L.coeffs()[i];
    if (!ti.is_zero()) {
      FieldElement th = emb.map(ti);
      FieldElement u = FieldElement::one(F);
      for (size_t j = 0; j < n; ++j) {
        cols[j] = cols[j] + (th.is_one() ? u : th * u);
        if (j + 1 < n) u = u * h;
      }
    }
    if (i + 1 < L.coeffs().size()) h = h.pow(Q);
  }

  DenseMatrix mat(G, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t k = 0; k < n; ++k)
      G.e_decode(cols[j].codes()[k], mat.at(k, j));
  return mat;
}

// Characteristic polynomial of the action on F_{q^(m*l)}, computed from the
// dense matrix.  Cubic in m*l; serves as the reference path.
inline Poly charpoly_direct(const LinearizedPoly& L, uint64_t ell) {
  return charpoly_dense(matrix_of(L, ell));
}

}  // namespace qlin
