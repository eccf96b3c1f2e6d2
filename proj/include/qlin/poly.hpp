#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <utility>

#include "qlin/field.hpp"

namespace qlin {

/* Dense univariate polynomials over a FieldCtx.
 *
 * Coefficients are stored little-endian as contiguous spans of base-field
 * codes (elem_len words per coefficient), with no trailing zero
 * coefficients; the zero polynomial has no coefficients at all.
 * Multiplication switches from schoolbook to Karatsuba above a size
 * threshold.  Division, gcd and evaluation are the plain exact-arithmetic
 * versions; the asymptotically faster division and interpolation built on
 * top of these live in interp.hpp.
 */

class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldCtx f) : f_(std::move(f)) {}

  static Poly zero(const FieldCtx& f) { return Poly(f); }
  static Poly one(const FieldCtx& f) {
    Poly r(f);
    r.resize_coeffs(1);
    r.f_.e_one(r.wp(0));
    return r;
  }
  static Poly x(const FieldCtx& f) {
    Poly r(f);
    r.resize_coeffs(2);
    r.f_.e_one(r.wp(1));
    return r;
  }
  static Poly constant(const FieldElement& c) {
    Poly r(c.field());
    if (c.is_zero()) return r;
    r.resize_coeffs(1);
    r.f_.e_copy(r.wp(0), c.data());
    return r;
  }
  static Poly monomial(const FieldElement& c, size_t k) {
    Poly r(c.field());
    if (c.is_zero()) return r;
    r.resize_coeffs(k + 1);
    r.f_.e_copy(r.wp(k), c.data());
    return r;
  }
  static Poly from_coeffs(const FieldCtx& f,
                          const std::vector<FieldElement>& cs) {
    Poly r(f);
    r.resize_coeffs(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) {
      if (!(cs[i].field() == f))
        throw FieldMismatch("coefficient from wrong field");
      f.e_copy(r.wp(i), cs[i].data());
    }
    r.trim();
    return r;
  }

  bool valid() const { return f_.valid(); }
  const FieldCtx& field() const { return f_; }
  size_t coeff_count() const { return nc_; }
  int64_t degree() const { return int64_t(nc_) - 1; }
  bool is_zero() const { return nc_ == 0; }
  bool is_one() const { return nc_ == 1 && f_.e_is_one(cp(0)); }

  const uint64_t* cp(size_t i) const { return d_.data() + i * f_.elem_len(); }
  uint64_t* wp(size_t i) { return d_.data() + i * f_.elem_len(); }

  FieldElement coeff(size_t i) const {
    FieldElement e(f_);
    if (i < nc_) f_.e_copy(e.data(), cp(i));
    return e;
  }
  FieldElement lead() const {
    if (nc_ == 0) return FieldElement::zero(f_);
    return coeff(nc_ - 1);
  }
  bool is_monic() const { return nc_ > 0 && f_.e_is_one(cp(nc_ - 1)); }

  void resize_coeffs(size_t n) {
    nc_ = n;
    d_.assign(n * f_.elem_len(), 0);
  }
  void trim() {
    while (nc_ > 0 && f_.e_is_zero(cp(nc_ - 1))) --nc_;
    d_.resize(nc_ * f_.elem_len());
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (!(a.f_ == b.f_) || a.nc_ != b.nc_) return false;
    return a.d_ == b.d_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  FieldCtx f_;
  size_t nc_ = 0;
  std::vector<uint64_t> d_;
};

namespace detail {

inline void check_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field()))
    throw FieldMismatch("polynomials over different fields");
}

// dst += a * b, schoolbook; dst holds na+nb-1 coefficient spans.
inline void sb_mul_acc(const FieldCtx& F, const uint64_t* a, size_t na,
                       const uint64_t* b, size_t nb, uint64_t* dst) {
  const size_t L = F.elem_len();
  if (F.is_prime_field()) {
    const uint64_t p = F.characteristic();
    for (size_t i = 0; i < na; ++i) {
      uint64_t ai = a[i];
      if (ai == 0) continue;
      for (size_t j = 0; j < nb; ++j) {
        uint64_t t = dst[i + j] + ai * b[j] % p;
        dst[i + j] = t >= p ? t - p : t;
      }
    }
    return;
  }
  std::vector<uint64_t> scr(3 * L);
  uint64_t* tmp = scr.data() + 2 * L;
  for (size_t i = 0; i < na; ++i) {
    const uint64_t* ai = a + i * L;
    if (F.e_is_zero(ai)) continue;
    for (size_t j = 0; j < nb; ++j) {
      const uint64_t* bj = b + j * L;
      if (F.e_is_zero(bj)) continue;
      F.e_mul(tmp, ai, bj, scr.data());
      F.e_add(dst + (i + j) * L, dst + (i + j) * L, tmp);
    }
  }
}

constexpr size_t kKaratsubaMin = 32;

// dst += a * b with Karatsuba above the threshold.
inline void kmul_acc(const FieldCtx& F, const uint64_t* a, size_t na,
                     const uint64_t* b, size_t nb, uint64_t* dst) {
  if (na == 0 || nb == 0) return;
  if (na < nb) {
    std::swap(a, b);
    std::swap(na, nb);
  }
  if (nb <= kKaratsubaMin) {
    sb_mul_acc(F, a, na, b, nb, dst);
    return;
  }
  const size_t L = F.elem_len();
  const size_t h = na / 2;
  if (h >= nb) {  // heavily unbalanced: cut the longer operand
    kmul_acc(F, a, h, b, nb, dst);
    kmul_acc(F, a + h * L, na - h, b, nb, dst + h * L);
    return;
  }
  const size_t n0a = h, n1a = na - h, n0b = h, n1b = nb - h;
  std::vector<uint64_t> z0((n0a + n0b - 1) * L, 0);
  std::vector<uint64_t> z2((n1a + n1b - 1) * L, 0);
  kmul_acc(F, a, n0a, b, n0b, z0.data());
  kmul_acc(F, a + h * L, n1a, b + h * L, n1b, z2.data());
  const size_t nsa = std::max(n0a, n1a), nsb = std::max(n0b, n1b);
  std::vector<uint64_t> sa(nsa * L, 0), sb(nsb * L, 0);
  for (size_t i = 0; i < n0a; ++i) F.e_copy(sa.data() + i * L, a + i * L);
  for (size_t i = 0; i < n1a; ++i)
    F.e_add(sa.data() + i * L, sa.data() + i * L, a + (h + i) * L);
  for (size_t i = 0; i < n0b; ++i) F.e_copy(sb.data() + i * L, b + i * L);
  for (size_t i = 0; i < n1b; ++i)
    F.e_add(sb.data() + i * L, sb.data() + i * L, b + (h + i) * L);
  std::vector<uint64_t> z1((nsa + nsb - 1) * L, 0);
  kmul_acc(F, sa.data(), nsa, sb.data(), nsb, z1.data());
  auto acc = [&](uint64_t* to, const uint64_t* from, size_t n, bool sub) {
    for (size_t i = 0; i < n; ++i)
      sub ? F.e_sub(to + i * L, to + i * L, from + i * L)
          : F.e_add(to + i * L, to + i * L, from + i * L);
  };
  acc(dst, z0.data(), n0a + n0b - 1, false);
  acc(dst + 2 * h * L, z2.data(), n1a + n1b - 1, false);
  acc(dst + h * L, z1.data(), nsa + nsb - 1, false);
  acc(dst + h * L, z0.data(), n0a + n0b - 1, true);
  acc(dst + h * L, z2.data(), n1a + n1b - 1, true);
}

}  // namespace detail

inline Poly poly_add(const Poly& a, const Poly& b) {
  detail::check_same_field(a, b);
  const FieldCtx& F = a.field();
  Poly r(F);
  r.resize_coeffs(std::max(a.coeff_count(), b.coeff_count()));
  for (size_t i = 0; i < r.coeff_count(); ++i) {
    if (i < a.coeff_count()) F.e_copy(r.wp(i), a.cp(i));
    if (i < b.coeff_count()) F.e_add(r.wp(i), r.wp(i), b.cp(i));
  }
  r.trim();
  return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  detail::check_same_field(a, b);
  const FieldCtx& F = a.field();
  Poly r(F);
  r.resize_coeffs(std::max(a.coeff_count(), b.coeff_count()));
  for (size_t i = 0; i < r.coeff_count(); ++i) {
    if (i < a.coeff_count()) F.e_copy(r.wp(i), a.cp(i));
    if (i < b.coeff_count()) F.e_sub(r.wp(i), r.wp(i), b.cp(i));
  }
  r.trim();
  return r;
}

inline Poly poly_neg(const Poly& a) {
  const FieldCtx& F = a.field();
  Poly r(F);
  r.resize_coeffs(a.coeff_count());
  for (size_t i = 0; i < a.coeff_count(); ++i) F.e_neg(r.wp(i), a.cp(i));
  return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  detail::check_same_field(a, b);
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  Poly r(a.field());
  r.resize_coeffs(a.coeff_count() + b.coeff_count() - 1);
  detail::kmul_acc(a.field(), a.cp(0), a.coeff_count(), b.cp(0),
                   b.coeff_count(), r.wp(0));
  r.trim();
  return r;
}

inline Poly poly_mul_scalar(const Poly& a, const FieldElement& c) {
  if (!(a.field() == c.field()))
    throw FieldMismatch("scalar from wrong field");
  if (c.is_zero() || a.is_zero()) return Poly::zero(a.field());
  const FieldCtx& F = a.field();
  Poly r(F);
  r.resize_coeffs(a.coeff_count());
  std::vector<uint64_t> scr(F.mul_scratch_len());
  for (size_t i = 0; i < a.coeff_count(); ++i)
    F.e_mul(r.wp(i), a.cp(i), c.data(), scr.data());
  r.trim();
  return r;
}

inline Poly poly_shift(const Poly& a, size_t k) {  // multiply by x^k
  if (a.is_zero()) return a;
  const FieldCtx& F = a.field();
  Poly r(F);
  r.resize_coeffs(a.coeff_count() + k);
  for (size_t i = 0; i < a.coeff_count(); ++i) F.e_copy(r.wp(i + k), a.cp(i));
  return r;
}

inline std::pair<Poly, Poly> poly_divrem(const Poly& a, const Poly& b) {
  detail::check_same_field(a, b);
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  const FieldCtx& F = a.field();
  if (a.degree() < b.degree()) return {Poly::zero(F), a};
  const size_t L = F.elem_len();
  const size_t db = size_t(b.degree());
  FieldElement il = b.lead().is_one() ? FieldElement::one(F) : b.lead().inv();
  Poly rem = a;
  Poly quo(F);
  quo.resize_coeffs(a.coeff_count() - db);
  std::vector<uint64_t> scr(F.mul_scratch_len());
  std::vector<uint64_t> c(L), t(L);
  for (size_t i = a.coeff_count(); i-- > db;) {
    F.e_mul(c.data(), rem.cp(i), il.data(), scr.data());
    if (F.e_is_zero(c.data())) continue;
    F.e_copy(quo.wp(i - db), c.data());
    for (size_t j = 0; j <= db; ++j) {
      if (F.e_is_zero(b.cp(j))) continue;
      F.e_mul(t.data(), c.data(), b.cp(j), scr.data());
      F.e_sub(rem.wp(i - db + j), rem.wp(i - db + j), t.data());
    }
  }
  quo.trim();
  rem.trim();
  return {quo, rem};
}

inline Poly poly_mod(const Poly& a, const Poly& b) {
  return poly_divrem(a, b).second;
}

// Exact division; throws Falsification if a remainder survives.
inline Poly poly_divexact(const Poly& a, const Poly& b) {
  auto qr = poly_divrem(a, b);
  if (!qr.second.is_zero())
    throw Falsification("expected exact polynomial division");
  return qr.first;
}

inline Poly poly_make_monic(const Poly& a) {
  if (a.is_zero() || a.is_monic()) return a;
  return poly_mul_scalar(a, a.lead().inv());
}

inline Poly poly_gcd(const Poly& a, const Poly& b) {
  detail::check_same_field(a, b);
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r2 = poly_mod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r2);
  }
  return poly_make_monic(r0);
}

inline Poly poly_derivative(const Poly& a) {
  const FieldCtx& F = a.field();
  if (a.coeff_count() <= 1) return Poly::zero(F);
  Poly r(F);
  r.resize_coeffs(a.coeff_count() - 1);
  for (size_t i = 1; i < a.coeff_count(); ++i) {
    // i mod p is the base-field code of the integer i in any tower
    F.e_scale(r.wp(i - 1), a.cp(i), i % F.characteristic());
  }
  r.trim();
  return r;
}

/* Evaluation at x, where x lives in the same field or in an extension whose
 * tower contains the coefficient field (constant coefficients keep their
 * integer codes under such embeddings). */
inline FieldElement poly_eval(const Poly& f, const FieldElement& x) {
  const FieldCtx& F = f.field();
  const FieldCtx& E = x.field();
  if (f.is_zero()) return FieldElement::zero(E);
  std::vector<uint64_t> scr(E.mul_scratch_len());
  FieldElement acc(E);
  if (E == F) {
    for (size_t i = f.coeff_count(); i-- > 0;) {
      E.e_mul(acc.data(), acc.data(), x.data(), scr.data());
      E.e_add(acc.data(), acc.data(), f.cp(i));
    }
    return acc;
  }
  if (!E.tower_contains(F))
    throw NotInTower("evaluation point field does not contain coefficients");
  const FieldCtx Eb = E.base_field();
  for (size_t i = f.coeff_count(); i-- > 0;) {
    E.e_mul(acc.data(), acc.data(), x.data(), scr.data());
    uint64_t code = F.e_encode(f.cp(i));
    acc.data()[0] = Eb.c_add(acc.data()[0], code);
  }
  return acc;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f) {
  return poly_mod(poly_mul(a, b), f);
}

inline Poly poly_powmod(const Poly& a, uint64_t e, const Poly& f) {
  Poly acc = Poly::one(a.field());
  Poly b = poly_mod(a, f);
  while (e) {
    if (e & 1) acc = poly_mulmod(acc, b, f);
    b = poly_mulmod(b, b, f);
    e >>= 1;
  }
  return acc;
}

namespace detail {
inline std::vector<uint32_t> prime_factors_of(uint32_t n) {
  std::vector<uint32_t> out;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}
}  // namespace detail

/* Rabin's criterion: f of degree s over F_Q is irreducible iff
 * x^(Q^s) = x (mod f) and gcd(x^(Q^(s/t)) - x, f) = 1 for every prime t|s. */
inline bool is_irreducible(const Poly& f) {
  if (!f.is_monic()) throw NotMonic("irreducibility test input");
  if (f.degree() < 1) throw DegreeMismatch("irreducibility of a constant");
  const FieldCtx& B = f.field();
  auto card = B.cardinality();
  if (!card) throw Unsupported("coefficient field too large");
  const uint32_t s = uint32_t(f.degree());
  if (s == 1) return true;
  auto factors = detail::prime_factors_of(s);
  std::vector<uint32_t> checkpoints;
  for (uint32_t t : factors) checkpoints.push_back(s / t);
  std::sort(checkpoints.begin(), checkpoints.end());
  const Poly X = Poly::x(B);
  Poly z = poly_mod(X, f);
  size_t ci = 0;
  for (uint32_t u = 1; u <= s; ++u) {
    z = poly_powmod(z, *card, f);
    while (ci < checkpoints.size() && checkpoints[ci] == u) {
      Poly g = poly_gcd(poly_sub(z, X), f);
      if (g.degree() > 0) return false;
      ++ci;
    }
  }
  return z == poly_mod(X, f);
}

/* Lexicographically smallest monic irreducible of degree s over `base`,
 * ordering candidates by the integer code of (c_0,...,c_{s-1}).  The scan
 * rejects candidates with a factor of degree <= s/2 via the incremental
 * Frobenius ladder, aborting early on the first witness; that criterion is
 * equivalent to irreducibility for monic polynomials of degree s and agrees
 * with is_irreducible. */
inline Poly find_irreducible(const FieldCtx& base, uint32_t s) {
  if (s < 1) throw DegreeMismatch("degree must be positive");
  auto card = base.cardinality();
  if (!card) throw Unsupported("base field too large");
  if (s == 1) return Poly::x(base);

  static std::mutex mu;
  static std::map<std::pair<std::string, uint32_t>, std::vector<uint64_t>>
      memo;
  const std::pair<std::string, uint32_t> key{base.signature(), s};
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) {
      std::vector<FieldElement> cs;
      cs.reserve(s + 1);
      for (uint64_t code : it->second)
        cs.push_back(FieldElement::from_code(base, code));
      return Poly::from_coeffs(base, cs);
    }
  }

  const uint64_t Q = *card;
  std::vector<uint64_t> digits(s, 0);
  digits[0] = 1;  // c_0 = 0 would be divisible by x
  const Poly X = Poly::x(base);
  for (;;) {
    std::vector<FieldElement> cs;
    cs.reserve(s + 1);
    for (uint32_t i = 0; i < s; ++i)
      cs.push_back(FieldElement::from_code(base, digits[i]));
    cs.push_back(FieldElement::one(base));
    Poly f = Poly::from_coeffs(base, cs);
    bool reducible = false;
    Poly z = poly_mod(X, f);
    for (uint32_t k = 1; k <= s / 2; ++k) {
      z = poly_powmod(z, Q, f);
      Poly g = poly_gcd(poly_sub(z, X), f);
      if (g.degree() > 0) {
        reducible = true;
        break;
      }
    }
    if (!reducible) {
      std::vector<uint64_t> codes;
      codes.reserve(s + 1);
      for (uint32_t i = 0; i <= s; ++i) codes.push_back(f.coeff(i).code());
      std::lock_guard<std::mutex> lk(mu);
      memo.emplace(key, std::move(codes));
      return f;
    }
    // next candidate in canonical order
    uint32_t i = 0;
    for (; i < s; ++i) {
      if (++digits[i] < Q) break;
      digits[i] = 0;
    }
    if (i == s) throw Falsification("no irreducible polynomial found");
    if (digits[0] == 0 && s >= 2) digits[0] = 1;
  }
}

inline FieldCtx extend_field(const FieldCtx& base, uint32_t s,
                             const Poly& modulus) {
  if (!(modulus.field() == base))
    throw FieldMismatch("modulus over wrong field");
  if (modulus.degree() != int64_t(s))
    throw DegreeMismatch("modulus degree differs from extension degree");
  if (!modulus.is_monic()) throw NotMonic("extension modulus");
  if (!is_irreducible(modulus))
    throw NotIrreducible("extension modulus factors");
  std::vector<uint64_t> codes;
  codes.reserve(s + 1);
  for (uint32_t i = 0; i <= s; ++i) codes.push_back(modulus.coeff(i).code());
  return FieldCtx(detail::make_ext_impl(base.impl_ptr(), s, std::move(codes)));
}

inline FieldCtx extend_field(const FieldCtx& base, uint32_t s) {
  static std::mutex mu;
  static std::map<std::pair<std::string, uint32_t>,
                  std::shared_ptr<const detail::FieldImpl>>
      memo;
  const std::pair<std::string, uint32_t> key{base.signature(), s};
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return FieldCtx(it->second);
  }
  Poly f = find_irreducible(base, s);
  std::vector<uint64_t> codes;
  codes.reserve(s + 1);
  for (uint32_t i = 0; i <= s; ++i) codes.push_back(f.coeff(i).code());
  FieldCtx ctx(detail::make_ext_impl(base.impl_ptr(), s, std::move(codes)));
  std::lock_guard<std::mutex> lk(mu);
  memo.emplace(key, ctx.impl_ptr());
  return ctx;
}

// The defining modulus of an extension, as a polynomial over its base.
inline Poly field_modulus(const FieldCtx& ext) {
  const FieldCtx base = ext.base_field();
  const auto& codes = ext.modulus_codes();
  std::vector<FieldElement> cs;
  cs.reserve(codes.size());
  for (uint64_t c : codes) cs.push_back(FieldElement::from_code(base, c));
  return Poly::from_coeffs(base, cs);
}

// Textual form: coefficient encodings joined by ';', little-endian, no
// trailing zeros; the zero polynomial is the empty string.
inline std::string poly_to_string(const Poly& f) {
  std::string s;
  for (size_t i = 0; i < f.coeff_count(); ++i) {
    if (i) s += ';';
    s += element_to_string(f.coeff(i));
  }
  return s;
}

inline Poly parse_poly(const FieldCtx& f, const std::string& text) {
  if (text.empty()) return Poly::zero(f);
  std::vector<FieldElement> cs;
  size_t pos = 0;
  for (;;) {
    size_t semi = text.find(';', pos);
    std::string tok = text.substr(
        pos, semi == std::string::npos ? std::string::npos : semi - pos);
    cs.push_back(parse_element(f, tok));
    if (semi == std::string::npos) break;
    pos = semi + 1;
  }
  return Poly::from_coeffs(f, cs);
}

}  // namespace qlin
