#pragma once

#include <array>
#include <cassert>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "qlin/error.hpp"

namespace qlin {

/* Finite field towers with explicit arithmetic contexts.
 *
 * A FieldCtx is either a prime field F_p or an extension of another context
 * by a monic irreducible modulus.  Contexts are immutable and cheap to copy;
 * two contexts with the same tower description define the same arithmetic
 * and compare equal.
 *
 * Elements are stored as coefficient sequences over the immediate base
 * field, little-endian, each coefficient held as the base field's canonical
 * integer code (for F_p the code is the residue in [0,p)).  The canonical
 * integer code of a whole element is the radix-|base| evaluation of that
 * sequence, which also fixes the canonical element order used everywhere.
 *
 * Two op layers exist.  "Code" ops act on canonical integer codes of this
 * field's elements (used when the field serves as coefficient domain of a
 * bigger structure).  "Span" ops act on raw coefficient arrays of length
 * elem_len() and carry the hot loops; they never allocate except where
 * documented.  FieldElement is a convenience wrapper over one span.
 */

class FieldCtx;

namespace detail {

constexpr uint64_t kMaxBaseCard = uint64_t(1) << 31;  // digit domain bound
constexpr uint64_t kCodeTableCard = 512;              // full-table threshold
constexpr size_t kGenericSpanMax = 64;                // stack buffers in code fallback

inline uint64_t sat_mul_u64(uint64_t a, uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a > UINT64_MAX / b) return UINT64_MAX;
  return a * b;
}

struct FieldImpl {
  uint64_t p = 0;                          // characteristic
  std::shared_ptr<const FieldImpl> base;   // null for a prime field
  uint32_t deg = 1;                        // degree over base
  std::vector<uint64_t> mod;               // monic modulus codes, size deg+1
  uint64_t base_card = 0;                  // |base| (== p for a prime field)
  uint64_t total_deg = 1;                  // degree over F_p
  std::optional<uint64_t> card;            // |field| when it fits in u64
  size_t elem_len = 1;
  std::string sig;

  // Lazily built code-op tables for this field (only when it acts as a
  // coefficient domain and is small enough; prime fields never need them).
  mutable std::once_flag table_once;
  mutable bool has_tables = false;
  mutable std::vector<uint32_t> tmul, tadd;
  mutable std::vector<uint32_t> tneg, tinv;

  bool prime() const { return base == nullptr; }

  // ---- code ops over the *base* digits (the span-op workhorses) ----

  uint64_t badd(uint64_t a, uint64_t b) const {
    if (prime()) {
      uint64_t s = a + b;
      return s >= p ? s - p : s;
    }
    return base->c_add(a, b);
  }
  uint64_t bsub(uint64_t a, uint64_t b) const {
    if (prime()) return a >= b ? a - b : a + p - b;
    return base->c_sub(a, b);
  }
  uint64_t bneg(uint64_t a) const {
    if (prime()) return a == 0 ? 0 : p - a;
    return base->c_neg(a);
  }
  uint64_t bmul(uint64_t a, uint64_t b) const {
    if (prime()) return (a * b) % p;
    return base->c_mul(a, b);
  }
  uint64_t binv(uint64_t a) const {
    if (prime()) return prime_inv(a, p);
    return base->c_inv(a);
  }

  static uint64_t prime_inv(uint64_t a, uint64_t pp) {
    if (a == 0) throw DivisionByZero("inverse of zero");
    int64_t t = 0, newt = 1;
    int64_t r = int64_t(pp), newr = int64_t(a % pp);
    while (newr != 0) {
      int64_t q = r / newr;
      int64_t tmp = t - q * newt;
      t = newt;
      newt = tmp;
      tmp = r - q * newr;
      r = newr;
      newr = tmp;
    }
    if (r != 1) throw DivisionByZero("not invertible");
    if (t < 0) t += int64_t(pp);
    return uint64_t(t);
  }

  // ---- code ops on this field's own elements ----

  void ensure_tables() const {
    std::call_once(table_once, [this] {
      if (prime() || !card || *card > kCodeTableCard) return;
      uint64_t n = *card;
      tadd.assign(n * n, 0);
      tmul.assign(n * n, 0);
      tneg.assign(n, 0);
      tinv.assign(n, 0);
      std::vector<uint64_t> a(elem_len), b(elem_len), r(elem_len);
      std::vector<uint64_t> scr(2 * elem_len);
      for (uint64_t i = 0; i < n; ++i) {
        e_decode(i, a.data());
        e_neg(r.data(), a.data());
        tneg[i] = uint32_t(e_encode(r.data()));
        for (uint64_t j = 0; j < n; ++j) {
          e_decode(j, b.data());
          e_add(r.data(), a.data(), b.data());
          tadd[i * n + j] = uint32_t(e_encode(r.data()));
          e_mul(r.data(), a.data(), b.data(), scr.data());
          tmul[i * n + j] = uint32_t(e_encode(r.data()));
        }
        if (i != 0) {
          e_decode(i, a.data());
          e_inv(r.data(), a.data());
          tinv[i] = uint32_t(e_encode(r.data()));
        }
      }
      has_tables = true;
    });
  }

  bool tables_usable() const {
    if (prime()) return false;
    if (!card || *card > kCodeTableCard) return false;
    ensure_tables();
    return has_tables;
  }

  uint64_t c_add(uint64_t a, uint64_t b) const {
    if (prime()) {
      uint64_t s = a + b;
      return s >= p ? s - p : s;
    }
    if (tables_usable()) return tadd[a * *card + b];
    return c_generic2(a, b, 0);
  }
  uint64_t c_sub(uint64_t a, uint64_t b) const {
    if (prime()) return a >= b ? a - b : a + p - b;
    if (tables_usable()) return tadd[a * *card + tneg[b]];
    return c_generic2(a, b, 1);
  }
  uint64_t c_mul(uint64_t a, uint64_t b) const {
    if (prime()) return (a * b) % p;
    if (tables_usable()) return tmul[a * *card + b];
    return c_generic2(a, b, 2);
  }
  uint64_t c_neg(uint64_t a) const {
    if (prime()) return a == 0 ? 0 : p - a;
    if (tables_usable()) return tneg[a];
    return c_generic1(a, 0);
  }
  uint64_t c_inv(uint64_t a) const {
    if (prime()) return prime_inv(a, p);
    if (tables_usable()) {
      if (a == 0) throw DivisionByZero("inverse of zero");
      return tinv[a];
    }
    return c_generic1(a, 1);
  }
  uint64_t c_pow(uint64_t a, uint64_t e) const {
    uint64_t acc = 1, b = a;
    while (e) {
      if (e & 1) acc = c_mul(acc, b);
      b = c_mul(b, b);
      e >>= 1;
    }
    return acc;
  }

  uint64_t c_generic2(uint64_t a, uint64_t b, int op) const {
    if (elem_len > kGenericSpanMax)
      throw Unsupported("field too large for code arithmetic");
    std::array<uint64_t, kGenericSpanMax> va{}, vb{}, vr{};
    std::array<uint64_t, 2 * kGenericSpanMax> scr{};
    e_decode(a, va.data());
    e_decode(b, vb.data());
    switch (op) {
      case 0: e_add(vr.data(), va.data(), vb.data()); break;
      case 1: e_sub(vr.data(), va.data(), vb.data()); break;
      default: e_mul(vr.data(), va.data(), vb.data(), scr.data()); break;
    }
    return e_encode(vr.data());
  }
  uint64_t c_generic1(uint64_t a, int op) const {
    if (elem_len > kGenericSpanMax)
      throw Unsupported("field too large for code arithmetic");
    std::array<uint64_t, kGenericSpanMax> va{}, vr{};
    e_decode(a, va.data());
    if (op == 0)
      e_neg(vr.data(), va.data());
    else
      e_inv(vr.data(), va.data());
    return e_encode(vr.data());
  }

  // ---- span ops: arrays of elem_len base codes ----

  void e_zero(uint64_t* d) const {
    for (size_t i = 0; i < elem_len; ++i) d[i] = 0;
  }
  void e_one(uint64_t* d) const {
    e_zero(d);
    d[0] = 1;
  }
  void e_copy(uint64_t* d, const uint64_t* a) const {
    for (size_t i = 0; i < elem_len; ++i) d[i] = a[i];
  }
  bool e_is_zero(const uint64_t* a) const {
    for (size_t i = 0; i < elem_len; ++i)
      if (a[i] != 0) return false;
    return true;
  }
  bool e_is_one(const uint64_t* a) const {
    if (a[0] != 1) return false;
    for (size_t i = 1; i < elem_len; ++i)
      if (a[i] != 0) return false;
    return true;
  }
  bool e_eq(const uint64_t* a, const uint64_t* b) const {
    for (size_t i = 0; i < elem_len; ++i)
      if (a[i] != b[i]) return false;
    return true;
  }
  // Canonical order: compare integer codes, i.e. highest digit first.
  int e_cmp(const uint64_t* a, const uint64_t* b) const {
    for (size_t i = elem_len; i-- > 0;) {
      if (a[i] < b[i]) return -1;
      if (a[i] > b[i]) return 1;
    }
    return 0;
  }
  void e_add(uint64_t* d, const uint64_t* a, const uint64_t* b) const {
    if (prime()) {
      uint64_t s = a[0] + b[0];
      d[0] = s >= p ? s - p : s;
      return;
    }
    for (size_t i = 0; i < elem_len; ++i) d[i] = badd(a[i], b[i]);
  }
  void e_sub(uint64_t* d, const uint64_t* a, const uint64_t* b) const {
    if (prime()) {
      d[0] = a[0] >= b[0] ? a[0] - b[0] : a[0] + p - b[0];
      return;
    }
    for (size_t i = 0; i < elem_len; ++i) d[i] = bsub(a[i], b[i]);
  }
  void e_neg(uint64_t* d, const uint64_t* a) const {
    for (size_t i = 0; i < elem_len; ++i) d[i] = bneg(a[i]);
  }
  // scr must hold 2*elem_len words and not alias d/a/b; d may alias a or b.
  void e_mul(uint64_t* d, const uint64_t* a, const uint64_t* b,
             uint64_t* scr) const {
    if (prime()) {
      d[0] = (a[0] * b[0]) % p;
      return;
    }
    const size_t L = elem_len;
    for (size_t i = 0; i < 2 * L; ++i) scr[i] = 0;
    for (size_t i = 0; i < L; ++i) {
      uint64_t ai = a[i];
      if (ai == 0) continue;
      if (base->prime()) {
        uint64_t bp = base->p;
        for (size_t j = 0; j < L; ++j) {
          uint64_t t = scr[i + j] + ai * b[j] % bp;
          scr[i + j] = t >= bp ? t - bp : t;
        }
      } else {
        for (size_t j = 0; j < L; ++j)
          scr[i + j] = badd(scr[i + j], bmul(ai, b[j]));
      }
    }
    reduce_in_place(scr, 2 * L - 1);
    for (size_t i = 0; i < L; ++i) d[i] = scr[i];
  }
  // Reduce a span of `n` digits modulo the field modulus, in place.
  void reduce_in_place(uint64_t* s, size_t n) const {
    const size_t L = elem_len;
    for (size_t i = n; i-- > L;) {
      uint64_t c = s[i];
      if (c == 0) continue;
      s[i] = 0;
      for (size_t j = 0; j < L; ++j) {
        if (mod[j] == 0) continue;
        s[i - L + j] = bsub(s[i - L + j], bmul(c, mod[j]));
      }
    }
  }
  void e_scale(uint64_t* d, const uint64_t* a, uint64_t code) const {
    // multiply by a base-field scalar given as code
    for (size_t i = 0; i < elem_len; ++i) d[i] = bmul(a[i], code);
  }
  void e_pow(uint64_t* d, const uint64_t* a, uint64_t e) const {
    std::vector<uint64_t> acc(elem_len), b(a, a + elem_len),
        scr(2 * elem_len);
    e_one(acc.data());
    while (e) {
      if (e & 1) e_mul(acc.data(), acc.data(), b.data(), scr.data());
      e_mul(b.data(), b.data(), b.data(), scr.data());
      e >>= 1;
    }
    e_copy(d, acc.data());
  }
  // Extended Euclid on coefficient spans; allocates, not for hot loops.
  void e_inv(uint64_t* d, const uint64_t* a) const {
    if (prime()) {
      d[0] = prime_inv(a[0], p);
      return;
    }
    if (e_is_zero(a)) throw DivisionByZero("inverse of zero");
    const size_t L = elem_len;
    // r0 = modulus (degree L), r1 = a; invariants t0*a = r0, t1*a = r1 (mod m)
    std::vector<uint64_t> r0(mod), r1(a, a + L), t0(L + 1, 0), t1(L + 1, 0);
    r1.resize(L + 1, 0);
    t1[0] = 1;
    auto degree_of = [&](const std::vector<uint64_t>& v) -> int {
      for (size_t i = v.size(); i-- > 0;)
        if (v[i] != 0) return int(i);
      return -1;
    };
    int d0 = degree_of(r0), d1 = degree_of(r1);
    while (d1 > 0) {
      // r0 -= lead(r0)/lead(r1) * x^(d0-d1) * r1, same for t
      while (d0 >= d1) {
        uint64_t q = bmul(r0[size_t(d0)], binv(r1[size_t(d1)]));
        size_t sh = size_t(d0 - d1);
        for (int i = 0; i <= d1; ++i)
          r0[sh + size_t(i)] = bsub(r0[sh + size_t(i)], bmul(q, r1[size_t(i)]));
        // t1 is not degree-bounded by d1; update its whole span
        for (size_t i = 0; i + sh < t0.size(); ++i)
          t0[sh + i] = bsub(t0[sh + i], bmul(q, t1[i]));
        d0 = degree_of(r0);
        if (d0 < 0) break;
      }
      std::swap(r0, r1);
      std::swap(t0, t1);
      std::swap(d0, d1);
    }
    if (d1 != 0) throw DivisionByZero("not invertible");
    uint64_t s = binv(r1[0]);
    for (size_t i = 0; i < L; ++i) d[i] = bmul(t1[i], s);
  }
  uint64_t e_encode(const uint64_t* a) const {
    if (prime()) return a[0];
    if (!card) throw Unsupported("element code does not fit in 64 bits");
    uint64_t v = 0;
    for (size_t i = elem_len; i-- > 0;) v = v * base_card + a[i];
    return v;
  }
  void e_decode(uint64_t v, uint64_t* d) const {
    if (prime()) {
      d[0] = v % p;
      return;
    }
    for (size_t i = 0; i < elem_len; ++i) {
      d[i] = v % base_card;
      v /= base_card;
    }
  }
};

inline std::shared_ptr<const FieldImpl> make_prime_impl(uint64_t p) {
  if (p < 2) throw NotPrime("characteristic must be at least 2");
  if (p >= kMaxBaseCard) throw Unsupported("characteristic too large");
  if (p % 2 == 0 && p != 2) throw NotPrime(std::to_string(p));
  for (uint64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) throw NotPrime(std::to_string(p));
  auto im = std::make_shared<FieldImpl>();
  im->p = p;
  im->base_card = p;
  im->card = p;
  im->sig = "F" + std::to_string(p);
  return im;
}

// Caller has already validated irreducibility of the modulus.
inline std::shared_ptr<const FieldImpl> make_ext_impl(
    std::shared_ptr<const FieldImpl> base, uint32_t deg,
    std::vector<uint64_t> mod_codes) {
  if (deg < 1) throw DegreeMismatch("extension degree must be positive");
  if (!base->card) throw Unsupported("base field too large to extend");
  if (*base->card >= kMaxBaseCard)
    throw Unsupported("base field too large to extend");
  if (mod_codes.size() != size_t(deg) + 1 || mod_codes.back() != 1)
    throw NotMonic("extension modulus");
  auto im = std::make_shared<FieldImpl>();
  im->p = base->p;
  im->base = base;
  im->deg = deg;
  im->mod = std::move(mod_codes);
  im->base_card = *base->card;
  im->total_deg = base->total_deg * deg;
  uint64_t c = 1;
  bool fits = true;
  for (uint32_t i = 0; i < deg; ++i) {
    c = sat_mul_u64(c, im->base_card);
    if (c == UINT64_MAX) {
      fits = false;
      break;
    }
  }
  if (fits) im->card = c;
  im->elem_len = deg;
  std::ostringstream os;
  os << base->sig << "/" << deg << "[";
  for (size_t i = 0; i < im->mod.size(); ++i)
    os << (i ? "," : "") << im->mod[i];
  os << "]";
  im->sig = os.str();
  return im;
}

}  // namespace detail

class FieldCtx {
 public:
  FieldCtx() = default;
  explicit FieldCtx(std::shared_ptr<const detail::FieldImpl> im)
      : im_(std::move(im)) {}

  bool valid() const { return im_ != nullptr; }
  const detail::FieldImpl& impl() const {
    if (!im_) throw Error("use of empty FieldCtx");
    return *im_;
  }
  const std::shared_ptr<const detail::FieldImpl>& impl_ptr() const {
    return im_;
  }

  uint64_t characteristic() const { return impl().p; }
  bool is_prime_field() const { return impl().prime(); }
  FieldCtx base_field() const {
    const auto& im = impl();
    if (im.prime()) throw NotInTower("prime field has no base field");
    return FieldCtx(im.base);
  }
  uint32_t degree() const { return impl().deg; }
  uint64_t total_degree() const { return impl().total_deg; }
  std::optional<uint64_t> cardinality() const { return impl().card; }
  bool cardinality_at_least(uint64_t c) const {
    const auto& im = impl();
    return !im.card || *im.card >= c;
  }
  uint64_t base_cardinality() const { return impl().base_card; }
  size_t elem_len() const { return impl().elem_len; }
  size_t mul_scratch_len() const { return 2 * impl().elem_len; }
  const std::vector<uint64_t>& modulus_codes() const {
    const auto& im = impl();
    if (im.prime()) throw NotInTower("prime field has no modulus");
    return im.mod;
  }
  const std::string& signature() const { return impl().sig; }

  friend bool operator==(const FieldCtx& a, const FieldCtx& b) {
    if (a.im_ == b.im_) return true;
    if (!a.im_ || !b.im_) return false;
    return a.im_->sig == b.im_->sig;
  }
  friend bool operator!=(const FieldCtx& a, const FieldCtx& b) {
    return !(a == b);
  }

  // Does `sub` occur in this field's tower (including this field itself)?
  bool tower_contains(const FieldCtx& sub) const {
    const detail::FieldImpl* cur = &impl();
    for (;;) {
      if (cur->sig == sub.impl().sig) return true;
      if (cur->prime()) return false;
      cur = cur->base.get();
    }
  }
  // Extension degree of this field over `sub`; throws NotInTower.
  uint64_t degree_over(const FieldCtx& sub) const {
    const detail::FieldImpl* cur = &impl();
    uint64_t d = 1;
    for (;;) {
      if (cur->sig == sub.impl().sig) return d;
      if (cur->prime()) throw NotInTower(sub.signature() + " not below " +
                                         signature());
      d *= cur->deg;
      cur = cur->base.get();
    }
  }

  // span ops (see FieldImpl for semantics)
  void e_zero(uint64_t* d) const { impl().e_zero(d); }
  void e_one(uint64_t* d) const { impl().e_one(d); }
  void e_copy(uint64_t* d, const uint64_t* a) const { impl().e_copy(d, a); }
  bool e_is_zero(const uint64_t* a) const { return impl().e_is_zero(a); }
  bool e_is_one(const uint64_t* a) const { return impl().e_is_one(a); }
  bool e_eq(const uint64_t* a, const uint64_t* b) const {
    return impl().e_eq(a, b);
  }
  int e_cmp(const uint64_t* a, const uint64_t* b) const {
    return impl().e_cmp(a, b);
  }
  void e_add(uint64_t* d, const uint64_t* a, const uint64_t* b) const {
    impl().e_add(d, a, b);
  }
  void e_sub(uint64_t* d, const uint64_t* a, const uint64_t* b) const {
    impl().e_sub(d, a, b);
  }
  void e_neg(uint64_t* d, const uint64_t* a) const { impl().e_neg(d, a); }
  void e_mul(uint64_t* d, const uint64_t* a, const uint64_t* b,
             uint64_t* scr) const {
    impl().e_mul(d, a, b, scr);
  }
  void e_scale(uint64_t* d, const uint64_t* a, uint64_t code) const {
    impl().e_scale(d, a, code);
  }
  void e_pow(uint64_t* d, const uint64_t* a, uint64_t e) const {
    impl().e_pow(d, a, e);
  }
  void e_inv(uint64_t* d, const uint64_t* a) const { impl().e_inv(d, a); }
  uint64_t e_encode(const uint64_t* a) const { return impl().e_encode(a); }
  void e_decode(uint64_t v, uint64_t* d) const { impl().e_decode(v, d); }

  uint64_t c_add(uint64_t a, uint64_t b) const { return impl().c_add(a, b); }
  uint64_t c_sub(uint64_t a, uint64_t b) const { return impl().c_sub(a, b); }
  uint64_t c_mul(uint64_t a, uint64_t b) const { return impl().c_mul(a, b); }
  uint64_t c_neg(uint64_t a) const { return impl().c_neg(a); }
  uint64_t c_inv(uint64_t a) const { return impl().c_inv(a); }
  uint64_t c_pow(uint64_t a, uint64_t e) const { return impl().c_pow(a, e); }

 private:
  std::shared_ptr<const detail::FieldImpl> im_;
};

inline FieldCtx make_prime_field(uint64_t p) {
  return FieldCtx(detail::make_prime_impl(p));
}

class FieldElement {
 public:
  FieldElement() = default;
  explicit FieldElement(FieldCtx f) : f_(std::move(f)), v_(f_.elem_len(), 0) {}
  FieldElement(FieldCtx f, std::vector<uint64_t> codes)
      : f_(std::move(f)), v_(std::move(codes)) {
    if (v_.size() != f_.elem_len())
      throw DegreeMismatch("coefficient count does not match field degree");
    for (uint64_t c : v_)
      if (c >= f_.base_cardinality())
        throw FieldMismatch("coefficient code out of range");
  }

  static FieldElement zero(const FieldCtx& f) { return FieldElement(f); }
  static FieldElement one(const FieldCtx& f) {
    FieldElement e(f);
    e.v_[0] = 1;
    return e;
  }
  static FieldElement from_code(const FieldCtx& f, uint64_t code) {
    FieldElement e(f);
    f.e_decode(code, e.v_.data());
    return e;
  }

  bool valid() const { return f_.valid(); }
  const FieldCtx& field() const { return f_; }
  const std::vector<uint64_t>& codes() const { return v_; }
  uint64_t* data() { return v_.data(); }
  const uint64_t* data() const { return v_.data(); }

  bool is_zero() const { return f_.e_is_zero(v_.data()); }
  bool is_one() const { return f_.e_is_one(v_.data()); }
  uint64_t code() const { return f_.e_encode(v_.data()); }

  FieldElement& check_same(const FieldElement& o) const {
    if (!(f_ == o.f_)) throw FieldMismatch("elements from different fields");
    return const_cast<FieldElement&>(o);
  }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    FieldElement r(a.f_);
    a.f_.e_add(r.v_.data(), a.v_.data(), b.v_.data());
    return r;
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    FieldElement r(a.f_);
    a.f_.e_sub(r.v_.data(), a.v_.data(), b.v_.data());
    return r;
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.check_same(b);
    FieldElement r(a.f_);
    std::vector<uint64_t> scr(a.f_.mul_scratch_len());
    a.f_.e_mul(r.v_.data(), a.v_.data(), b.v_.data(), scr.data());
    return r;
  }
  friend FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    return a * b.inv();
  }
  FieldElement operator-() const {
    FieldElement r(f_);
    f_.e_neg(r.v_.data(), v_.data());
    return r;
  }
  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    if (!(a.f_ == b.f_)) return false;
    return a.f_.e_eq(a.v_.data(), b.v_.data());
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) {
    return !(a == b);
  }

  FieldElement inv() const {
    FieldElement r(f_);
    f_.e_inv(r.v_.data(), v_.data());
    return r;
  }
  FieldElement pow(uint64_t e) const {
    FieldElement r(f_);
    f_.e_pow(r.v_.data(), v_.data(), e);
    return r;
  }

 private:
  FieldCtx f_;
  std::vector<uint64_t> v_;
};

// a^(Q^k) where Q = |over| and `over` lies in a's tower.
inline FieldElement frobenius(const FieldElement& a, uint64_t k,
                              const FieldCtx& over) {
  const FieldCtx& f = a.field();
  if (!f.tower_contains(over))
    throw NotInTower("frobenius base field not in element tower");
  auto card = over.cardinality();
  if (!card) throw Unsupported("frobenius base field too large");
  uint64_t n_rel = f.degree_over(over);
  k %= n_rel;
  FieldElement r = a;
  for (uint64_t i = 0; i < k; ++i) r = r.pow(*card);
  return r;
}

// Product of the conjugates of a over `down_to`; the result is checked to
// lie in `down_to` and returned as one of its elements.
inline FieldElement norm(const FieldElement& a, const FieldCtx& down_to) {
  const FieldCtx& f = a.field();
  if (!f.tower_contains(down_to))
    throw NotInTower("norm target not in element tower");
  auto card = down_to.cardinality();
  if (!card) throw Unsupported("norm target too large");
  uint64_t n_rel = f.degree_over(down_to);
  FieldElement acc = FieldElement::one(f);
  FieldElement b = a;
  for (uint64_t i = 0; i < n_rel; ++i) {
    acc = acc * b;
    b = b.pow(*card);
  }
  // descend the tower
  FieldElement cur = acc;
  while (!(cur.field() == down_to)) {
    const auto& v = cur.codes();
    for (size_t i = 1; i < v.size(); ++i)
      if (v[i] != 0)
        throw Falsification("norm result escaped the target subfield");
    cur = FieldElement::from_code(cur.field().base_field(), v[0]);
  }
  return cur;
}

// First `count` elements in canonical order.
inline std::vector<FieldElement> enumerate_elements(const FieldCtx& f,
                                                    uint64_t count) {
  if (!f.cardinality_at_least(count))
    throw FieldTooSmall("requested " + std::to_string(count) + " elements");
  std::vector<FieldElement> out;
  out.reserve(size_t(count));
  for (uint64_t v = 0; v < count; ++v)
    out.push_back(FieldElement::from_code(f, v));
  return out;
}

// Textual form: comma-separated little-endian coefficient codes ("3,0,1").
inline std::string element_to_string(const FieldElement& a) {
  std::string s;
  const auto& v = a.codes();
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(v[i]);
  }
  return s;
}

// Accepts up to elem_len coefficients, padding the tail with zeros.
inline FieldElement parse_element(const FieldCtx& f, const std::string& text) {
  std::vector<uint64_t> codes;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(0, pos + 1, "bad element coefficient '" + tok + "'");
    try {
      codes.push_back(std::stoull(tok));
    } catch (const std::out_of_range&) {
      throw ParseError(0, pos + 1, "element coefficient out of range");
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (codes.size() > f.elem_len())
    throw DegreeMismatch("too many coefficients for field");
  codes.resize(f.elem_len(), 0);
  return FieldElement(f, std::move(codes));
}

}  // namespace qlin
