#pragma once

#include <map>
#include <memory>
#include <mutex>

#include "qlin/poly.hpp"

namespace qlin {

/* Deterministic subfield embeddings.
 *
 * To embed F_{q^m} into a larger context whose tower contains F_q, the
 * canonical generator (the class of x) is sent to the smallest root, in
 * canonical element order, of the defining modulus inside the target field.
 * The root set is canonical, so the embedding does not depend on how the
 * roots were found; the splitting search itself is randomized but runs on a
 * fixed seed derived from the tower description, making every run identical.
 */

namespace detail {

inline uint64_t fnv1a(const void* data, size_t n, uint64_t h = 1469598103934665603ull) {
  const unsigned char* b = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < n; ++i) {
    h ^= b[i];
    h *= 1099511628211ull;
  }
  return h;
}

struct SplitMix64 {
  uint64_t s;
  explicit SplitMix64(uint64_t seed) : s(seed) {}
  uint64_t next() {
    uint64_t z = (s += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
};

inline FieldElement random_element(const FieldCtx& f, SplitMix64& rng) {
  std::vector<uint64_t> codes(f.elem_len());
  for (auto& c : codes) c = rng.next() % f.base_cardinality();
  return FieldElement(f, std::move(codes));
}

// y^((|E|-1)/2) mod f for odd characteristic, without materializing the
// exponent: (Q^n - 1)/2 = (1 + Q + ... + Q^(n-1)) * (Q-1)/2.
inline Poly pow_half_order(const Poly& y, const Poly& f) {
  const FieldCtx& E = y.field();
  uint64_t Q = E.is_prime_field() ? E.characteristic() : E.base_cardinality();
  uint64_t n = E.is_prime_field() ? 1 : E.degree();
  Poly u = poly_mod(y, f);
  Poly acc = u;
  for (uint64_t k = 1; k < n; ++k) {
    acc = poly_powmod(acc, Q, f);
    acc = poly_mulmod(acc, u, f);
  }
  return poly_powmod(acc, (Q - 1) / 2, f);
}

// All roots in E of a monic polynomial over E that splits into distinct
// linear factors there.
inline std::vector<FieldElement> split_roots(const Poly& f_in, uint64_t seed) {
  const FieldCtx& E = f_in.field();
  std::vector<FieldElement> roots;
  std::vector<Poly> stack{poly_make_monic(f_in)};
  SplitMix64 rng(seed);
  const bool even = E.characteristic() == 2;
  const uint64_t trace_len = even ? E.total_degree() : 0;
  int guard = 0;
  while (!stack.empty()) {
    Poly f = std::move(stack.back());
    stack.pop_back();
    if (f.degree() < 1) continue;
    if (f.degree() == 1) {
      FieldElement r = -f.coeff(0);
      roots.push_back(r);
      continue;
    }
    Poly g = Poly::zero(E);
    for (;;) {
      if (++guard > 4096)
        throw Falsification("root splitting failed to converge");
      FieldElement a = random_element(E, rng);
      if (even) {
        // absolute-trace map of a*x modulo f
        Poly u = poly_mod(poly_mul_scalar(Poly::x(E), a), f);
        Poly acc = u;
        for (uint64_t i = 1; i < trace_len; ++i) {
          u = poly_mulmod(u, u, f);
          acc = poly_add(acc, u);
        }
        g = poly_gcd(acc, f);
      } else {
        Poly y = poly_add(Poly::x(E), Poly::constant(a));
        Poly w = poly_sub(pow_half_order(y, f), Poly::one(E));
        g = poly_gcd(w, f);
      }
      if (g.degree() > 0 && g.degree() < f.degree()) break;
    }
    stack.push_back(g);
    stack.push_back(poly_divexact(f, g));
  }
  return roots;
}

}  // namespace detail

// The integer code of an element of a subfield names the same element in
// any context whose tower contains that subfield.
inline FieldElement embed_constant_code(const FieldCtx& dst, uint64_t code) {
  FieldElement e(dst);
  e.data()[0] = code;
  return e;
}

class SubfieldEmbedding {
 public:
  SubfieldEmbedding(FieldCtx src, FieldCtx dst)
      : src_(std::move(src)), dst_(std::move(dst)) {
    if (dst_.tower_contains(src_)) {
      constant_ = true;
      return;
    }
    if (src_.is_prime_field())
      throw NotInTower("prime field missing from target tower");
    const FieldCtx ground = src_.base_field();
    if (!dst_.tower_contains(ground))
      throw NotInTower("source base field missing from target tower");
    if (dst_.degree_over(ground) % src_.degree() != 0)
      throw NotInTower("source degree does not divide target degree");
    // lift the defining modulus into dst and take its smallest root
    const Poly mu = field_modulus(src_);
    std::vector<FieldElement> lifted;
    lifted.reserve(mu.coeff_count());
    for (size_t i = 0; i < mu.coeff_count(); ++i)
      lifted.push_back(embed_constant_code(dst_, mu.coeff(i).code()));
    Poly mu_dst = Poly::from_coeffs(dst_, lifted);
    uint64_t seed = detail::fnv1a(dst_.signature().data(),
                                  dst_.signature().size());
    seed = detail::fnv1a(src_.signature().data(), src_.signature().size(),
                         seed);
    std::vector<FieldElement> roots = detail::split_roots(mu_dst, seed);
    if (roots.size() != size_t(src_.degree()))
      throw Falsification("modulus did not split in the target field");
    const FieldElement* best = &roots[0];
    for (const auto& r : roots)
      if (dst_.e_cmp(r.data(), best->data()) < 0) best = &r;
    gen_image_ = *best;
    basis_images_.push_back(FieldElement::one(dst_));
    for (uint32_t j = 1; j < src_.degree(); ++j)
      basis_images_.push_back(basis_images_.back() * gen_image_);
  }

  const FieldCtx& src() const { return src_; }
  const FieldCtx& dst() const { return dst_; }

  FieldElement map(const FieldElement& a) const {
    if (!(a.field() == src_)) throw FieldMismatch("element not in source field");
    if (constant_) return embed_constant_code(dst_, a.code());
    FieldElement acc(dst_);
    std::vector<uint64_t> t(dst_.elem_len());
    const auto& digits = a.codes();
    for (size_t j = 0; j < digits.size(); ++j) {
      if (digits[j] == 0) continue;
      dst_.e_scale(t.data(), basis_images_[j].data(), digits[j]);
      dst_.e_add(acc.data(), acc.data(), t.data());
    }
    return acc;
  }

 private:
  FieldCtx src_, dst_;
  bool constant_ = false;
  FieldElement gen_image_;
  std::vector<FieldElement> basis_images_;
};

// Embeddings are deterministic in (src, dst), so they are shared globally.
inline const SubfieldEmbedding& get_embedding(const FieldCtx& src,
                                              const FieldCtx& dst) {
  static std::mutex mu;
  static std::map<std::pair<std::string, std::string>,
                  std::unique_ptr<SubfieldEmbedding>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(src.signature(), dst.signature());
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<SubfieldEmbedding>(src, dst))
             .first;
  return *it->second;
}

}  // namespace qlin
