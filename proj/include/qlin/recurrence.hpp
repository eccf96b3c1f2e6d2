#pragma once

#include <optional>
#include <sstream>

#include "qlin/matrix.hpp"

namespace qlin {

/* Linear recurrences with polynomial coefficients.
 *
 * A recurrence of order d over F_q[T] states a_{k+d} = sum_i c_i a_{k+i}
 * for every k (terms indexed from 1).  Fitting proceeds by ascending order
 * with a fraction-free elimination, so every intermediate stays a
 * polynomial and every division is exact; a candidate is accepted only if
 * it holds across all supplied terms.  Far terms are never expanded
 * symbolically: they are reached through powers of the companion matrix
 * with everything evaluated at a chosen point first.
 */

struct LinearRecurrence {
  FieldCtx field;                        // coefficient field of the polys
  std::vector<Poly> coeffs;              // c_0..c_{d-1}
  std::vector<Poly> seeds;               // a_1..a_d
  std::optional<uint64_t> degree_bound;  // advisory cap on coeff degrees

  size_t order() const { return coeffs.size(); }

  bool exceeds_degree_bound() const {
    if (!degree_bound) return false;
    for (const auto& c : coeffs)
      if (c.degree() > int64_t(*degree_bound)) return true;
    return false;
  }
};

// Every window of the given terms satisfies the relation.
inline bool verify_recurrence(const LinearRecurrence& rec,
                              const std::vector<Poly>& terms) {
  const size_t d = rec.order();
  if (d == 0) return false;
  for (size_t k = 0; k + d < terms.size(); ++k) {
    Poly acc = Poly::zero(rec.field);
    for (size_t i = 0; i < d; ++i)
      acc = poly_add(acc, poly_mul(rec.coeffs[i], terms[k + i]));
    if (!(acc == terms[k + d])) return false;
  }
  return true;
}

namespace detail {

// One solve attempt at a fixed order via fraction-free Jordan elimination
// with full pivoting.  Returns the coefficients if a polynomial solution
// exists (free variables, if any, pinned to zero), nothing otherwise.
inline std::optional<std::vector<Poly>> solve_order(
    const std::vector<Poly>& terms, size_t d) {
  const FieldCtx& F = terms[0].field();
  const size_t cols = d + 1;
  std::vector<std::vector<Poly>> w(d, std::vector<Poly>(cols, Poly::zero(F)));
  for (size_t k = 0; k < d; ++k) {
    for (size_t i = 0; i < d; ++i) w[k][i] = terms[k + i];
    w[k][d] = terms[k + d];
  }
  std::vector<size_t> col_of(d);  // variable index of each column
  for (size_t j = 0; j < d; ++j) col_of[j] = j;

  Poly prev = Poly::one(F);
  size_t rank = 0;
  for (size_t step = 0; step < d; ++step) {
    size_t pi = d, pj = d;
    for (size_t j = step; j < d && pj == d; ++j)
      for (size_t i = step; i < d; ++i)
        if (!w[i][j].is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pj == d) break;  // all remaining entries vanish
    if (pi != step) std::swap(w[pi], w[step]);
    if (pj != step) {
      for (size_t i = 0; i < d; ++i) std::swap(w[i][pj], w[i][step]);
      std::swap(col_of[pj], col_of[step]);
    }
    const Poly pivot = w[step][step];
    for (size_t i = 0; i < d; ++i) {
      if (i == step) continue;
      const Poly fi = w[i][step];
      // every non-pivot-row entry transforms, including the columns of
      // earlier pivots, where the rule degenerates to a rescaling
      for (size_t j = 0; j < cols; ++j) {
        if (j == step) continue;
        Poly num = poly_sub(poly_mul(pivot, w[i][j]),
                            poly_mul(fi, w[step][j]));
        auto qr = poly_divrem(num, prev);
        if (!qr.second.is_zero()) return {};
        w[i][j] = std::move(qr.first);
      }
      w[i][step] = Poly::zero(F);
    }
    prev = pivot;
    ++rank;
  }

  // rows past the rank are zero on the left; demand consistency
  for (size_t i = rank; i < d; ++i)
    if (!w[i][d].is_zero()) return {};

  std::vector<Poly> sol(d, Poly::zero(F));
  for (size_t i = 0; i < rank; ++i) {
    auto qr = poly_divrem(w[i][d], w[i][i]);
    if (!qr.second.is_zero()) return {};  // rational, not polynomial
    sol[col_of[i]] = std::move(qr.first);
  }
  return sol;
}

}  // namespace detail

// Smallest-order recurrence with polynomial coefficients satisfied by all
// of the given terms (a_1 first).  Orders up to max_order are tried in
// turn; an order is testable only when the terms cover twice of it.
inline LinearRecurrence fit_recurrence(const std::vector<Poly>& terms,
                                       size_t max_order) {
  if (terms.empty() || max_order == 0)
    throw InsufficientTerms("nothing to fit");
  const FieldCtx& F = terms[0].field();
  for (const auto& t : terms)
    if (!(t.field() == F)) throw FieldMismatch("terms in different fields");
  const size_t testable = terms.size() / 2;
  for (size_t d = 1; d <= std::min(max_order, testable); ++d) {
    auto sol = detail::solve_order(terms, d);
    if (!sol) continue;
    LinearRecurrence rec{F, std::move(*sol),
                         std::vector<Poly>(terms.begin(), terms.begin() + d),
                         std::nullopt};
    if (verify_recurrence(rec, terms)) return rec;
  }
  if (testable < max_order)
    throw InsufficientTerms("too few terms to reach the requested order");
  throw NoRelation("no recurrence of the requested order fits");
}

// Companion matrix of the recurrence with every entry evaluated at x; the
// first row carries the reversed coefficients, the subdiagonal is ones.
inline DenseMatrix companion_at(const LinearRecurrence& rec,
                                const FieldElement& x) {
  const FieldCtx& E = x.field();
  const size_t d = rec.order();
  DenseMatrix m(E, d);
  for (size_t j = 0; j < d; ++j)
    m.set(0, j, poly_eval(rec.coeffs[d - 1 - j], x));
  for (size_t i = 1; i < d; ++i) m.set(i, i - 1, FieldElement::one(E));
  return m;
}

// a_ell evaluated at x, via companion powers; never forms a_ell itself.
inline FieldElement term_at_point(const LinearRecurrence& rec,
                                  const FieldElement& x, uint64_t ell) {
  if (ell == 0) throw InvalidInstance("terms are indexed from 1");
  const size_t d = rec.order();
  if (ell <= rec.seeds.size()) return poly_eval(rec.seeds[ell - 1], x);
  if (rec.seeds.size() < d)
    throw InsufficientSeeds("recurrence carries too few seed terms");
  const FieldCtx& E = x.field();
  std::vector<FieldElement> u(d, FieldElement::zero(E));
  for (size_t i = 0; i < d; ++i)
    u[i] = poly_eval(rec.seeds[d - 1 - i], x);  // [a_d, ..., a_1]
  DenseMatrix mp = mat_pow(companion_at(rec, x), ell - d);
  return mat_vec(mp, u)[0];
}

// Keyed-line text form: order, then c<i> lines, then s<i> lines.
inline std::string serialize_recurrence(const LinearRecurrence& rec) {
  std::ostringstream os;
  os << "order=" << rec.order() << "\n";
  for (size_t i = 0; i < rec.coeffs.size(); ++i)
    os << "c" << i << "=" << poly_to_string(rec.coeffs[i]) << "\n";
  for (size_t i = 0; i < rec.seeds.size(); ++i)
    os << "s" << (i + 1) << "=" << poly_to_string(rec.seeds[i]) << "\n";
  return os.str();
}

inline LinearRecurrence parse_recurrence(const FieldCtx& f,
                                         const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::optional<size_t> order;
  std::map<size_t, Poly> cs, ss;
  size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(lineno, 1, "expected key=value");
    std::string key = line.substr(0, eq), val = line.substr(eq + 1);
    try {
      if (key == "order") {
        order = std::stoull(val);
      } else if (key.size() > 1 && (key[0] == 'c' || key[0] == 's')) {
        size_t idx = std::stoull(key.substr(1));
        Poly p = parse_poly(f, val);
        if (key[0] == 'c')
          cs.emplace(idx, std::move(p));
        else
          ss.emplace(idx, std::move(p));
      } else {
        throw ParseError(lineno, 1, "unknown key '" + key + "'");
      }
    } catch (const std::invalid_argument&) {
      throw ParseError(lineno, 1, "bad number in '" + line + "'");
    } catch (const std::out_of_range&) {
      throw ParseError(lineno, 1, "number out of range in '" + line + "'");
    }
  }
  if (!order || *order == 0)
    throw ParseError(lineno, 1, "missing or zero order");
  LinearRecurrence rec{f, {}, {}, std::nullopt};
  for (size_t i = 0; i < *order; ++i) {
    auto it = cs.find(i);
    if (it == cs.end())
      throw ParseError(lineno, 1, "missing coefficient c" + std::to_string(i));
    rec.coeffs.push_back(it->second);
  }
  for (size_t i = 1; i <= ss.size(); ++i) {
    auto it = ss.find(i);
    if (it == ss.end())
      throw ParseError(lineno, 1, "seed lines must be s1..sk");
    rec.seeds.push_back(it->second);
  }
  return rec;
}

}  // namespace qlin
