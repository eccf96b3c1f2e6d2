#pragma once

#include <ostream>

#include "qlin/bench.hpp"
#include "qlin/fastalg.hpp"
#include "qlin/instance.hpp"

namespace qlin {

/* Embedded invariant suite.
 *
 * Covers the reference instance with its known order-8 relation, a reduced
 * oracle grid comparing the fast path against the dense path, the
 * root-power identities, and the Frobenius closed form.  Output is fully
 * deterministic.  The fault switch corrupts one fitted coefficient before
 * verification, to prove that a broken relation cannot slip through.
 */

namespace detail {

// order-8 relation of the reference instance (q=7, m=2, all-ones
// coefficients, r=3), frozen as a regression constant
inline const char* kRefRelation[8] = {
    "6;1;0;0;0;0;0;1;6", "0;0;1;1;1;1;1;1;1", "4;4;6;1;3;5;0;5",
    "0;0;6;4;2;2",       "1;3;2;1;1;6;6",     "0;0;6;2",
    "4;6;6;5",           "0;0;1",
};

}  // namespace detail

inline int run_selftest(std::ostream& out, bool inject_fault = false) {
  size_t failures = 0;
  auto report = [&](const char* name, bool ok) {
    out << (ok ? "PASS " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  };

  // reference instance: order 8, frozen coefficients
  {
    InstanceSpec spec = parse_instance("p=7 e=1 m=2 t=1|1|1|1");
    LinearizedPoly L = spec.make_map();
    PipelinePlan plan = make_plan(L);
    bool ok = plan.rec.order() == 8;
    if (ok)
      for (size_t i = 0; i < 8; ++i)
        ok = ok && poly_to_string(plan.rec.coeffs[i]) ==
                       detail::kRefRelation[i];
    report("reference instance relation", ok);

    if (inject_fault) {
      LinearRecurrence broken = plan.rec;
      broken.coeffs[0] = poly_add(broken.coeffs[0], Poly::one(broken.field));
      out << "fault injected into coefficient 0\n";
      bool detected = !verify_recurrence(broken, plan.bootstrap_terms);
      report("fault detection", detected);
      if (!detected) return 3;
      out << "falsification detected as intended\n";
      return 3;  // the corrupted relation must not be used
    }

    bool degree_ok = !plan.rec.exceeds_degree_bound();
    report("reference instance degree bound", degree_ok);
  }

  // reduced oracle grid: fast path equals the dense path exactly
  {
    bool ok = true;
    for (uint64_t p : {2, 3, 5})
      for (uint64_t m : {1, 2})
        for (uint64_t r : {1, 2}) {
          InstanceSpec spec;
          spec.p = p;
          spec.e = 1;
          spec.m = m;
          spec.t_enc.assign(size_t(r) + 1, "1");
          spec.ground = make_prime_field(p);
          spec.coeff_field =
              m == 1 ? spec.ground : extend_field(spec.ground, uint32_t(m));
          LinearizedPoly L = spec.make_map();
          PipelinePlan plan = make_plan(L);
          for (uint64_t ell = (uint64_t(1) << (r + 1)) + 1;
               ell <= (uint64_t(1) << (r + 1)) + 2; ++ell)
            ok = ok && fast_charpoly(plan, ell) == charpoly_direct(L, ell);
        }
    report("reduced oracle grid", ok);
  }

  // root-power identities over F_5[T]
  {
    FieldCtx f5 = make_prime_field(5);
    std::vector<Poly> P{parse_poly(f5, "1;2"), parse_poly(f5, "3;0;1"),
                        parse_poly(f5, "1")};
    bool ok = eps_ell(P, 1) == P;
    std::vector<Poly> ab = eps_ell(eps_ell(P, 2), 3);
    ok = ok && ab == eps_ell(P, 6);
    std::vector<Poly> vals = lrs_of_eps_values(P, 12);
    LinearRecurrence rec = fit_recurrence(vals, 4);
    ok = ok && rec.order() <= 4;
    report("root-power identities", ok);
  }

  // Frobenius closed form: the map Z^q on degree-ell extensions
  {
    bool ok = true;
    for (uint64_t p : {2, 3}) {
      InstanceSpec spec = parse_instance(
          "p=" + std::to_string(p) + " e=1 m=1 t=0|1");
      LinearizedPoly L = spec.make_map();
      for (uint64_t ell : {5, 9}) {
        Poly want = poly_sub(
            Poly::monomial(FieldElement::one(spec.ground), size_t(ell)),
            Poly::one(spec.ground));
        ok = ok && fast_charpoly(L, ell) == want;
      }
    }
    report("power-map closed form", ok);
  }

  out << (failures == 0 ? "selftest ok\n" : "selftest failed\n");
  return failures == 0 ? 0 : 3;
}

}  // namespace qlin
