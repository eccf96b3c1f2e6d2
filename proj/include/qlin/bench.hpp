#pragma once

#include <algorithm>
#include <chrono>
#include <ostream>

#include "qlin/fastalg.hpp"
#include "qlin/instance.hpp"

namespace qlin {

/* Benchmark harness.
 *
 * One CSV row per (index, algorithm) cell.  Timing uses the monotonic
 * clock, takes the median of the measured repetitions, and discards one
 * warm-up run.  The plan (bootstrap plus fit) is built once per grid and
 * excluded from the per-index timings, mirroring how the pipeline
 * amortizes in use.  Baseline cells whose first run blows the cap are
 * recorded as `timeout`, and once one baseline cell times out, larger
 * ones are skipped outright: the dense path only grows from there.
 */

struct BenchGrid {
  uint64_t p = 2, e = 1, m = 1, r = 2;
  std::vector<uint64_t> ells;
  std::vector<std::string> t_enc;  // optional; default all-ones
  uint64_t time_cap_ms = 10000;
  unsigned reps = 3;
  bool parallel = false;
  unsigned threads = 0;
};

namespace detail {

template <typename Fn>
inline uint64_t time_once_ns(const Fn& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  auto t1 = std::chrono::steady_clock::now();
  return uint64_t(
      std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
}

}  // namespace detail

inline void run_bench(const BenchGrid& grid, std::ostream& out) {
  if (grid.ells.empty()) throw InvalidInstance("no indices to benchmark");
  if (grid.reps == 0) throw InvalidInstance("reps must be positive");
  InstanceSpec spec;
  spec.p = grid.p;
  spec.e = grid.e;
  spec.m = grid.m;
  if (grid.t_enc.empty())
    spec.t_enc.assign(size_t(grid.r) + 1, "1");
  else
    spec.t_enc = grid.t_enc;

  // resolve fields the same way parse_instance does
  FieldCtx prime;
  try {
    prime = make_prime_field(spec.p);
  } catch (const NotPrime&) {
    throw InvalidInstance("p must be prime");
  }
  spec.ground = spec.e == 1 ? prime : extend_field(prime, uint32_t(spec.e));
  spec.coeff_field = spec.m == 1
                         ? spec.ground
                         : extend_field(spec.ground, uint32_t(spec.m));
  LinearizedPoly L = spec.make_map();
  if (L.r() != grid.r)
    throw InvalidInstance("coefficient count disagrees with r");

  PipelinePlan plan = make_plan(L, grid.parallel, grid.threads);
  const uint64_t cap_ns = grid.time_cap_ms * 1000000ull;

  std::vector<uint64_t> ells = grid.ells;
  std::sort(ells.begin(), ells.end());

  out << "p,e,m,r,l,n,algo,order,s,wall_ns\n";
  bool baseline_dead = false;
  for (uint64_t ell : ells) {
    const uint64_t n = uint64_t(L.m()) * ell;
    FieldCtx E = eval_field_for(L.ground(), n + 1);
    const uint64_t s = E == L.ground() ? 1 : E.degree();

    std::vector<uint64_t> samples;
    for (unsigned i = 0; i <= grid.reps; ++i) {  // first is warm-up
      uint64_t ns = detail::time_once_ns([&] { fast_charpoly(plan, ell); });
      if (i > 0) samples.push_back(ns);
    }
    std::sort(samples.begin(), samples.end());
    out << grid.p << ',' << grid.e << ',' << grid.m << ',' << grid.r << ','
        << ell << ',' << n << ",fast," << plan.rec.order() << ',' << s << ','
        << samples[samples.size() / 2] << "\n";

    out << grid.p << ',' << grid.e << ',' << grid.m << ',' << grid.r << ','
        << ell << ',' << n << ",baseline,0,0,";
    if (baseline_dead) {
      out << "timeout\n";
      continue;
    }
    // the probe doubles as the warm-up run when it stays under the cap
    uint64_t probe = detail::time_once_ns([&] { charpoly_direct(L, ell); });
    if (probe > cap_ns) {
      baseline_dead = true;
      out << "timeout\n";
      continue;
    }
    std::vector<uint64_t> bs;
    for (unsigned i = 0; i < grid.reps; ++i)
      bs.push_back(detail::time_once_ns([&] { charpoly_direct(L, ell); }));
    std::sort(bs.begin(), bs.end());
    out << bs[bs.size() / 2] << "\n";
  }
}

}  // namespace qlin
