// divalg-bench: times the OpenMP-parallel kernels against their serial
// reference implementations and verifies that both report identical results.
//
// Usage: divalg-bench [scale]
//   scale (default 1) multiplies the workload sizes.
//
// Exit status 0 when every parallel/serial pair agrees, 1 otherwise.

#include <omp.h>

#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "divalg/algebra.hpp"
#include "divalg/identities.hpp"
#include "divalg/rng.hpp"

using namespace divalg;

namespace {

struct Row {
  std::string name;
  double serial_s = 0;
  double parallel_s = 0;
  bool agree = false;
};

void print_row(const Row& r) {
  std::printf("%-44s %9.3f s %9.3f s %7.2fx   %s\n", r.name.c_str(), r.serial_s, r.parallel_s,
              r.parallel_s > 0 ? r.serial_s / r.parallel_s : 0.0, r.agree ? "yes" : "NO");
}

Row bench_bounded(const AlgebraPtr& alg, int d, int count, int height, std::uint64_t seed,
                  const std::string& name) {
  std::vector<AlgebraElem> xs;
  Sampler rng(seed);
  for (int i = 0; i < count; ++i) xs.push_back(random_element(alg, height, rng));

  Row row;
  row.name = name;
  std::vector<char> serial(xs.size()), parallel(xs.size());
  double t0 = omp_get_wtime();
  for (std::size_t i = 0; i < xs.size(); ++i) serial[i] = is_alg_bounded_serial(xs[i], d) ? 1 : 0;
  row.serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  for (std::size_t i = 0; i < xs.size(); ++i) parallel[i] = is_alg_bounded(xs[i], d) ? 1 : 0;
  row.parallel_s = omp_get_wtime() - t0;
  row.agree = serial == parallel;
  return row;
}

Row bench_exhaustive(const AlgebraPtr& alg, int d, const std::string& name) {
  Row row;
  row.name = name;
  double t0 = omp_get_wtime();
  const GdSweep s = gd_exhaustive_sweep(alg, d, /*parallel=*/false);
  row.serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const GdSweep p = gd_exhaustive_sweep(alg, d, /*parallel=*/true);
  row.parallel_s = omp_get_wtime() - t0;
  row.agree = s.total == p.total && s.witness == p.witness;
  return row;
}

Row bench_random(const AlgebraPtr& alg, int d, long long count, int height, std::uint64_t seed,
                 const std::string& name) {
  Row row;
  row.name = name;
  double t0 = omp_get_wtime();
  const GdSweep s = gd_random_sweep(alg, d, count, height, seed, /*parallel=*/false);
  row.serial_s = omp_get_wtime() - t0;
  t0 = omp_get_wtime();
  const GdSweep p = gd_random_sweep(alg, d, count, height, seed, /*parallel=*/true);
  row.parallel_s = omp_get_wtime() - t0;
  row.agree = s.total == p.total && s.witness == p.witness;
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  long long scale = 1;
  if (argc > 1) {
    scale = std::atoll(argv[1]);
    if (scale < 1) {
      std::fprintf(stderr, "usage: %s [scale >= 1]\n", argv[0]);
      return 2;
    }
  }

  const FieldCtx Q = FieldCtx::rational();
  const FieldCtx F2 = FieldCtx::prime(2);
  const FieldCtx F3 = FieldCtx::prime(3);
  const FieldCtx F5 = FieldCtx::prime(5);

  std::printf("OpenMP threads: %d   workload scale: %lld\n\n", omp_get_max_threads(), scale);
  std::printf("%-44s %11s %11s %8s   %s\n", "kernel", "serial", "parallel", "speedup", "agree");

  std::vector<Row> rows;
  rows.push_back(bench_bounded(matrix_algebra(Q, 3), 3, static_cast<int>(30 * scale), 5, 1,
                               "bounded test, M3(Q), d=3, full sweeps"));
  rows.push_back(bench_bounded(quaternion_algebra(Q, FieldElem::from_int(Q, -1),
                                                  FieldElem::from_int(Q, -1)),
                               2, static_cast<int>(400 * scale), 5, 2,
                               "bounded test, (-1,-1|Q), d=2, full sweeps"));
  rows.push_back(bench_exhaustive(matrix_algebra(F2, 2), 2, "exhaustive sweep, M2(F2), d=2"));
  rows.push_back(bench_exhaustive(matrix_algebra(F2, 2), 3, "exhaustive sweep, M2(F2), d=3"));
  rows.push_back(bench_exhaustive(matrix_algebra(F3, 2), 2, "exhaustive sweep, M2(F3), d=2"));
  rows.push_back(bench_random(matrix_algebra(Q, 3), 2, 2000 * scale, 3, 3,
                              "random sweep, M3(Q), d=2"));
  rows.push_back(bench_random(matrix_algebra(F5, 2), 3, 20000 * scale, 7, 4,
                              "random sweep, M2(F5), d=3"));

  bool all_agree = true;
  for (const Row& r : rows) {
    print_row(r);
    all_agree = all_agree && r.agree;
  }
  std::printf("\n%s\n", all_agree ? "serial and parallel kernels agree on every workload"
                                  : "DISAGREEMENT between serial and parallel kernels");
  return all_agree ? 0 : 1;
}
