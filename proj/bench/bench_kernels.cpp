// Serial reference vs OpenMP kernels: integer witness search (lexicographic
// scan vs parallel meet in the middle), F_p isotropic counting, and the
// 378-pair automorphism panel. Each row checks that both
// variants agree before reporting timings.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "f4kit/albert.hpp"
#include "f4kit/kernels.hpp"

using namespace f4kit;
using Clock = std::chrono::steady_clock;

namespace {

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double>(Clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-44s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel, agree ? "agree" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
  std::printf("%-44s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  {
    // Anisotropic, so both searches exhaust the whole box.
    const std::vector<std::int64_t> c{1, 1, 1, 7};
    std::optional<kernels::IntVec> s, p;
    const double ts = best_of(1, [&] { s = kernels::integer_search_serial(c, 24); });
    const double tp = best_of(3, [&] { p = kernels::integer_search_parallel(c, 24); });
    row("integer search <1,1,1,7>, bound 24", ts, tp, s == p);
  }
  {
    const std::vector<std::int64_t> c{1, 1, 2, 5, 7};
    std::optional<kernels::IntVec> s, p;
    const double ts = best_of(1, [&] { s = kernels::integer_search_serial(c, 10); });
    const double tp = best_of(3, [&] { p = kernels::integer_search_parallel(c, 10); });
    const bool agree = s.has_value() == p.has_value();
    row("integer search <1,1,2,5,7>, bound 10", ts, tp, agree);
  }
  {
    const std::vector<std::uint64_t> c{1, 2, 3, 4, 5, 6};
    std::uint64_t s = 0, p = 0;
    const double ts = best_of(3, [&] { s = kernels::count_isotropic_fp(c, 13, kernels::Exec::Serial); });
    const double tp = best_of(3, [&] { p = kernels::count_isotropic_fp(c, 13, kernels::Exec::Parallel); });
    row("F_13 isotropic count, dim 6", ts, tp, s == p);
  }
  {
    const Field Q = Field::rationals();
    const AlbertAlgebra a(CompositionAlgebra::graves(Q), {Q.one(), -Q.one(), Q.one()});
    const Automorphism f = phi(a, so_gamma_sample(a.gamma(), 11));
    std::vector<std::pair<std::size_t, std::size_t>> s, p;
    const double ts = best_of(2, [&] { s = jordan_panel_failures(a, f, kernels::Exec::Serial); });
    const double tp = best_of(2, [&] { p = jordan_panel_failures(a, f, kernels::Exec::Parallel); });
    row("Jordan panel, 378 pairs over Q", ts, tp, s == p && s.empty());
  }
  return 0;
}
