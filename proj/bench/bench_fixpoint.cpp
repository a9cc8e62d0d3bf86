// Serial reference against the OpenMP kernel on the same grids.
#include "ordwb/oracle.hpp"

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>

using namespace ordwb;

template <class F> static double time_of(F f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int main(int argc, char **argv) {
  int cap = argc > 1 ? std::atoi(argv[1]) : 4;
  std::vector<std::pair<const char *, GridSpec>> specs;
  {
    GridSpec s;
    s.bound = parse_ord("eps(2)");
    s.seeds = {parse_ord("eps(0)"), parse_ord("eps(1)"), parse_ord("eps(0)*2+1")};
    specs.push_back({"below eps(2)", s});
  }
  specs.push_back({"default", default_grid_spec()});

  std::printf("threads %d, subset cap %d\n", omp_get_max_threads(), cap);
  std::printf("%-14s %7s %10s %10s %8s %s\n", "grid", "points", "serial_s", "omp_s", "speedup",
              "same");
  for (auto &[name, spec] : specs) {
    auto g = std::make_shared<const Grid>(build_grid(spec));
    std::vector<int> a, b;
    double ts = time_of([&] { a = leq1_fixpoint_serial(g, cap).mhat(); });
    double tp = time_of([&] { b = leq1_fixpoint(g, cap).mhat(); });
    std::printf("%-14s %7zu %10.2f %10.2f %8.2f %s\n", name, g->size(), ts, tp, ts / tp,
                a == b ? "yes" : "NO");
  }
}
