#include "ordwb/oracle.hpp"

#include <chrono>
#include <omp.h>

namespace ordwb {

// Jacobi rounds: every row reads the previous snapshot, so rows are
// independent within a round and the result matches the serial driver.
Leq1Relation leq1_fixpoint(std::shared_ptr<const Grid> g, int subset_cap) {
  auto t0 = std::chrono::steady_clock::now();
  int n = (int)g->size();
  std::vector<int> cur(n, n - 1), next(n);
  FixpointStats st;
  while (true) {
    std::size_t removed = 0;
    bool failed = false;
    std::string what;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : removed)
    for (int a = n - 1; a >= 0; --a) {
      try {
        next[a] = fixpoint_row(*g, cur, a, subset_cap);
        removed += cur[a] - next[a];
      } catch (const std::exception &e) {
#pragma omp critical
        {
          failed = true;
          what = e.what();
        }
      }
    }
    if (failed)
      throw DomainError(what);
    removed += prune_transitive(next);
    ++st.rounds;
    st.removed_per_round.push_back(removed);
    if (removed == 0)
      break;
    cur.swap(next);
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return Leq1Relation(std::move(g), std::move(cur), subset_cap, st);
}

} // namespace ordwb
