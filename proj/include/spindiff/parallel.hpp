#pragma once

#include <vector>

namespace spindiff {

/// Runs fn(ix) for ix in [0, nx), possibly on multiple threads.
/// Rows are independent, so the result does not depend on scheduling.
template <class Fn>
void parallel_rows(int nx, Fn&& fn) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (int ix = 0; ix < nx; ++ix) fn(ix);
}

/// Deterministic reduction: per-row partials are computed in parallel,
/// then combined serially in row order, so the result is bitwise
/// identical for any thread count.
template <class Fn>
double reduce_rows(int nx, Fn&& row_value) {
  std::vector<double> partial(nx);
  parallel_rows(nx, [&](int ix) { partial[ix] = row_value(ix); });
  double total = 0.0;
  for (int ix = 0; ix < nx; ++ix) total += partial[ix];
  return total;
}

}  // namespace spindiff
