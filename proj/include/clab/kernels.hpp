#pragma once

// Data-parallel building blocks. Every kernel has a serial reference path and
// an OpenMP path; both produce bit-identical results because values are
// computed per element and reductions are lexicographic on (value, index).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace clab {

enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec e);
int max_threads();

namespace kernels {

struct IndexedValue {
  double value;
  long index;  // -1 when empty
};

template <class F>
void map_index(long n, F&& f, double* out, Exec ex) {
  if (ex == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[i] = f(i);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[i] = f(i);
}

// Smallest value, ties to the lowest index; NaN counts as +inf.
inline IndexedValue argmin(const double* v, long n, Exec ex) {
  auto key = [](double x) { return std::isnan(x) ? std::numeric_limits<double>::infinity() : x; };
  IndexedValue best{std::numeric_limits<double>::infinity(), -1};
  if (ex == Exec::Serial) {
    for (long i = 0; i < n; ++i) {
      const double k = key(v[i]);
      if (best.index < 0 || k < best.value) best = {k, i};
    }
    return best;
  }
#pragma omp parallel
  {
    IndexedValue local{std::numeric_limits<double>::infinity(), -1};
#pragma omp for schedule(static) nowait
    for (long i = 0; i < n; ++i) {
      const double k = key(v[i]);
      if (local.index < 0 || k < local.value) local = {k, i};
    }
#pragma omp critical(clab_argmin)
    {
      if (local.index >= 0 &&
          (best.index < 0 || local.value < best.value ||
           (local.value == best.value && local.index < best.index))) {
        best = local;
      }
    }
  }
  return best;
}

// Largest value, ties to the lowest index; NaN counts as -inf.
inline IndexedValue argmax(const double* v, long n, Exec ex) {
  std::vector<double> neg(v, v + n);
  for (double& x : neg) x = std::isnan(x) ? std::numeric_limits<double>::infinity() : -x;
  IndexedValue r = argmin(neg.data(), n, ex);
  r.value = -r.value;
  return r;
}

// Lowest i in [0, n) with pred(i), or -1. The parallel path evaluates fixed
// waves of indices and stops after the first wave containing a hit, so the
// answer never depends on the thread count.
template <class P>
long first_true(long n, P&& pred, Exec ex, long wave = 64) {
  if (ex == Exec::Serial) {
    for (long i = 0; i < n; ++i)
      if (pred(i)) return i;
    return -1;
  }
  std::vector<char> hit(static_cast<size_t>(wave));
  for (long start = 0; start < n; start += wave) {
    const long len = std::min(wave, n - start);
#pragma omp parallel for schedule(dynamic, 1)
    for (long k = 0; k < len; ++k) hit[k] = pred(start + k) ? 1 : 0;
    for (long k = 0; k < len; ++k)
      if (hit[k]) return start + k;
  }
  return -1;
}

// True iff f(i) > threshold for some i. Serial path exits at the first hit.
template <class F>
bool any_exceeds(long n, F&& f, double threshold, Exec ex) {
  if (ex == Exec::Serial) {
    for (long i = 0; i < n; ++i)
      if (f(i) > threshold) return true;
    return false;
  }
  std::atomic<bool> found{false};
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    if (found.load(std::memory_order_relaxed)) continue;
    if (f(i) > threshold) found.store(true, std::memory_order_relaxed);
  }
  return found.load();
}

}  // namespace kernels
}  // namespace clab
