// Compares the serial and OpenMP-parallel diagram evaluation paths on a
// dense 2-d action and checks that they produce bit-identical series.
//
// The parallel path farms distinct connected components out to threads and
// reassembles per-class values in canonical enumeration order, so the two
// policies must agree exactly — any drift is a bug, not noise.

#include <chrono>
#include <cstdio>
#include <string>

#include "pathint/feynman.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using pathint::ActionJet;
using pathint::EvalPolicy;
using pathint::FormalSeries;
using pathint::Rational;

namespace {

// (x^2 + xy + 2y^2)/2 plus every cubic-through-sextic monomial with small
// distinct coefficients: no symmetry for the evaluator to shortcut.
ActionJet<Rational> dense_action(int order) {
  ActionJet<Rational> f(2, order, Rational(0));
  f.coefficient(2).set({0, 0}, Rational(1));
  f.coefficient(2).set({0, 1}, Rational(1, 2));
  f.coefficient(2).set({1, 1}, Rational(2));
  long c = 1;
  for (int n = 3; n <= order; ++n) {
    for (int ones = 0; ones <= n; ++ones) {
      std::vector<int> idx;
      for (int i = 0; i < n - ones; ++i) idx.push_back(0);
      for (int i = 0; i < ones; ++i) idx.push_back(1);
      f.coefficient(n).set(idx, Rational(c, 7));
      c = c % 11 + 1;
    }
  }
  return f;
}

double best_of(int reps, const ActionJet<Rational>& action, int order,
               EvalPolicy policy, FormalSeries<Rational>* out) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    FormalSeries<Rational> s =
        pathint::diagram_sum(action, order, /*connected_only=*/false, policy);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms =
        std::chrono::duration<double, std::milli>(t1 - t0).count();
    if (ms < best) best = ms;
    *out = s;
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  const int order = argc > 1 ? std::atoi(argv[1]) : 3;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 3;
  const ActionJet<Rational> action = dense_action(2 * order + 2);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("action: dense 2-d, truncation %d; series order %d; best of %d\n",
              2 * order + 2, order, reps);

  FormalSeries<Rational> serial(order);
  FormalSeries<Rational> parallel(order);
  const double t_serial =
      best_of(reps, action, order, EvalPolicy::kSerial, &serial);
  const double t_parallel =
      best_of(reps, action, order, EvalPolicy::kParallel, &parallel);

  std::printf("serial:   %10.2f ms\n", t_serial);
  std::printf("parallel: %10.2f ms  (speedup %.2fx)\n", t_parallel,
              t_serial / t_parallel);
  for (int k = 0; k <= order; ++k)
    std::printf("  kappa^%d: %s\n", k, serial.coefficient(k).str().c_str());

  if (!(serial == parallel)) {
    std::fprintf(stderr, "FAIL: serial and parallel series differ\n");
    return 1;
  }
  std::printf("serial == parallel: identical\n");
  return 0;
}
