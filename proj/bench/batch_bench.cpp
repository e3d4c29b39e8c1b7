// Timing comparison of the serial reference batch kernel against the
// OpenMP-parallel one, plus a check that both produce identical bits.
//
//   ./batch_bench [samples] [hidden] [window] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qtrend/batch.hpp"
#include "qtrend/rng.hpp"

using namespace qtrend;
using Clock = std::chrono::steady_clock;

namespace {

std::vector<WindowSample> synthetic_samples(int n, int window, int features, SplitMix64& rng) {
  std::vector<WindowSample> samples(static_cast<size_t>(n));
  for (auto& s : samples) {
    s.input = Matrix(window, features);
    for (double& v : s.input.data) v = rng.uniform01();
    s.target.resize(static_cast<size_t>(features));
    for (double& v : s.target) v = rng.uniform01();
  }
  return samples;
}

double run_ms(const LstmParameters& params, std::span<const WindowSample> samples, bool parallel,
              int repeats, double& checksum) {
  auto t0 = Clock::now();
  for (int r = 0; r < repeats; ++r) {
    BatchResult res = parallel ? batch_loss_gradient(params, samples)
                               : batch_loss_gradient_serial(params, samples);
    checksum += res.mean_loss;
  }
  auto t1 = Clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / repeats;
}

}  // namespace

int main(int argc, char** argv) {
  int n_samples = argc > 1 ? std::atoi(argv[1]) : 512;
  int hidden = argc > 2 ? std::atoi(argv[2]) : 32;
  int window = argc > 3 ? std::atoi(argv[3]) : 8;
  int repeats = argc > 4 ? std::atoi(argv[4]) : 5;
  const int features = 9;

  SplitMix64 rng(7);
  auto samples = synthetic_samples(n_samples, window, features, rng);
  LstmParameters params = init_parameters({features, hidden, features}, rng);

#ifdef _OPENMP
  std::printf("openmp: %d thread(s)\n", omp_get_max_threads());
#else
  std::printf("openmp: not built in\n");
#endif
  std::printf("batch: %d samples, window %d, hidden %d, %d repeats\n", n_samples, window, hidden,
              repeats);

  BatchResult a = batch_loss_gradient_serial(params, samples);
  BatchResult b = batch_loss_gradient(params, samples);
  bool identical = a.mean_loss == b.mean_loss && a.gradient == b.gradient;
  std::printf("serial/parallel results identical: %s\n", identical ? "yes" : "NO");

  double sink = 0.0;
  double serial_ms = run_ms(params, samples, false, repeats, sink);
  double parallel_ms = run_ms(params, samples, true, repeats, sink);
  std::printf("serial   %10.2f ms/batch\n", serial_ms);
  std::printf("parallel %10.2f ms/batch  (speedup %.2fx)\n", parallel_ms,
              serial_ms / parallel_ms);
  std::printf("(checksum %g)\n", sink);
  return identical ? 0 : 1;
}
