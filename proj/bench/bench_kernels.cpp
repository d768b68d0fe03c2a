#include <benchmark/benchmark.h>

#include <cmath>

#include "fl/kernel.hpp"
#include "fl/l1.hpp"
#include "fl/maximize.hpp"
#include "fl/norms.hpp"
#include "fl/parallel.hpp"

namespace {

fl::KernelSpec spec(long long n) { return {fl::PsiSpec::geometric_q(0.9), 0.5, n}; }

void BM_SampleKernel(benchmark::State& st) {
  const auto ks = spec(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fl::sample_kernel(ks, 1 << 16, 1e-15));
}
void BM_SampleKernelSerial(benchmark::State& st) {
  const auto ks = spec(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(fl::sample_kernel_serial(ks, 1 << 16, 1e-15));
}

fl::GridFunction grid() {
  fl::GridFunction g;
  g.values.resize(1 << 14);
  for (std::size_t j = 0; j < g.m(); ++j) g.values[j] = std::exp(std::cos(g.t(j))) * std::sin(3.0 * g.t(j));
  return g;
}

void BM_FourierCoeffs(benchmark::State& st) {
  const auto g = grid();
  for (auto _ : st) benchmark::DoNotOptimize(fl::fourier_coeffs(g, static_cast<int>(st.range(0))));
}
void BM_FourierCoeffsSerial(benchmark::State& st) {
  const auto g = grid();
  for (auto _ : st) benchmark::DoNotOptimize(fl::fourier_coeffs_serial(g, static_cast<int>(st.range(0))));
}

fl::MaxProblem problem(const fl::Kernel& k) {
  fl::MaxProblem p;
  p.f = [&k](double t) { return k.value(t); };
  p.a = -3.141592653589793;
  p.b = 3.141592653589793;
  p.curvature = k.curvature();
  p.eval_err = k.eval_err();
  p.tol = 1e-12;
  p.initial_cells = 4096;
  return p;
}

void BM_CertifiedMax(benchmark::State& st) {
  const fl::Kernel k(spec(st.range(0)));
  const auto p = problem(k);
  for (auto _ : st) benchmark::DoNotOptimize(fl::certified_max(p));
}
void BM_CertifiedMaxSerial(benchmark::State& st) {
  const fl::Kernel k(spec(st.range(0)));
  const auto p = problem(k);
  for (auto _ : st) benchmark::DoNotOptimize(fl::certified_max_serial(p));
}

void BM_ClassSupremum(benchmark::State& st) {
  const fl::Kernel k(spec(st.range(0)));
  for (auto _ : st) benchmark::DoNotOptimize(fl::class_supremum(k, 0.0, 4096));
}

}  // namespace

BENCHMARK(BM_SampleKernel)->Arg(8)->Arg(256);
BENCHMARK(BM_SampleKernelSerial)->Arg(8)->Arg(256);
BENCHMARK(BM_FourierCoeffs)->Arg(64)->Arg(1024);
BENCHMARK(BM_FourierCoeffsSerial)->Arg(64)->Arg(1024);
BENCHMARK(BM_CertifiedMax)->Arg(8)->Arg(256);
BENCHMARK(BM_CertifiedMaxSerial)->Arg(8)->Arg(256);
BENCHMARK(BM_ClassSupremum)->Arg(8)->Arg(256);

int main(int argc, char** argv) {
  fl::configure_threads();
  benchmark::Initialize(&argc, argv);
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
}
