// Serial reference vs OpenMP kernels on the same inputs.
#include <benchmark/benchmark.h>

#include "bracketlab/cohoengine.hpp"
#include "bracketlab/parallel.hpp"
#include "bracketlab/tensorcalc.hpp"
#include "bracketlab/vvforms.hpp"

using namespace blab;

namespace {

Multivector so3() {
  auto ctx = make_context({"x", "y", "z"});
  auto x = Polynomial::variable(ctx, 0), y = Polynomial::variable(ctx, 1), z = Polynomial::variable(ctx, 2);
  auto dx = Multivector::basis(ctx, 1), dy = Multivector::basis(ctx, 2), dz = Multivector::basis(ctx, 4);
  return z * wedge(dx, dy) + x * wedge(dy, dz) + y * wedge(dz, dx);
}

Exec exec_of(const benchmark::State& st) { return st.range(1) ? Exec::Parallel : Exec::Serial; }

void BM_PoissonComplex(benchmark::State& st) {
  Multivector p = so3();
  const int cap = static_cast<int>(st.range(0));
  for (auto _ : st) {
    auto c = build_complex(PoissonCochain{p}, cap, {0, 3}, exec_of(st));
    benchmark::DoNotOptimize(c.out.data());
  }
  st.SetLabel(st.range(1) ? "omp x" + std::to_string(parallel_threads()) : "serial");
}

void BM_DeRhamComplex(benchmark::State& st) {
  auto ctx = make_context({"x", "y", "z", "w"});
  for (auto _ : st) {
    auto c = build_complex(DeRham{ctx}, static_cast<int>(st.range(0)), {0, 4}, exec_of(st));
    benchmark::DoNotOptimize(c.out.data());
  }
  st.SetLabel(st.range(1) ? "omp x" + std::to_string(parallel_threads()) : "serial");
}

void BM_ExtractFn(benchmark::State& st) {
  auto ctx = make_context({"x", "y", "z"});
  auto x = Polynomial::variable(ctx, 0), y = Polynomial::variable(ctx, 1);
  VForm a = VForm::tensor(x * Form::basis(ctx, 2), Multivector::basis(ctx, 1));
  VForm b = VForm::tensor(y * Form::basis(ctx, 4), Multivector::basis(ctx, 2));
  BracketProblem prob{LieKind::LieByVForm, a, b, {}, static_cast<int>(st.range(0)), {}};
  for (auto _ : st) {
    auto r = extract_bracket(prob, exec_of(st));
    benchmark::DoNotOptimize(r);
  }
  st.SetLabel(st.range(1) ? "omp x" + std::to_string(parallel_threads()) : "serial");
}

}  // namespace

BENCHMARK(BM_PoissonComplex)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_DeRhamComplex)->ArgsProduct({{2, 3}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExtractFn)->ArgsProduct({{1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
