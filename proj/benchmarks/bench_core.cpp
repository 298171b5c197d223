#include <benchmark/benchmark.h>

#include "affc/classify.hpp"
#include "affc/dyndeg.hpp"
#include "affc/planecheck.hpp"
#include "affc/text.hpp"

using namespace affc;

namespace {

const Field* Q = Field::rationals();

void BM_ComposeCubic(benchmark::State& st) {
  PolyMap f = PolyMap::parse("(y+x*z, z, x+z*(y+x*z))", Q);
  PolyMap h = f;
  for (int i = 1; i < st.range(0); ++i) h = compose(f, h);
  for (auto _ : st) benchmark::DoNotOptimize(compose(f, h));
}
BENCHMARK(BM_ComposeCubic)->DenseRange(1, 4);

void BM_IsPlane(benchmark::State& st) {
  Poly f = parse_poly("2*x*y^2 - x*y*z + y*z^2 + 3*y^2 - z + x - 1", Q);
  for (auto _ : st) benchmark::DoNotOptimize(is_plane_deg3(f));
}
BENCHMARK(BM_IsPlane);

void BM_ClassifyFamily11(benchmark::State& st) {
  PolyMap f = PolyMap::parse("(x+2*y+z*(x+y)^2+y*z, y+(x+y)^2+z^3-x, z+x)", Q);
  for (auto _ : st) benchmark::DoNotOptimize(classify_system(f));
}
BENCHMARK(BM_ClassifyFamily11);

void BM_LambdaDecisionTree(benchmark::State& st) {
  PolyMap f = PolyMap::parse("(y+x*z, z, x+y*z+x*z^2)", Q);
  for (auto _ : st) benchmark::DoNotOptimize(lambda_deg3(f));
}
BENCHMARK(BM_LambdaDecisionTree);

void BM_EstimateBracket(benchmark::State& st) {
  PolyMap f = PolyMap::parse("(y+x*z, z, x+z*(y+x*z))", Q);
  for (auto _ : st) benchmark::DoNotOptimize(estimate(f, static_cast<int>(st.range(0))));
}
BENCHMARK(BM_EstimateBracket)->Arg(6)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
