#include <benchmark/benchmark.h>

#include <cadscript/csg.hpp>

using namespace cadscript::geom;

namespace {

void BM_UnionBoxSphere(benchmark::State& state) {
  const Solid box = make_box({1.0, 1.0, 0.3});
  TessellationQuality q;
  q.sphere_segments = static_cast<int>(state.range(0));
  const Solid sphere = make_sphere(0.3, box_edge_point(box, 9, 0.5), q);
  for (auto _ : state) benchmark::DoNotOptimize(boolean_union(box, sphere));
}
BENCHMARK(BM_UnionBoxSphere)->Arg(16)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_DifferenceCorner(benchmark::State& state) {
  const Solid a = make_box({2, 2, 2});
  const Solid b = make_box({2, 2, 2}, {1, 1, 1});
  for (auto _ : state) benchmark::DoNotOptimize(boolean_difference(a, b));
}
BENCHMARK(BM_DifferenceCorner)->Unit(benchmark::kMicrosecond);

void BM_VoxelVolume(benchmark::State& state) {
  const Solid sphere = make_sphere(1.0, {0, 0, 0});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(voxel_volume(sphere, n));
}
BENCHMARK(BM_VoxelVolume)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
