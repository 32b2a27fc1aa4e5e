#include <benchmark/benchmark.h>

#include <cadscript/session.hpp>
#include <cadscript/solar.hpp>

using namespace cadscript;

namespace {

void BM_SunPath(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solar::sun_path(solar::kDerby, {2024, 6, 21}, 10));
}
BENCHMARK(BM_SunPath);

void BM_GridSunStudy(benchmark::State& state) {
  const std::string side = std::to_string(state.range(0));
  Session base;
  base.run("grid " + side + " " + side + " footprint 10 10 height 15 spacing 20 name bldg");
  for (auto _ : state) {
    Session s = base;
    benchmark::DoNotOptimize(s.run("sunstudy lat 52.92 lon -1.48 date 2024-06-21 interval 10 cell 1"));
  }
}
BENCHMARK(BM_GridSunStudy)->Arg(2)->Arg(5)->Unit(benchmark::kMillisecond);

}  // namespace
