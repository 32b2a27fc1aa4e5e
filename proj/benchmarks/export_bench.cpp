#include <benchmark/benchmark.h>

#include <cadscript/export.hpp>
#include <cadscript/scene_document.hpp>

using namespace cadscript;

namespace {

Session example_scene() {
  Session s;
  s.run("box 1 1 0.3 name b1\nsphere 0.3 on edge b1 random name s1\nunion b1 s1 name u1\nbake u1");
  s.run("grid 5 5 footprint 10 10 height 15 spacing 20 name bldg");
  return s;
}

void BM_ExportObj(benchmark::State& state) {
  const Session s = example_scene();
  ExportOptions opts;
  opts.include_drafts = true;
  for (auto _ : state) benchmark::DoNotOptimize(export_obj(s.scene(), opts));
}
BENCHMARK(BM_ExportObj);

void BM_ExportStl(benchmark::State& state) {
  const Session s = example_scene();
  ExportOptions opts;
  opts.include_drafts = true;
  for (auto _ : state) benchmark::DoNotOptimize(export_stl(s.scene(), opts));
}
BENCHMARK(BM_ExportStl);

void BM_SceneDocument(benchmark::State& state) {
  const Session s = example_scene();
  for (auto _ : state) benchmark::DoNotOptimize(to_json(make_scene_document(s)));
}
BENCHMARK(BM_SceneDocument);

}  // namespace
