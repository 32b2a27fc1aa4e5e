#include <benchmark/benchmark.h>

#include <cadscript/dsl.hpp>
#include <string>

using namespace cadscript::dsl;

namespace {

std::string program(int statements) {
  std::string src;
  for (int i = 0; i < statements; ++i) {
    src += "box 1 1 1 at " + std::to_string(i) + " 0 0 name b" + std::to_string(i) + "\n";
    if (i > 0) src += "union b" + std::to_string(i - 1) + " b" + std::to_string(i) + "\n";
  }
  return src;
}

void BM_Parse(benchmark::State& state) {
  const std::string src = program(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(parse(src));
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations()) * static_cast<std::int64_t>(src.size()));
}
BENCHMARK(BM_Parse)->Arg(10)->Arg(1000);

void BM_Validate(benchmark::State& state) {
  const auto parsed = parse(program(static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(validate(*parsed.program, {}));
}
BENCHMARK(BM_Validate)->Arg(10)->Arg(1000);

void BM_PrettyPrint(benchmark::State& state) {
  const auto parsed = parse(program(1000));
  for (auto _ : state) benchmark::DoNotOptimize(pretty_print(*parsed.program));
}
BENCHMARK(BM_PrettyPrint);

}  // namespace
