// Serial reference versus OpenMP drivers over a corpus built by repeating
// the test fixtures. Arg is the thread count for the parallel variants.

#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "unidive/batch.h"
#include "unidive/conllu.h"
#include "unidive/rule_pack.h"

namespace unidive {
namespace {

constexpr int kRepeat = 200;

std::vector<Sentence> Fixture(const std::string& name) {
  std::ifstream in(std::string(UNIDIVE_BENCH_DATA_DIR) + "/" + name);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return ParseConllu(buffer.str());
}

const std::vector<Sentence>& Corpus() {
  static const std::vector<Sentence> corpus = [] {
    std::vector<Sentence> base = Fixture("feature_rows.conllu");
    for (Sentence& s : Fixture("corrections.conllu")) base.push_back(std::move(s));
    std::vector<Sentence> out;
    out.reserve(base.size() * kRepeat);
    for (int i = 0; i < kRepeat; ++i) out.insert(out.end(), base.begin(), base.end());
    return out;
  }();
  return corpus;
}

const RulePack& Pack() {
  static const RulePack pack = LoadRulePackFile(ShippedKoreanPackPath());
  return pack;
}

// Predictions equal to gold with every third head shifted.
const std::vector<std::vector<ParsedRow>>& Predictions() {
  static const std::vector<std::vector<ParsedRow>> rows = [] {
    std::vector<std::vector<ParsedRow>> out;
    for (const Sentence& s : Corpus()) {
      std::vector<ParsedRow> r;
      for (const Token& t : s.tokens) {
        r.push_back({t.id, t.id % 3 == 0 ? t.head + 1 : t.head, t.deprel});
      }
      out.push_back(std::move(r));
    }
    return out;
  }();
  return rows;
}

void SetItems(benchmark::State& state) {
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(Corpus().size()));
}

void BM_EnrichSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(EnrichSerial(Corpus(), Pack()));
  SetItems(state);
}
void BM_EnrichParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(EnrichParallel(Corpus(), Pack(), {}, jobs));
  SetItems(state);
}

void BM_CorrectSerial(benchmark::State& state) {
  const AuxIndex aux;
  for (auto _ : state) benchmark::DoNotOptimize(CorrectSerial(Corpus(), aux, Pack()));
  SetItems(state);
}
void BM_CorrectParallel(benchmark::State& state) {
  const AuxIndex aux;
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(CorrectParallel(Corpus(), aux, Pack(), jobs));
  SetItems(state);
}

void BM_ScoreSerial(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(ScoreCountsSerial(Corpus(), Predictions()));
  SetItems(state);
}
void BM_ScoreParallel(benchmark::State& state) {
  const int jobs = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ScoreCountsParallel(Corpus(), Predictions(), {}, jobs));
  }
  SetItems(state);
}

BENCHMARK(BM_EnrichSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnrichParallel)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrectSerial)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_CorrectParallel)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScoreSerial)->UseRealTime()->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ScoreParallel)->Arg(2)->Arg(4)->Arg(8)->UseRealTime()->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace unidive

BENCHMARK_MAIN();
