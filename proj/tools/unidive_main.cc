// unidive: treebank enrichment, POS correction, IT conversion and scoring.
//
// Data goes to stdout (or -o), diagnostics to stderr. Exit codes: 0 on
// success, 1 when the input fails validation, 2 on I/O or format errors.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unidive/batch.h"
#include "unidive/conllu.h"
#include "unidive/correct.h"
#include "unidive/eval.h"
#include "unidive/features.h"
#include "unidive/it_convert.h"
#include "unidive/rule_pack.h"

namespace unidive {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitError = 2;

// Sentences read per batch and thread; bounds memory while streaming.
constexpr std::size_t kChunkPerJob = 256;

struct Config {
  std::string rules;
  bool lenient = false;
  bool strip_bom = false;
  int jobs = 1;
  std::string output = "-";
};

// Raised after the offending diagnostics have already been printed.
struct InvalidInput {};

class InputFile {
 public:
  explicit InputFile(const std::string& path) : path_(path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary);
    if (!file_) throw std::runtime_error("cannot open '" + path + "'");
  }
  std::istream& stream() { return path_ == "-" ? std::cin : file_; }
  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ifstream file_;
};

class OutputFile {
 public:
  explicit OutputFile(const std::string& path) : path_(path) {
    if (path == "-") return;
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot write '" + path + "'");
  }
  std::ostream& stream() { return path_ == "-" ? std::cout : file_; }
  void Close() {
    stream().flush();
    if (!stream()) throw std::runtime_error("write to '" + path_ + "' failed");
  }

 private:
  std::string path_;
  std::ofstream file_;
};

void CheckReadable(const std::vector<std::string>& paths) {
  for (const std::string& p : paths) {
    if (p == "-") continue;
    std::error_code ec;
    if (!std::filesystem::is_regular_file(p, ec)) {
      throw std::runtime_error("input '" + p + "' does not exist or is not a file");
    }
    std::ifstream probe(p);
    if (!probe) throw std::runtime_error("input '" + p + "' is not readable");
  }
}

std::string DefaultRulesPath() {
  if (const char* env = std::getenv("UNIDIVE_RULES"); env != nullptr && *env != '\0') {
    return env;
  }
  return ShippedKoreanPackPath().string();
}

RulePack LoadPack(const Config& config) {
  const std::string path = config.rules.empty() ? DefaultRulesPath() : config.rules;
  CheckReadable({path});
  try {
    return LoadRulePackFile(path);
  } catch (const RulePackError& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void Report(const std::string& path, const Diagnostic& d, bool warning) {
  std::cerr << path << ": " << (warning ? "warning: " : "error: ") << d.ToString() << '\n';
}

// Reads validated sentences in chunks and hands each chunk to `fn`.
template <typename Fn>
void ForEachChunk(InputFile& in, const Config& config, Fn fn) {
  ConlluReader reader(in.stream(), ReadOptions{config.lenient, config.strip_bom});
  const std::size_t chunk =
      kChunkPerJob * static_cast<std::size_t>(std::max(1, config.jobs));
  std::vector<Sentence> batch;
  bool more = true;
  while (more) {
    batch.clear();
    Sentence s;
    while (batch.size() < chunk && (more = reader.Next(s))) batch.push_back(std::move(s));
    for (const Diagnostic& d : reader.TakeWarnings()) Report(in.path(), d, true);
    const std::vector<Diagnostic> errors = Validate(batch);
    if (!errors.empty()) {
      for (const Diagnostic& d : errors) Report(in.path(), d, false);
      throw InvalidInput{};
    }
    if (!batch.empty()) fn(std::span<const Sentence>(batch));
  }
}

int RunValidate(const Config& config, const std::vector<std::string>& inputs) {
  CheckReadable(inputs);
  std::size_t errors = 0;
  for (const std::string& path : inputs) {
    InputFile in(path);
    ConlluReader reader(in.stream(), ReadOptions{config.lenient, config.strip_bom});
    Sentence s;
    std::size_t sentences = 0;
    while (reader.Next(s)) {
      ++sentences;
      for (const Diagnostic& d : reader.TakeWarnings()) Report(path, d, true);
      for (const Diagnostic& d : ValidateSentence(s)) {
        Report(path, d, false);
        ++errors;
      }
    }
    for (const Diagnostic& d : reader.TakeWarnings()) Report(path, d, true);
    std::cerr << path << ": " << sentences << " sentences checked\n";
  }
  return errors == 0 ? kExitOk : kExitInvalid;
}

int RunEnrich(const Config& config, const std::string& input, const AssignOptions& options) {
  CheckReadable({input});
  const RulePack pack = LoadPack(config);
  InputFile in(input);
  OutputFile out(config.output);
  ForEachChunk(in, config, [&](std::span<const Sentence> batch) {
    const std::vector<Sentence> enriched =
        config.jobs > 1 ? EnrichParallel(batch, pack, options, config.jobs)
                        : EnrichSerial(batch, pack, options);
    for (const Sentence& s : enriched) WriteSentence(out.stream(), s);
  });
  out.Close();
  return kExitOk;
}

int RunCorrect(const Config& config, const std::string& input, const std::string& aux_path,
               const std::string& log_path) {
  std::vector<std::string> required{input};
  if (!aux_path.empty()) required.push_back(aux_path);
  CheckReadable(required);
  const RulePack pack = LoadPack(config);

  AuxIndex aux;
  if (!aux_path.empty()) {
    InputFile aux_in(aux_path);
    try {
      aux = AuxIndex(ReadAuxSidecar(aux_in.stream()));
    } catch (const FormatError& e) {
      throw std::runtime_error(aux_path + ": " + e.what());
    }
  }

  InputFile in(input);
  OutputFile out(config.output);
  std::vector<CorrectionRecord> records;
  std::set<std::string> seen_ids;
  std::size_t total_tokens = 0;
  ForEachChunk(in, config, [&](std::span<const Sentence> batch) {
    const std::vector<CorrectionResult> results =
        config.jobs > 1 ? CorrectParallel(batch, aux, pack, config.jobs)
                        : CorrectSerial(batch, aux, pack);
    for (std::size_t i = 0; i < batch.size(); ++i) {
      total_tokens += batch[i].tokens.size();
      if (std::optional<std::string> id = batch[i].SentId()) seen_ids.insert(*id);
      WriteSentence(out.stream(), results[i].sentence);
      records.insert(records.end(), results[i].records.begin(), results[i].records.end());
    }
  });
  out.Close();

  for (const std::string& id : aux.SentenceIds()) {
    if (!seen_ids.contains(id)) {
      throw std::runtime_error(aux_path + ": sentence '" + id + "' is not in " + input);
    }
  }
  if (!log_path.empty()) {
    OutputFile log(log_path);
    WriteCorrectionLog(log.stream(), records, total_tokens);
    log.Close();
  }
  std::cerr << input << ": " << records.size() << " corrections over " << total_tokens
            << " tokens\n";
  return kExitOk;
}

int RunStats(const Config& config, const std::string& log_path,
             std::optional<std::size_t> total_override, std::size_t top) {
  CheckReadable({log_path});
  InputFile in(log_path);
  CorrectionLog log;
  try {
    log = ReadCorrectionLog(in.stream());
  } catch (const FormatError& e) {
    throw std::runtime_error(log_path + ": " + e.what());
  }
  const std::optional<std::size_t> total = total_override ? total_override : log.total_tokens;
  if (!total) {
    throw std::runtime_error(log_path +
                             ": no '# total_tokens' line; pass --total-tokens");
  }
  const ConversionStats stats = AggregateStats(log.records, *total);
  OutputFile out(config.output);
  out.stream() << FormatStatsTable(stats, top);
  out.Close();
  return kExitOk;
}

int RunConvert(const Config& config, const std::string& input,
               const std::string& instruction) {
  CheckReadable({input});
  InputFile in(input);
  OutputFile out(config.output);
  ForEachChunk(in, config, [&](std::span<const Sentence> batch) {
    const std::vector<ITRecord> records =
        config.jobs > 1 ? ConvertParallel(batch, instruction, config.jobs)
                        : ConvertSerial(batch, instruction);
    EmitJsonl(records, out.stream());
  });
  out.Close();
  return kExitOk;
}

EvalReport ScoreFile(const Config& config, std::span<const Sentence> gold,
                     const std::string& predictions_path, const ScoreOptions& options) {
  InputFile in(predictions_path);
  std::vector<std::vector<ParsedRow>> predicted;
  try {
    predicted = ReadPredictions(in.stream());
  } catch (const FormatError& e) {
    throw std::runtime_error(predictions_path + ": " + e.what());
  }
  const EvalCounts counts = config.jobs > 1
                                ? ScoreCountsParallel(gold, predicted, options, config.jobs)
                                : ScoreCountsSerial(gold, predicted, options);
  return Finalize(counts);
}

int RunEval(const Config& config, const std::string& gold_path,
            const std::string& predictions_path, const std::string& baseline_path,
            const ScoreOptions& options) {
  std::vector<std::string> required{gold_path, predictions_path};
  if (!baseline_path.empty()) required.push_back(baseline_path);
  CheckReadable(required);

  InputFile gold_in(gold_path);
  std::vector<Sentence> gold;
  ForEachChunk(gold_in, config, [&](std::span<const Sentence> batch) {
    gold.insert(gold.end(), batch.begin(), batch.end());
  });

  const EvalReport report = ScoreFile(config, gold, predictions_path, options);
  OutputFile out(config.output);
  if (!baseline_path.empty()) {
    const EvalReport baseline = ScoreFile(config, gold, baseline_path, options);
    out.stream() << "# baseline: " << baseline_path << '\n' << FormatReport(baseline) << '\n';
    out.stream() << "# system: " << predictions_path << '\n' << FormatReport(report) << '\n';
    out.stream() << FormatDelta(Compare(baseline, report));
  } else {
    out.stream() << FormatReport(report);
  }
  out.Close();
  return kExitOk;
}

int Main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  CLI::App app{"unidive: Korean treebank enrichment, correction, conversion and scoring"};
  app.require_subcommand(1);
  Config config;
  app.add_option("--rules", config.rules,
                 "Rule pack (default: $UNIDIVE_RULES, else the shipped Korean pack)");
  app.add_flag("--lenient", config.lenient, "Map unknown XPOS tags to NA with a warning");
  app.add_flag("--strip-bom", config.strip_bom, "Accept and drop a leading UTF-8 BOM");
  app.add_option("-j,--jobs", config.jobs, "Worker threads (output order is preserved)")
      ->check(CLI::Range(1, 1024));
  app.add_option("-o,--output", config.output, "Output file, '-' for stdout");

  std::vector<std::string> validate_inputs;
  auto* validate = app.add_subcommand("validate", "Check CoNLL-U files; exit 0 iff clean");
  validate->add_option("inputs", validate_inputs, "CoNLL-U files, '-' for stdin")
      ->required();

  std::string input;
  AssignOptions assign;
  bool no_periphrastic = false, no_transcribe = false, no_functional = false;
  auto* enrich = app.add_subcommand("enrich", "Recompute FEATS from the rule pack");
  enrich->add_option("input", input, "CoNLL-U file, '-' for stdin")->required();
  enrich->add_flag("--no-periphrastic", no_periphrastic, "Skip cross-word rules");
  enrich->add_flag("--no-transcribe", no_transcribe, "Skip Case=<ending> transcription");
  enrich->add_flag("--no-functional", no_functional, "Do not mark Functional=Yes in MISC");

  std::string aux_path, log_path;
  auto* correct = app.add_subcommand("correct", "Apply POS corrections");
  correct->add_option("input", input, "CoNLL-U file, '-' for stdin")->required();
  correct->add_option("--aux", aux_path, "NER / external-tagger sidecar (TSV)");
  correct->add_option("--log", log_path, "Write the correction record log here");

  std::optional<std::size_t> total_tokens;
  std::size_t top = 5;
  auto* stats = app.add_subcommand("stats", "Summarize a correction log");
  stats->add_option("log", input, "Correction record log")->required();
  stats->add_option("--total-tokens", total_tokens, "Ratio denominator override");
  stats->add_option("--top", top, "Rows per column, 0 for all");

  std::string instruction(kDefaultInstruction);
  auto* convert = app.add_subcommand("convert-it", "Emit instruction-tuning JSONL");
  convert->add_option("input", input, "CoNLL-U file, '-' for stdin")->required();
  convert->add_option("--instruction", instruction, "Instruction text");

  std::string predictions, baseline;
  ScoreOptions score;
  auto* eval = app.add_subcommand("eval", "Score predictions against gold (UAS/LAS)");
  eval->add_option("gold", input, "Gold CoNLL-U")->required();
  eval->add_option("predictions", predictions, "Predicted rows (JSONL, text, or CoNLL-U)")
      ->required();
  eval->add_option("--baseline", baseline, "Second predictions file to compare against");
  eval->add_flag("--exclude-punct", score.exclude_punct, "Skip PUNCT tokens");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*validate) return RunValidate(config, validate_inputs);
    if (*enrich) {
      assign.periphrastic = !no_periphrastic;
      assign.transcribe = !no_transcribe;
      assign.mark_functional = !no_functional;
      return RunEnrich(config, input, assign);
    }
    if (*correct) return RunCorrect(config, input, aux_path, log_path);
    if (*stats) return RunStats(config, input, total_tokens, top);
    if (*convert) return RunConvert(config, input, instruction);
    if (*eval) return RunEval(config, input, predictions, baseline, score);
  } catch (const InvalidInput&) {
    return kExitInvalid;
  } catch (const FormatError& e) {
    std::cerr << (input.empty() ? "input" : input) << ": error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace
}  // namespace unidive

int main(int argc, char** argv) { return unidive::Main(argc, argv); }
