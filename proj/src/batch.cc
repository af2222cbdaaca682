#include "unidive/batch.h"

#include <exception>
#include <stdexcept>
#include <string>

#include <omp.h>

namespace unidive {
namespace {

int Threads(int jobs) { return jobs > 0 ? jobs : omp_get_max_threads(); }

// Runs fn(i) for every index; keeps the exception of the lowest failing index.
template <typename Fn>
void ParallelFor(std::size_t n, int jobs, Fn fn) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 16) num_threads(Threads(jobs))
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

void CheckAligned(std::size_t gold, std::size_t predicted) {
  if (gold != predicted) {
    throw std::invalid_argument("gold has " + std::to_string(gold) +
                                " sentences but predictions have " +
                                std::to_string(predicted));
  }
}

}  // namespace

std::vector<Sentence> EnrichSerial(std::span<const Sentence> sentences,
                                   const RulePack& pack, const AssignOptions& options) {
  std::vector<Sentence> out;
  out.reserve(sentences.size());
  for (const Sentence& s : sentences) out.push_back(AssignFeatures(s, pack, options));
  return out;
}

std::vector<Sentence> EnrichParallel(std::span<const Sentence> sentences,
                                     const RulePack& pack, const AssignOptions& options,
                                     int jobs) {
  std::vector<Sentence> out(sentences.size());
  ParallelFor(sentences.size(), jobs,
              [&](std::size_t i) { out[i] = AssignFeatures(sentences[i], pack, options); });
  return out;
}

std::vector<CorrectionResult> CorrectSerial(std::span<const Sentence> sentences,
                                            const AuxIndex& aux, const RulePack& pack) {
  std::vector<CorrectionResult> out;
  out.reserve(sentences.size());
  for (const Sentence& s : sentences) {
    out.push_back(CorrectSentence(s, aux.ForSentence(s.SentId().value_or("")), pack));
  }
  return out;
}

std::vector<CorrectionResult> CorrectParallel(std::span<const Sentence> sentences,
                                              const AuxIndex& aux, const RulePack& pack,
                                              int jobs) {
  std::vector<CorrectionResult> out(sentences.size());
  ParallelFor(sentences.size(), jobs, [&](std::size_t i) {
    const Sentence& s = sentences[i];
    out[i] = CorrectSentence(s, aux.ForSentence(s.SentId().value_or("")), pack);
  });
  return out;
}

std::vector<ITRecord> ConvertSerial(std::span<const Sentence> sentences,
                                    std::string_view instruction) {
  std::vector<ITRecord> out;
  out.reserve(sentences.size());
  for (const Sentence& s : sentences) out.push_back(ToItRecord(s, instruction));
  return out;
}

std::vector<ITRecord> ConvertParallel(std::span<const Sentence> sentences,
                                      std::string_view instruction, int jobs) {
  std::vector<ITRecord> out(sentences.size());
  ParallelFor(sentences.size(), jobs,
              [&](std::size_t i) { out[i] = ToItRecord(sentences[i], instruction); });
  return out;
}

EvalCounts ScoreCountsSerial(std::span<const Sentence> gold,
                             std::span<const std::vector<ParsedRow>> predicted,
                             const ScoreOptions& options) {
  CheckAligned(gold.size(), predicted.size());
  EvalCounts total;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    total += ScoreSentence(gold[i], predicted[i], options);
  }
  return total;
}

EvalCounts ScoreCountsParallel(std::span<const Sentence> gold,
                               std::span<const std::vector<ParsedRow>> predicted,
                               const ScoreOptions& options, int jobs) {
  CheckAligned(gold.size(), predicted.size());
  std::size_t total = 0, head = 0, both = 0, unmatched = 0, missing = 0;
  const auto count = static_cast<std::ptrdiff_t>(gold.size());
#pragma omp parallel for schedule(static) num_threads(Threads(jobs)) \
    reduction(+ : total, head, both, unmatched, missing)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    const EvalCounts c = ScoreSentence(gold[static_cast<std::size_t>(i)],
                                       predicted[static_cast<std::size_t>(i)], options);
    total += c.total_tokens;
    head += c.head_correct;
    both += c.both_correct;
    unmatched += c.unmatched_predicted_rows;
    missing += c.missing_gold_rows;
  }
  return EvalCounts{total, head, both, unmatched, missing};
}

}  // namespace unidive
