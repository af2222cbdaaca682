#ifndef UNIDIVE_BATCH_H_
#define UNIDIVE_BATCH_H_

#include <span>
#include <vector>

#include "unidive/conllu.h"
#include "unidive/correct.h"
#include "unidive/eval.h"
#include "unidive/features.h"
#include "unidive/it_convert.h"
#include "unidive/rule_pack.h"

// Whole-batch drivers over independent sentences. Each has a serial
// reference and an OpenMP version with identical, order-preserving results.
// When several sentences fail, the parallel versions rethrow the error of
// the earliest one, as the serial loop would.

namespace unidive {

std::vector<Sentence> EnrichSerial(std::span<const Sentence> sentences,
                                   const RulePack& pack,
                                   const AssignOptions& options = {});
std::vector<Sentence> EnrichParallel(std::span<const Sentence> sentences,
                                     const RulePack& pack,
                                     const AssignOptions& options = {}, int jobs = 0);

std::vector<CorrectionResult> CorrectSerial(std::span<const Sentence> sentences,
                                            const AuxIndex& aux, const RulePack& pack);
std::vector<CorrectionResult> CorrectParallel(std::span<const Sentence> sentences,
                                              const AuxIndex& aux, const RulePack& pack,
                                              int jobs = 0);

std::vector<ITRecord> ConvertSerial(std::span<const Sentence> sentences,
                                    std::string_view instruction);
std::vector<ITRecord> ConvertParallel(std::span<const Sentence> sentences,
                                      std::string_view instruction, int jobs = 0);

// Throw std::invalid_argument on a sentence-count mismatch.
EvalCounts ScoreCountsSerial(std::span<const Sentence> gold,
                             std::span<const std::vector<ParsedRow>> predicted,
                             const ScoreOptions& options = {});
EvalCounts ScoreCountsParallel(std::span<const Sentence> gold,
                               std::span<const std::vector<ParsedRow>> predicted,
                               const ScoreOptions& options = {}, int jobs = 0);

}  // namespace unidive

#endif  // UNIDIVE_BATCH_H_
