#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "searchenv/env/action.hpp"

namespace searchenv {

/// Label used for a prediction that is not one of the classes.
inline constexpr int kInvalidLabel = -1;

struct F1Scores {
  double micro = 0;
  double macro = 0;
  std::size_t classes = 0;  // classes that entered the macro mean
  std::size_t count = 0;
};

/// Single-label multiclass F1 over labels 0..num_classes-1. Predictions
/// outside that range count as wrong. Micro-F1 is computed as correct/total,
/// which is what pooled precision and recall reduce to here. Macro-F1
/// averages per-class F1 over the classes that occur in gold or
/// predictions. Throws InvalidInput on empty input, a length mismatch or a
/// gold label out of range.
F1Scores micro_macro_f1(std::span<const int> gold, std::span<const int> pred,
                        int num_classes = static_cast<int>(kActionKindCount));

/// Character-level Rouge-L F1: LCS over scalar values, 2PR/(P+R). Zero when
/// either side is empty or nothing is shared.
double rouge_l(std::string_view candidate, std::string_view reference);

enum class NoveltyDenominator {
  /// Distinct n-grams of the candidate. Always within [0, 1].
  Candidate,
  /// Distinct n-grams of the concatenated facts.
  Facts,
};

/// Mean over n = 2, 3, 4 of the share of the candidate's distinct character
/// n-grams that never occur in the concatenated facts. Throws Undefined
/// when the candidate has fewer than 4 characters (or, for the Facts
/// denominator, when the facts have no n-gram of some order).
double novelty(std::string_view candidate, std::span<const std::string> facts,
               NoveltyDenominator denominator = NoveltyDenominator::Candidate);

enum class EvalTask { Action, Query, Fact, Synthesis };

std::optional<EvalTask> eval_task_from_name(std::string_view name);

/// Scores line-aligned JSONL files. Each line is an object: {"action": name}
/// for the action task, {"text": ...} otherwise. For synthesis, gold lines
/// may carry "facts" and the report then includes Novelty averaged over
/// predictions of at least 4 characters. Returns the report as JSON with
/// "v": "v1". Throws InvalidInput on malformed or misaligned input.
nlohmann::json evaluate_jsonl(EvalTask task, std::istream& gold, std::istream& pred,
                              NoveltyDenominator denominator = NoveltyDenominator::Candidate);

}  // namespace searchenv
