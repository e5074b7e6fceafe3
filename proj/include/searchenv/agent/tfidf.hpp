#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "searchenv/retrieval/provider.hpp"

namespace searchenv {

struct ScoredParagraph {
  std::string text;
  double score = 0;
  std::size_t index = 0;  // position in the input list
};

/// TF-IDF cosine similarity over character bigrams. Raw term counts,
/// idf = ln(1 + N/df) with N and df taken over `paragraphs`, both vectors
/// l2-normalized. Question bigrams that occur in no paragraph carry no
/// weight. Sorted by score, ties kept in input order.
std::vector<ScoredParagraph> rank_paragraphs(const std::string& question,
                                             const std::vector<std::string>& paragraphs);

/// Takes ranked paragraphs in order while the running character count stays
/// within `budget`, stopping at the first one that does not fit.
std::vector<std::string> take_within_budget(const std::vector<ScoredParagraph>& ranked,
                                            std::size_t budget);

struct TfidfOptions {
  std::size_t budget = 3072;  // characters
  /// How many search results are fetched for the question.
  std::size_t max_results = 10;
};

/// Non-interactive baseline: one search with the raw question, every
/// retrieved page split into non-blank lines, ranked and cut to the budget.
/// Pages that fail to fetch are skipped. Throws InvalidInput for a zero
/// budget.
std::vector<std::string> tfidf_baseline_retrieve(const std::string& question,
                                                 SearchProvider& provider,
                                                 const TfidfOptions& options = {});

}  // namespace searchenv
