#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "searchenv/env/action.hpp"
#include "searchenv/trajectory/trajectory.hpp"

namespace searchenv {

/// Per-dataset means. Lengths are in characters (scalar values).
struct DatasetStats {
  std::size_t trajectories = 0;
  double mean_actions = 0;
  double mean_queries = 0;
  double mean_page_loads = 0;
  double mean_facts = 0;
  /// Share of each action kind among all recorded actions, indexed by
  /// ActionKind. Sums to 1 whenever any action was recorded.
  std::array<double, kActionKindCount> action_proportions{};
  double mean_question_chars = 0;
  double mean_fact_chars = 0;
  double mean_answer_chars = 0;
  std::size_t answered = 0;
};

/// Throws EmptyDataset for an empty input.
DatasetStats compute_stats(std::span<const Trajectory> dataset);

nlohmann::json stats_to_json(const DatasetStats& s);

struct SplitSizes {
  std::size_t train = 0;
  std::size_t dev = 0;
  std::size_t test = 0;
};

struct DatasetSplit {
  std::vector<std::uint64_t> train;
  std::vector<std::uint64_t> dev;
  std::vector<std::uint64_t> test;
};

/// Shuffles `ids` with Rng(seed) and cuts consecutive blocks of the
/// requested sizes. Throws InvalidSplit when the sizes add up to more than
/// there are ids.
DatasetSplit split_dataset(std::span<const std::uint64_t> ids, SplitSizes sizes,
                           std::uint64_t seed);

}  // namespace searchenv
