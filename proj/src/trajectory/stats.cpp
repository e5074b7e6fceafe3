#include "searchenv/trajectory/stats.hpp"

#include "searchenv/error.hpp"
#include "searchenv/rng.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

DatasetStats compute_stats(std::span<const Trajectory> dataset) {
  if (dataset.empty()) throw Error(ErrorCode::EmptyDataset, "dataset is empty");
  DatasetStats s;
  s.trajectories = dataset.size();
  std::array<std::size_t, kActionKindCount> counts{};
  std::size_t actions = 0;
  std::size_t facts = 0;
  std::size_t question_chars = 0;
  std::size_t fact_chars = 0;
  std::size_t answer_chars = 0;
  for (const auto& t : dataset) {
    for (const auto& step : t.steps) ++counts[static_cast<std::size_t>(step.action.kind)];
    actions += t.steps.size();
    facts += t.facts.size();
    question_chars += utf8::length(t.question);
    for (const auto& f : t.facts) fact_chars += utf8::length(f.text);
    if (t.answer) {
      ++s.answered;
      answer_chars += utf8::length(*t.answer);
    }
  }
  const auto n = static_cast<double>(dataset.size());
  s.mean_actions = static_cast<double>(actions) / n;
  s.mean_queries = static_cast<double>(counts[static_cast<std::size_t>(ActionKind::Search)]) / n;
  s.mean_page_loads = static_cast<double>(counts[static_cast<std::size_t>(ActionKind::LoadPage1)] +
                                          counts[static_cast<std::size_t>(ActionKind::LoadPage2)] +
                                          counts[static_cast<std::size_t>(ActionKind::LoadPage3)]) /
                      n;
  s.mean_facts = static_cast<double>(facts) / n;
  if (actions > 0) {
    for (std::size_t k = 0; k < kActionKindCount; ++k) {
      s.action_proportions[k] = static_cast<double>(counts[k]) / static_cast<double>(actions);
    }
  }
  s.mean_question_chars = static_cast<double>(question_chars) / n;
  if (facts > 0) s.mean_fact_chars = static_cast<double>(fact_chars) / static_cast<double>(facts);
  if (s.answered > 0) {
    s.mean_answer_chars = static_cast<double>(answer_chars) / static_cast<double>(s.answered);
  }
  return s;
}

nlohmann::json stats_to_json(const DatasetStats& s) {
  nlohmann::json proportions = nlohmann::json::object();
  for (auto k : kAllActionKinds) {
    proportions[std::string(action_name(k))] = s.action_proportions[static_cast<std::size_t>(k)];
  }
  return {{"v", "v1"},
          {"trajectories", s.trajectories},
          {"mean_actions", s.mean_actions},
          {"mean_queries", s.mean_queries},
          {"mean_page_loads", s.mean_page_loads},
          {"mean_facts", s.mean_facts},
          {"action_proportions", proportions},
          {"mean_question_chars", s.mean_question_chars},
          {"mean_fact_chars", s.mean_fact_chars},
          {"mean_answer_chars", s.mean_answer_chars},
          {"answered", s.answered}};
}

DatasetSplit split_dataset(std::span<const std::uint64_t> ids, SplitSizes sizes,
                           std::uint64_t seed) {
  const auto wanted = sizes.train + sizes.dev + sizes.test;
  if (wanted > ids.size()) {
    throw Error(ErrorCode::InvalidSplit, "split asks for " + std::to_string(wanted) +
                                             " items but the dataset has " +
                                             std::to_string(ids.size()));
  }
  std::vector<std::uint64_t> order(ids.begin(), ids.end());
  Rng rng(seed);
  rng.shuffle(order);
  DatasetSplit out;
  auto it = order.begin();
  auto take = [&it](std::size_t n) {
    std::vector<std::uint64_t> part(it, it + static_cast<std::ptrdiff_t>(n));
    it += static_cast<std::ptrdiff_t>(n);
    return part;
  };
  out.train = take(sizes.train);
  out.dev = take(sizes.dev);
  out.test = take(sizes.test);
  return out;
}

}  // namespace searchenv
