#include "searchenv/eval/metrics.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "searchenv/error.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

F1Scores micro_macro_f1(std::span<const int> gold, std::span<const int> pred, int num_classes) {
  if (gold.empty()) throw Error(ErrorCode::InvalidInput, "no labels");
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::InvalidInput, "gold has " + std::to_string(gold.size()) +
                                             " labels, predictions " + std::to_string(pred.size()));
  }
  const auto k = static_cast<std::size_t>(num_classes);
  std::vector<std::size_t> tp(k), fp(k), fn(k), seen(k);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const int g = gold[i];
    const int p = pred[i];
    if (g < 0 || g >= num_classes) {
      throw Error(ErrorCode::InvalidInput, "gold label out of range: " + std::to_string(g));
    }
    const bool valid = p >= 0 && p < num_classes;
    seen[static_cast<std::size_t>(g)] = 1;
    if (valid) seen[static_cast<std::size_t>(p)] = 1;
    if (g == p) {
      ++correct;
      ++tp[static_cast<std::size_t>(g)];
    } else {
      ++fn[static_cast<std::size_t>(g)];
      if (valid) ++fp[static_cast<std::size_t>(p)];
    }
  }
  F1Scores out;
  out.count = gold.size();
  out.micro = static_cast<double>(correct) / static_cast<double>(gold.size());
  double sum = 0;
  for (std::size_t c = 0; c < k; ++c) {
    if (!seen[c]) continue;
    ++out.classes;
    const auto denom = 2 * tp[c] + fp[c] + fn[c];
    sum += static_cast<double>(2 * tp[c]) / static_cast<double>(denom);
  }
  out.macro = sum / static_cast<double>(out.classes);
  return out;
}

double rouge_l(std::string_view candidate, std::string_view reference) {
  const auto a = utf8::decode(candidate);
  const auto b = utf8::decode(reference);
  if (a.empty() || b.empty()) return 0.0;
  std::vector<std::size_t> row(b.size() + 1, 0);
  for (char32_t ca : a) {
    std::size_t diag = 0;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const auto up = row[j];
      row[j] = ca == b[j - 1] ? diag + 1 : std::max(row[j], row[j - 1]);
      diag = up;
    }
  }
  const auto lcs = static_cast<double>(row.back());
  if (lcs == 0) return 0.0;
  const double p = lcs / static_cast<double>(a.size());
  const double r = lcs / static_cast<double>(b.size());
  return 2 * p * r / (p + r);
}

namespace {

std::set<std::u32string> ngrams(const std::u32string& s, std::size_t n) {
  std::set<std::u32string> out;
  for (std::size_t i = 0; i + n <= s.size(); ++i) out.insert(s.substr(i, n));
  return out;
}

}  // namespace

double novelty(std::string_view candidate, std::span<const std::string> facts,
               NoveltyDenominator denominator) {
  const auto cand = utf8::decode(candidate);
  if (cand.size() < 4) {
    throw Error(ErrorCode::Undefined, "novelty needs at least 4 characters");
  }
  std::string joined;
  for (const auto& f : facts) joined += f;
  const auto source = utf8::decode(joined);
  double total = 0;
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto grams = ngrams(cand, n);
    const auto known = ngrams(source, n);
    std::size_t novel = 0;
    for (const auto& g : grams) novel += known.count(g) == 0;
    std::size_t denom = grams.size();
    if (denominator == NoveltyDenominator::Facts) {
      denom = known.size();
      if (denom == 0) {
        throw Error(ErrorCode::Undefined, "facts have no " + std::to_string(n) + "-grams");
      }
    }
    total += static_cast<double>(novel) / static_cast<double>(denom);
  }
  return total / 3.0;
}

std::optional<EvalTask> eval_task_from_name(std::string_view name) {
  if (name == "action") return EvalTask::Action;
  if (name == "query") return EvalTask::Query;
  if (name == "fact") return EvalTask::Fact;
  if (name == "synthesis") return EvalTask::Synthesis;
  return std::nullopt;
}

namespace {

std::vector<nlohmann::json> read_lines(std::istream& in, std::string_view what) {
  std::vector<nlohmann::json> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(nlohmann::json::parse(line));
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::InvalidInput,
                  std::string(what) + " line " + std::to_string(lineno) + ": " + e.what());
    }
    if (!out.back().is_object()) {
      throw Error(ErrorCode::InvalidInput,
                  std::string(what) + " line " + std::to_string(lineno) + ": not an object");
    }
  }
  return out;
}

std::string field(const nlohmann::json& j, const char* key, std::string_view what) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " line lacks \"" + key + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

nlohmann::json evaluate_jsonl(EvalTask task, std::istream& gold_in, std::istream& pred_in,
                              NoveltyDenominator denominator) {
  const auto gold = read_lines(gold_in, "gold");
  const auto pred = read_lines(pred_in, "prediction");
  if (gold.size() != pred.size()) {
    throw Error(ErrorCode::InvalidInput, "gold has " + std::to_string(gold.size()) +
                                             " lines, predictions " + std::to_string(pred.size()));
  }
  if (gold.empty()) throw Error(ErrorCode::InvalidInput, "no records");

  nlohmann::json report{{"v", "v1"}, {"count", gold.size()}};
  if (task == EvalTask::Action) {
    report["task"] = "action";
    std::vector<int> g, p;
    for (std::size_t i = 0; i < gold.size(); ++i) {
      const auto gk = action_from_name(field(gold[i], "action", "gold"));
      if (!gk) throw Error(ErrorCode::InvalidInput, "gold action is not an action name");
      g.push_back(static_cast<int>(*gk));
      const auto pk = action_from_name(field(pred[i], "action", "prediction"));
      p.push_back(pk ? static_cast<int>(*pk) : kInvalidLabel);
    }
    const auto f1 = micro_macro_f1(g, p);
    report["micro_f1"] = f1.micro;
    report["macro_f1"] = f1.macro;
    report["macro_classes"] = f1.classes;
    return report;
  }

  report["task"] = task == EvalTask::Query ? "query" : task == EvalTask::Fact ? "fact" : "synthesis";
  double rouge_sum = 0;
  double novelty_sum = 0;
  std::size_t novelty_count = 0;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    const auto ref = field(gold[i], "text", "gold");
    const auto cand = field(pred[i], "text", "prediction");
    rouge_sum += rouge_l(cand, ref);
    if (task == EvalTask::Synthesis && gold[i].contains("facts")) {
      const auto facts = gold[i]["facts"].get<std::vector<std::string>>();
      if (utf8::length(cand) >= 4) {
        novelty_sum += novelty(cand, facts, denominator);
        ++novelty_count;
      }
    }
  }
  report["rouge_l"] = rouge_sum / static_cast<double>(gold.size());
  if (task == EvalTask::Synthesis) {
    report["novelty"] = novelty_count ? nlohmann::json(novelty_sum / static_cast<double>(novelty_count))
                                      : nlohmann::json();
    report["novelty_count"] = novelty_count;
  }
  return report;
}

}  // namespace searchenv
