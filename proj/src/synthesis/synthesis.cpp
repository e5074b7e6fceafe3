#include "searchenv/synthesis/synthesis.hpp"

#include <algorithm>

#include "searchenv/error.hpp"
#include "searchenv/rng.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

SynthesisInstance instance_from_trajectory(const Trajectory& t) {
  SynthesisInstance out{t.question, {}, t.answer.value_or("")};
  for (const auto& f : t.facts) out.facts.push_back(f.text);
  return out;
}

void to_json(nlohmann::json& j, const SynthesisRecord& r) {
  j = nlohmann::json{{"v", "v1"},
                     {"question", r.question},
                     {"facts", r.facts},
                     {"answer", r.answer},
                     {"noise", r.noise}};
}

void from_json(const nlohmann::json& j, SynthesisRecord& r) {
  r.question = j.at("question").get<std::string>();
  r.facts = j.at("facts").get<std::vector<std::string>>();
  r.answer = j.at("answer").get<std::string>();
  r.noise = j.at("noise").get<std::vector<bool>>();
}

SynthesisRecord corrupt_with_noise(const SynthesisInstance& instance,
                                   std::span<const SynthesisInstance> pool,
                                   std::size_t noise_count, std::uint64_t seed) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!pool[i].facts.empty()) eligible.push_back(i);
  }
  if (eligible.size() < noise_count) {
    throw Error(ErrorCode::InsufficientPool, "need " + std::to_string(noise_count) +
                                                 " pool instances with facts, have " +
                                                 std::to_string(eligible.size()));
  }
  Rng rng(seed);
  rng.shuffle(eligible);

  std::vector<std::pair<std::string, bool>> items;
  for (const auto& f : instance.facts) items.emplace_back(f, false);
  for (std::size_t k = 0; k < noise_count; ++k) {
    const auto& donor = pool[eligible[k]];
    items.emplace_back(donor.facts[rng.uniform_below(donor.facts.size())], true);
  }
  rng.shuffle(items);

  SynthesisRecord out{instance.question, {}, instance.answer, {}};
  for (auto& [text, injected] : items) {
    out.facts.push_back(std::move(text));
    out.noise.push_back(injected);
  }
  return out;
}

std::vector<std::string> split_subsentences(std::string_view text, std::string_view punctuation) {
  const auto marks = utf8::decode(punctuation);
  std::vector<std::string> out;
  std::string piece;
  for (char32_t c : utf8::decode(text)) {
    utf8::append(piece, c);
    if (marks.find(c) != std::u32string::npos) {
      out.push_back(std::move(piece));
      piece.clear();
    }
  }
  if (!piece.empty()) out.push_back(std::move(piece));
  return out;
}

std::vector<std::string> erase_subsentences(std::span<const std::string> facts, double p,
                                            std::uint64_t seed, std::string_view punctuation) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidInput, "erasure probability must lie in [0, 1]");
  }
  Rng rng(seed);
  std::vector<std::string> out;
  out.reserve(facts.size());
  for (const auto& fact : facts) {
    std::string kept;
    for (const auto& piece : split_subsentences(fact, punctuation)) {
      if (rng.uniform01() >= p) kept += piece;
    }
    out.push_back(std::move(kept));
  }
  return out;
}

SynthesisRecord corrupt_instance(const SynthesisInstance& instance,
                                 std::span<const SynthesisInstance> pool,
                                 const CorruptionConfig& config, std::uint64_t seed) {
  Rng rng(seed);
  std::size_t noise = 0;
  if (config.noise_count) {
    noise = *config.noise_count;
  } else {
    const auto half = (instance.facts.size() + 1) / 2;
    const auto hi = static_cast<std::int64_t>(std::max<std::size_t>(1, half));
    noise = static_cast<std::size_t>(rng.uniform_int(1, hi));
  }
  const auto erase_seed = rng.next();
  const auto noise_seed = rng.next();
  SynthesisInstance erased = instance;
  erased.facts = erase_subsentences(instance.facts, config.erase_p, erase_seed, config.punctuation);
  return corrupt_with_noise(erased, pool, noise, noise_seed);
}

std::vector<SynthesisRecord> corrupt_dataset(std::span<const SynthesisInstance> data,
                                             const CorruptionConfig& config) {
  std::vector<SynthesisRecord> out;
  out.reserve(data.size());
  // Instance i is parked in the last slot while the others form its pool.
  std::vector<SynthesisInstance> pool(data.begin(), data.end());
  for (std::size_t i = 0; i < data.size(); ++i) {
    std::swap(pool[i], pool.back());
    out.push_back(corrupt_instance(data[i], std::span(pool.data(), pool.size() - 1), config,
                                   config.seed + i));
    std::swap(pool[i], pool.back());
  }
  return out;
}

}  // namespace searchenv
