#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "searchenv/trajectory/trajectory.hpp"

namespace searchenv {

/// ，。！？；、,.;!?
inline constexpr std::string_view kDefaultPunctuation =
    "，。！？；、,.;!?";

/// (question, facts, answer) taken from a trajectory.
struct SynthesisInstance {
  std::string question;
  std::vector<std::string> facts;
  std::string answer;
};

SynthesisInstance instance_from_trajectory(const Trajectory& t);

struct SynthesisRecord {
  std::string question;
  std::vector<std::string> facts;
  std::string answer;
  /// noise[i] is true when facts[i] was injected from another instance.
  std::vector<bool> noise;

  friend bool operator==(const SynthesisRecord&, const SynthesisRecord&) = default;
};

void to_json(nlohmann::json& j, const SynthesisRecord& r);
void from_json(const nlohmann::json& j, SynthesisRecord& r);

/// Appends `noise_count` facts, one drawn uniformly from each of
/// `noise_count` distinct pool instances that have at least one fact, then
/// shuffles originals and noise together. `pool` must not contain
/// `instance`. Throws InsufficientPool when too few instances qualify.
SynthesisRecord corrupt_with_noise(const SynthesisInstance& instance,
                                   std::span<const SynthesisInstance> pool,
                                   std::size_t noise_count, std::uint64_t seed);

/// Cuts after every character of `punctuation`; each delimiter stays with
/// the piece on its left. The pieces concatenate back to `text`.
std::vector<std::string> split_subsentences(std::string_view text,
                                            std::string_view punctuation = kDefaultPunctuation);

/// Drops each sub-sentence independently with probability `p` and rejoins
/// the survivors in order. One Rng(seed) draw per sub-sentence, facts in
/// order, sub-sentence dropped iff the draw is below p. Throws InvalidInput
/// unless 0 <= p <= 1.
std::vector<std::string> erase_subsentences(std::span<const std::string> facts, double p,
                                            std::uint64_t seed,
                                            std::string_view punctuation = kDefaultPunctuation);

struct CorruptionConfig {
  /// Fixed N'; when unset each instance draws N' uniformly from
  /// [1, max(1, ceil(N/2))], N being its own fact count.
  std::optional<std::size_t> noise_count;
  double erase_p = 0.0;
  std::string punctuation{kDefaultPunctuation};
  std::uint64_t seed = 0;
};

/// Sub-sentence erasure on the instance's own facts followed by noise
/// injection. The per-instance stream is Rng(seed): first the N' draw (if
/// N' is not fixed), then the erasure seed, then the noise seed.
SynthesisRecord corrupt_instance(const SynthesisInstance& instance,
                                 std::span<const SynthesisInstance> pool,
                                 const CorruptionConfig& config, std::uint64_t seed);

/// corrupt_instance over a whole dataset; instance i uses the other
/// instances as its pool and seed config.seed + i.
std::vector<SynthesisRecord> corrupt_dataset(std::span<const SynthesisInstance> data,
                                             const CorruptionConfig& config);

}  // namespace searchenv
