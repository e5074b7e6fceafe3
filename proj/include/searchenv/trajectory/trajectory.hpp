#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "searchenv/env/session.hpp"
#include "searchenv/retrieval/snapshot.hpp"

namespace searchenv {

inline constexpr int kTrajectorySchemaVersion = 1;

/// One recorded episode: (question, behaviour, supporting facts, answer)
/// plus what is needed to replay it over stored snapshots.
struct Trajectory {
  std::uint64_t id = 0;
  int schema_version = kTrajectorySchemaVersion;
  std::string question;
  std::size_t max_actions = kDefaultMaxActions;
  std::vector<StepRecord> steps;
  std::vector<SupportingFact> facts;
  std::optional<std::string> answer;
  /// Indices into `facts` the answer relies on.
  std::optional<std::vector<std::size_t>> referenced;
  std::vector<SnapshotRef> snapshots;
  /// "complete", or "failed" when an episode was aborted by the backend.
  std::string status = "complete";

  friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

void to_json(nlohmann::json& j, const Trajectory& t);
void from_json(const nlohmann::json& j, Trajectory& t);

/// Snapshot of a session as a trajectory (id 0 until stored).
Trajectory record_trajectory(const Session& session,
                             std::optional<std::string> answer = std::nullopt,
                             std::optional<std::vector<std::size_t>> referenced = std::nullopt);

/// Canonical one-line JSON (sorted keys, no trailing newline).
std::string trajectory_line(const Trajectory& t);
Trajectory parse_trajectory_line(std::string_view line);

std::vector<Trajectory> load_trajectories(const std::filesystem::path& file);
void save_trajectories(const std::filesystem::path& file, std::span<const Trajectory> items);

/// Re-applies every recorded action to a fresh session over `provider`.
/// Throws whatever the first failing step throws.
std::unique_ptr<Session> replay_trajectory(const Trajectory& t,
                                           std::shared_ptr<SearchProvider> provider);

}  // namespace searchenv
