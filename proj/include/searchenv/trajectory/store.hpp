#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "json.hpp"
#include "searchenv/error.hpp"
#include "searchenv/trajectory/trajectory.hpp"

namespace searchenv {

/// A validation finding. `code` is one of the kViolation* strings;
/// `detail` says where.
struct Violation {
  std::string code;
  std::string detail;

  friend bool operator==(const Violation&, const Violation&) = default;
};

inline constexpr const char* kViolationSchema = "schema";
inline constexpr const char* kViolationBudget = "budget exceeded";
inline constexpr const char* kViolationIllegalStep = "illegal step";
inline constexpr const char* kViolationMissingSnapshot = "missing snapshot";
inline constexpr const char* kViolationDigest = "digest mismatch";
inline constexpr const char* kViolationUnterminated = "unterminated";
inline constexpr const char* kViolationFacts = "fact mismatch";
inline constexpr const char* kViolationReference = "bad reference";

void to_json(nlohmann::json& j, const Violation& v);

/// Replays `t` over `provider` and checks every recorded invariant.
/// Empty result iff the trajectory is valid.
std::vector<Violation> validate_trajectory(const Trajectory& t,
                                           std::shared_ptr<SearchProvider> provider);

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Append-only JSON Lines store. The snapshots of trajectory <id> live in
/// "<file>.snapshots/<id>/" using the fixture-corpus layout, so replay and
/// validation read nothing but that trajectory's own snapshots. Ids are
/// assigned on append and increase monotonically. One writer per file.
class TrajectoryStore {
 public:
  explicit TrajectoryStore(std::filesystem::path file);

  const std::filesystem::path& file() const { return file_; }
  std::filesystem::path snapshot_root() const;
  std::filesystem::path snapshot_dir(std::uint64_t id) const;

  /// Stores `snapshots`, validates `t` against them and appends it with
  /// the next id. Throws ValidationError on any violation, leaving the
  /// store unchanged.
  std::uint64_t append(Trajectory t, const FixtureCorpus& snapshots);
  std::uint64_t append(Trajectory t) { return append(std::move(t), FixtureCorpus{}); }

  std::vector<Trajectory> load() const;

 private:
  std::filesystem::path file_;
  std::mutex mu_;
  std::uint64_t next_id_ = 1;
};

}  // namespace searchenv
