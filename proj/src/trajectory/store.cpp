#include "searchenv/trajectory/store.hpp"

#include <algorithm>
#include <fstream>

#include "searchenv/retrieval/fixture.hpp"

namespace searchenv {

namespace fs = std::filesystem;

namespace {

std::string step_label(std::size_t i) { return "step " + std::to_string(i + 1); }

std::string join_violations(const std::vector<Violation>& vs) {
  std::string out = "trajectory failed validation:";
  for (const auto& v : vs) out += " [" + v.code + ": " + v.detail + "]";
  return out;
}

}  // namespace

void to_json(nlohmann::json& j, const Violation& v) {
  j = nlohmann::json{{"code", v.code}, {"detail", v.detail}};
}

std::vector<Violation> validate_trajectory(const Trajectory& t,
                                           std::shared_ptr<SearchProvider> provider) {
  std::vector<Violation> out;
  if (t.schema_version != kTrajectorySchemaVersion) {
    out.push_back({kViolationSchema,
                   "unsupported schema_version " + std::to_string(t.schema_version)});
    return out;
  }
  std::unique_ptr<Session> session;
  try {
    session = std::make_unique<Session>(t.question, t.max_actions, std::move(provider));
  } catch (const Error& e) {
    out.push_back({kViolationSchema, e.what()});
    return out;
  }

  std::size_t replayable = t.steps.size();
  if (t.steps.size() > t.max_actions) {
    out.push_back({kViolationBudget, std::to_string(t.steps.size()) + " actions recorded, limit " +
                                         std::to_string(t.max_actions)});
    replayable = t.max_actions;
  }

  bool replayed = true;
  for (std::size_t i = 0; i < replayable; ++i) {
    const auto& step = t.steps[i];
    if (step.pre_state != state_digest(session->state())) {
      out.push_back({kViolationDigest, step_label(i) + ": pre-state differs"});
    }
    try {
      const auto& obs = session->apply(step.action);
      if (!(obs == step.observation)) {
        out.push_back({kViolationDigest, step_label(i) + ": observation differs"});
      }
    } catch (const Error& e) {
      const bool rule = e.code() == ErrorCode::IllegalAction || e.code() == ErrorCode::SessionClosed;
      out.push_back({rule ? kViolationIllegalStep : kViolationMissingSnapshot,
                     step_label(i) + ": " + e.what()});
      replayed = false;
      break;
    }
  }
  if (!replayed) return out;

  const auto& final_state = session->state();
  if (!final_state.closed()) {
    out.push_back({kViolationUnterminated, "last step is neither Finish nor budget exhaustion"});
  }
  if (final_state.facts.size() != t.facts.size()) {
    out.push_back({kViolationFacts, std::to_string(t.facts.size()) + " facts recorded, replay gives " +
                                        std::to_string(final_state.facts.size())});
  } else {
    for (std::size_t i = 0; i < t.facts.size(); ++i) {
      if (!(final_state.facts[i] == t.facts[i])) {
        out.push_back({kViolationFacts, "fact " + std::to_string(i + 1) +
                                            " differs from the quoted window text"});
        break;
      }
    }
  }
  if (t.referenced) {
    for (auto idx : *t.referenced) {
      if (idx >= t.facts.size()) {
        out.push_back({kViolationReference, "referenced fact index " + std::to_string(idx) +
                                                " out of range"});
      }
    }
  }
  return out;
}

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(ErrorCode::ValidationFailed, join_violations(violations)),
      violations_(std::move(violations)) {}

TrajectoryStore::TrajectoryStore(fs::path file) : file_(std::move(file)) {
  if (fs::exists(file_)) {
    for (const auto& t : load_trajectories(file_)) next_id_ = std::max(next_id_, t.id + 1);
  }
}

fs::path TrajectoryStore::snapshot_root() const { return fs::path(file_.string() + ".snapshots"); }

fs::path TrajectoryStore::snapshot_dir(std::uint64_t id) const {
  return snapshot_root() / std::to_string(id);
}

std::uint64_t TrajectoryStore::append(Trajectory t, const FixtureCorpus& snapshots) {
  std::lock_guard lock(mu_);
  const auto dir = snapshot_dir(next_id_);
  fs::remove_all(dir);
  write_fixture_corpus(dir, snapshots);
  auto violations = validate_trajectory(t, std::make_shared<FixtureProvider>(dir));
  if (!violations.empty()) {
    fs::remove_all(dir);
    throw ValidationError(std::move(violations));
  }
  t.id = next_id_;
  const auto line = trajectory_line(t) + "\n";
  {
    std::ofstream out(file_, std::ios::binary | std::ios::app);
    if (!out) throw Error(ErrorCode::InvalidInput, "cannot append to " + file_.string());
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    out.flush();
    if (!out) throw Error(ErrorCode::InvalidInput, "write failed for " + file_.string());
  }
  return next_id_++;
}

std::vector<Trajectory> TrajectoryStore::load() const {
  if (!fs::exists(file_)) return {};
  return load_trajectories(file_);
}

}  // namespace searchenv
