#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"
#include "searchenv/env/action.hpp"
#include "searchenv/env/state.hpp"
#include "searchenv/retrieval/snapshot.hpp"

namespace searchenv {

/// What the agent sees after a step, reduced to a digest and a pointer into
/// the snapshot store. The full window is recoverable by replay.
struct Observation {
  Mode mode = Mode::Search;
  std::string window_digest;
  std::string key;  // query (search) or url (browsing)
  std::size_t position = 0;  // result offset or window index

  friend bool operator==(const Observation&, const Observation&) = default;
};

Observation observe(const Window& w);

void to_json(nlohmann::json& j, const Observation& o);
void from_json(const nlohmann::json& j, Observation& o);

struct StepOutcome {
  SessionState state;
  Observation observation;
};

/// Fresh state. Throws InvalidQuestion on an empty question and
/// InvalidInput when max_actions is zero.
SessionState initial_state(std::string question,
                           std::size_t max_actions = kDefaultMaxActions);

ActionSet legal_actions(const SessionState& state);

/// The transition function. Pure in (state, action, backend responses).
/// Throws SessionClosed once the session has finished or run out of
/// budget, IllegalAction for anything else legal_actions() excludes or a
/// malformed payload, and BackendUnavailable / InvalidQuery from the
/// backend. `state` is never modified.
StepOutcome apply_action(const SessionState& state, const Action& action,
                         SnapshotCache& backend);

struct StepRecord {
  std::string pre_state;  // state_digest before the action
  Action action;
  Observation observation;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

void to_json(nlohmann::json& j, const StepRecord& s);
void from_json(const nlohmann::json& j, StepRecord& s);

/// A live session: the current state, the recorded steps, an undo stack
/// and the session's snapshot cache. Single writer; callers serialize
/// access.
class Session {
 public:
  Session(std::string question, std::size_t max_actions,
          std::shared_ptr<SearchProvider> provider);

  const SessionState& state() const { return state_; }
  ActionSet legal_actions() const { return searchenv::legal_actions(state_); }

  /// Applies and records `action`. On any error the session is unchanged.
  const Observation& apply(const Action& action);

  /// Drops the last recorded action and refunds its budget.
  void undo();
  /// Back to the initial state; recorded steps are discarded.
  void reset();

  const std::vector<StepRecord>& steps() const { return steps_; }
  SnapshotCache& snapshots() { return cache_; }
  const SnapshotCache& snapshots() const { return cache_; }

 private:
  SessionState initial_;
  SessionState state_;
  std::vector<SessionState> undo_stack_;
  std::vector<StepRecord> steps_;
  SnapshotCache cache_;
};

}  // namespace searchenv
