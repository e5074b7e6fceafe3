#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "searchenv/env/action.hpp"
#include "searchenv/env/window.hpp"

namespace searchenv {

inline constexpr std::size_t kDefaultMaxActions = 100;

/// History entry. `detail` is the query for Search and the page title for
/// the LoadPage kinds; empty otherwise.
struct HistoryEntry {
  ActionKind kind = ActionKind::Finish;
  std::string detail;

  friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

/// A quoted piece of one browsing window: `range` indexes that window's text.
struct FactSegment {
  std::string url;
  std::size_t window = 0;
  CharRange range;

  friend bool operator==(const FactSegment&, const FactSegment&) = default;
};

/// Invariant: `text` is the in-order concatenation of the segment texts.
struct SupportingFact {
  std::string text;
  std::vector<FactSegment> segments;
  std::size_t step = 0;  // index of the action that created it

  const std::string& url() const;
  friend bool operator==(const SupportingFact&, const SupportingFact&) = default;
};

struct SessionState {
  std::string question;
  std::string query;
  std::vector<HistoryEntry> history;
  std::optional<Window> previous_window;
  Window window = SearchView{};
  std::vector<SupportingFact> facts;
  std::size_t max_actions = kDefaultMaxActions;
  std::size_t actions_remaining = kDefaultMaxActions;
  bool finished = false;
  /// Search view that was current when the open page was loaded.
  std::optional<SearchView> return_view;

  Mode mode() const { return window_mode(window); }
  bool closed() const { return finished || actions_remaining == 0; }
  std::size_t steps_taken() const { return max_actions - actions_remaining; }

  friend bool operator==(const SessionState&, const SessionState&) = default;
};

void to_json(nlohmann::json& j, const HistoryEntry& h);
void from_json(const nlohmann::json& j, HistoryEntry& h);
void to_json(nlohmann::json& j, const SupportingFact& f);
void from_json(const nlohmann::json& j, SupportingFact& f);
void to_json(nlohmann::json& j, const SessionState& s);
void from_json(const nlohmann::json& j, SessionState& s);

/// Canonical serialization (sorted keys, compact). Equal states serialize to
/// equal bytes.
std::string canonical_state(const SessionState& s);
std::string state_digest(const SessionState& s);

}  // namespace searchenv
