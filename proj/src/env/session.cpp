#include "searchenv/env/session.hpp"

#include "searchenv/digest.hpp"
#include "searchenv/error.hpp"
#include "searchenv/utf8.hpp"

namespace searchenv {

namespace {

bool is_blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

SearchView make_search_view(SnapshotCache& backend, const std::string& query,
                            std::size_t offset) {
  SearchView v;
  v.query = query;
  v.offset = offset;
  v.results = backend.search(query, offset);
  v.has_more = v.results.size() == kResultsPerWindow &&
               !backend.search(query, offset + kResultsPerWindow).empty();
  return v;
}

std::string illegal_reason(const SessionState& s, ActionKind kind) {
  const bool browsing = s.mode() == Mode::Browsing;
  switch (kind) {
    case ActionKind::LoadPage1:
    case ActionKind::LoadPage2:
    case ActionKind::LoadPage3:
      return browsing ? "pages can only be loaded in search mode"
                      : "no result in that slot";
    case ActionKind::ScrollDown: return "already at the last window";
    case ActionKind::ScrollUp: return "already at the first window";
    case ActionKind::Quote:
      return browsing ? "window is empty" : "quote requires browsing mode";
    case ActionKind::GoBack: return "no page is loaded";
    case ActionKind::Merge: return "merge needs at least two facts";
    default: return "not allowed in this state";
  }
}

[[noreturn]] void reject(ActionKind kind, const std::string& reason) {
  throw Error(ErrorCode::IllegalAction,
              std::string(action_name(kind)) + ": " + reason);
}

}  // namespace

Observation observe(const Window& w) {
  Observation o;
  o.mode = window_mode(w);
  o.window_digest = short_digest(window_to_json(w).dump());
  if (const auto* s = std::get_if<SearchView>(&w)) {
    o.key = s->query;
    o.position = s->offset;
  } else {
    const auto& p = std::get<PageView>(w);
    o.key = p.url;
    o.position = p.index;
  }
  return o;
}

void to_json(nlohmann::json& j, const Observation& o) {
  j = nlohmann::json{{"mode", mode_name(o.mode)},
                     {"window", o.window_digest},
                     {"key", o.key},
                     {"position", o.position}};
}

void from_json(const nlohmann::json& j, Observation& o) {
  o.mode = j.at("mode") == "search" ? Mode::Search : Mode::Browsing;
  o.window_digest = j.at("window").get<std::string>();
  o.key = j.at("key").get<std::string>();
  o.position = j.at("position").get<std::size_t>();
}

void to_json(nlohmann::json& j, const StepRecord& s) {
  j = nlohmann::json{{"pre_state", s.pre_state},
                     {"action", s.action},
                     {"observation", s.observation}};
}

void from_json(const nlohmann::json& j, StepRecord& s) {
  s.pre_state = j.at("pre_state").get<std::string>();
  s.action = j.at("action").get<Action>();
  s.observation = j.at("observation").get<Observation>();
}

SessionState initial_state(std::string question, std::size_t max_actions) {
  if (is_blank(question)) {
    throw Error(ErrorCode::InvalidQuestion, "question must not be empty");
  }
  if (max_actions == 0) {
    throw Error(ErrorCode::InvalidInput, "max_actions must be at least 1");
  }
  SessionState s;
  s.question = std::move(question);
  s.max_actions = max_actions;
  s.actions_remaining = max_actions;
  return s;
}

ActionSet legal_actions(const SessionState& s) {
  ActionSet set;
  if (s.closed()) return set;
  set.insert(ActionKind::Search);
  set.insert(ActionKind::Finish);
  if (s.facts.size() >= 2) set.insert(ActionKind::Merge);
  if (const auto* sv = std::get_if<SearchView>(&s.window)) {
    for (int i = 1; i <= static_cast<int>(kResultsPerWindow); ++i) {
      if (static_cast<std::size_t>(i) <= sv->results.size()) {
        set.insert(load_page_kind(i));
      }
    }
    if (sv->has_more) set.insert(ActionKind::ScrollDown);
    if (sv->offset > 0) set.insert(ActionKind::ScrollUp);
  } else {
    const auto& pv = std::get<PageView>(s.window);
    if (!pv.text.empty()) set.insert(ActionKind::Quote);
    if (pv.index + 1 < pv.count) set.insert(ActionKind::ScrollDown);
    if (pv.index > 0) set.insert(ActionKind::ScrollUp);
    if (s.return_view) set.insert(ActionKind::GoBack);
  }
  return set;
}

StepOutcome apply_action(const SessionState& state, const Action& action,
                         SnapshotCache& backend) {
  if (state.closed()) {
    throw Error(ErrorCode::SessionClosed,
                state.finished ? "session has finished" : "action budget exhausted");
  }
  const ActionKind kind = action.kind;
  if (!legal_actions(state).contains(kind)) reject(kind, illegal_reason(state, kind));

  SessionState next = state;
  HistoryEntry entry{kind, {}};

  switch (kind) {
    case ActionKind::Search: {
      if (is_blank(action.query)) reject(kind, "empty query");
      next.window = make_search_view(backend, action.query, 0);
      next.query = action.query;
      next.return_view.reset();
      entry.detail = action.query;
      break;
    }
    case ActionKind::LoadPage1:
    case ActionKind::LoadPage2:
    case ActionKind::LoadPage3: {
      const auto& sv = std::get<SearchView>(state.window);
      const auto& result = sv.results.at(load_page_index(kind) - 1);
      const auto& snap = backend.page(result.url);
      next.window = page_view(snap.document, 0);
      next.return_view = sv;
      entry.detail = snap.document.title;
      break;
    }
    case ActionKind::ScrollDown:
    case ActionKind::ScrollUp: {
      const bool down = kind == ActionKind::ScrollDown;
      if (const auto* sv = std::get_if<SearchView>(&state.window)) {
        const auto offset = down ? sv->offset + kResultsPerWindow
                                 : sv->offset - kResultsPerWindow;
        next.window = make_search_view(backend, sv->query, offset);
      } else {
        const auto& pv = std::get<PageView>(state.window);
        const auto& snap = backend.page(pv.url);
        next.window = page_view(snap.document, down ? pv.index + 1 : pv.index - 1);
      }
      break;
    }
    case ActionKind::Quote: {
      const auto& pv = std::get<PageView>(state.window);
      const auto len = utf8::length(pv.text);
      const auto& r = action.range;
      if (r.begin >= r.end || r.end > len) {
        reject(kind, "quote range [" + std::to_string(r.begin) + ", " +
                         std::to_string(r.end) + ") is not inside the " +
                         std::to_string(len) + "-character window");
      }
      SupportingFact fact;
      fact.text = utf8::substr(pv.text, r.begin, r.size());
      fact.segments.push_back({pv.url, pv.index, r});
      fact.step = state.steps_taken();
      next.facts.push_back(std::move(fact));
      break;
    }
    case ActionKind::GoBack: {
      next.window = *state.return_view;
      next.return_view.reset();
      break;
    }
    case ActionKind::Merge: {
      SupportingFact second = std::move(next.facts.back());
      next.facts.pop_back();
      SupportingFact first = std::move(next.facts.back());
      next.facts.pop_back();
      SupportingFact merged;
      merged.text = first.text + second.text;
      merged.segments = std::move(first.segments);
      merged.segments.insert(merged.segments.end(), second.segments.begin(),
                             second.segments.end());
      merged.step = state.steps_taken();
      next.facts.push_back(std::move(merged));
      break;
    }
    case ActionKind::Finish:
      next.finished = true;
      break;
  }

  next.previous_window = state.window;
  next.history.push_back(std::move(entry));
  next.actions_remaining -= 1;
  Observation obs = observe(next.window);
  return {std::move(next), std::move(obs)};
}

Session::Session(std::string question, std::size_t max_actions,
                 std::shared_ptr<SearchProvider> provider)
    : initial_(initial_state(std::move(question), max_actions)),
      state_(initial_),
      cache_(std::move(provider)) {}

const Observation& Session::apply(const Action& action) {
  auto pre = state_digest(state_);
  auto outcome = apply_action(state_, action, cache_);
  undo_stack_.push_back(std::move(state_));
  state_ = std::move(outcome.state);
  Action recorded = action;
  if (recorded.kind != ActionKind::Search) recorded.query.clear();
  if (recorded.kind != ActionKind::Quote) recorded.range = {};
  steps_.push_back({std::move(pre), std::move(recorded), std::move(outcome.observation)});
  return steps_.back().observation;
}

void Session::undo() {
  if (steps_.empty()) throw Error(ErrorCode::NothingToUndo, "no action to undo");
  state_ = std::move(undo_stack_.back());
  undo_stack_.pop_back();
  steps_.pop_back();
}

void Session::reset() {
  state_ = initial_;
  undo_stack_.clear();
  steps_.clear();
}

}  // namespace searchenv
