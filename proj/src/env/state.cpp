#include "searchenv/env/state.hpp"

#include "searchenv/digest.hpp"

namespace searchenv {

namespace {

const std::string kEmpty;

}  // namespace

const std::string& SupportingFact::url() const {
  return segments.empty() ? kEmpty : segments.front().url;
}

void to_json(nlohmann::json& j, const HistoryEntry& h) {
  j = nlohmann::json{{"kind", action_name(h.kind)}, {"detail", h.detail}};
}

void from_json(const nlohmann::json& j, HistoryEntry& h) {
  h.kind = action_from_name(j.at("kind").get<std::string>()).value();
  h.detail = j.at("detail").get<std::string>();
}

void to_json(nlohmann::json& j, const SupportingFact& f) {
  auto segments = nlohmann::json::array();
  for (const auto& s : f.segments) {
    segments.push_back({{"url", s.url},
                        {"window", s.window},
                        {"start", s.range.begin},
                        {"end", s.range.end}});
  }
  j = nlohmann::json{{"text", f.text}, {"segments", segments}, {"step", f.step}};
}

void from_json(const nlohmann::json& j, SupportingFact& f) {
  f.text = j.at("text").get<std::string>();
  f.step = j.at("step").get<std::size_t>();
  f.segments.clear();
  for (const auto& s : j.at("segments")) {
    f.segments.push_back({s.at("url").get<std::string>(),
                          s.at("window").get<std::size_t>(),
                          {s.at("start").get<std::size_t>(),
                           s.at("end").get<std::size_t>()}});
  }
}

void to_json(nlohmann::json& j, const SessionState& s) {
  j = nlohmann::json{
      {"question", s.question},
      {"query", s.query},
      {"history", s.history},
      {"previous_window",
       s.previous_window ? window_to_json(*s.previous_window) : nlohmann::json()},
      {"window", window_to_json(s.window)},
      {"facts", s.facts},
      {"max_actions", s.max_actions},
      {"actions_remaining", s.actions_remaining},
      {"finished", s.finished},
      {"return_view",
       s.return_view ? window_to_json(Window(*s.return_view)) : nlohmann::json()},
  };
}

void from_json(const nlohmann::json& j, SessionState& s) {
  s.question = j.at("question").get<std::string>();
  s.query = j.at("query").get<std::string>();
  s.history = j.at("history").get<std::vector<HistoryEntry>>();
  s.previous_window.reset();
  if (!j.at("previous_window").is_null()) {
    s.previous_window = window_from_json(j.at("previous_window"));
  }
  s.window = window_from_json(j.at("window"));
  s.facts = j.at("facts").get<std::vector<SupportingFact>>();
  s.max_actions = j.at("max_actions").get<std::size_t>();
  s.actions_remaining = j.at("actions_remaining").get<std::size_t>();
  s.finished = j.at("finished").get<bool>();
  s.return_view.reset();
  if (!j.at("return_view").is_null()) {
    s.return_view = std::get<SearchView>(window_from_json(j.at("return_view")));
  }
}

std::string canonical_state(const SessionState& s) {
  return nlohmann::json(s).dump();
}

std::string state_digest(const SessionState& s) {
  return short_digest(canonical_state(s));
}

}  // namespace searchenv
