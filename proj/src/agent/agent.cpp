#include "searchenv/agent/agent.hpp"

#include <fstream>

#include "searchenv/error.hpp"

namespace searchenv {

namespace {

std::string_view trim(std::string_view s) {
  constexpr std::string_view kSpace = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(kSpace);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(kSpace);
  return s.substr(b, e - b + 1);
}

bool retryable(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnparseableAction:
    case ErrorCode::IllegalAction:
    case ErrorCode::SpanNotFound:
    case ErrorCode::InvalidSpan:
    case ErrorCode::InvalidQuery:
    case ErrorCode::UnsupportedContent:
      return true;
    default:
      return false;
  }
}

}  // namespace

ActionKind parse_action_text(std::string_view text) {
  const auto t = trim(text);
  if (auto kind = action_from_name(t)) return *kind;
  throw Error(ErrorCode::UnparseableAction, "not an action name: \"" + std::string(t) + "\"");
}

FunctionAgent::FunctionAgent(Fn action, Fn query, Fn fact)
    : action_(std::move(action)), query_(std::move(query)), fact_(std::move(fact)) {}

std::string FunctionAgent::action_policy(const std::string& state) { return action_(state); }
std::string FunctionAgent::query_generator(const std::string& state) {
  return query_ ? query_(state) : std::string();
}
std::string FunctionAgent::fact_extractor(const std::string& state) {
  return fact_ ? fact_(state) : std::string();
}

ScriptedAgent::ScriptedAgent(std::vector<ScriptStep> steps) : steps_(std::move(steps)) {}

std::string ScriptedAgent::action_policy(const std::string&) {
  if (next_ >= steps_.size()) {
    current_.reset();
    return std::string(action_name(ActionKind::Finish));
  }
  current_ = steps_[next_++];
  return current_->action;
}

std::string ScriptedAgent::query_generator(const std::string&) {
  return current_ ? current_->query : std::string();
}

std::string ScriptedAgent::fact_extractor(const std::string&) {
  return current_ ? current_->span : std::string();
}

AgentScript parse_agent_script(const nlohmann::json& j) {
  try {
    AgentScript s;
    s.question = j.at("question").get<std::string>();
    for (const auto& step : j.at("steps")) {
      s.steps.push_back({step.at("action").get<std::string>(), step.value("query", ""),
                         step.value("span", "")});
    }
    if (j.contains("answer") && !j["answer"].is_null()) s.answer = j["answer"].get<std::string>();
    if (j.contains("referenced") && !j["referenced"].is_null()) {
      s.referenced = j["referenced"].get<std::vector<std::size_t>>();
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed agent script: ") + e.what());
  }
}

AgentScript load_agent_script(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + file.string());
  try {
    return parse_agent_script(nlohmann::json::parse(in));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidInput, file.string() + ": " + e.what());
  }
}

TrajectoryAgent::TrajectoryAgent(const Trajectory& t, std::shared_ptr<SearchProvider> provider)
    : shadow_(t.question, t.max_actions, std::move(provider)) {
  for (const auto& step : t.steps) actions_.push_back(step.action);
}

void TrajectoryAgent::advance() {
  if (!current_) return;
  try {
    shadow_.apply(*current_);
  } catch (const Error&) {
    // The real session rejected it too; the shadow stays in step.
  }
  current_.reset();
}

std::string TrajectoryAgent::action_policy(const std::string&) {
  advance();
  if (next_ >= actions_.size()) return std::string(action_name(ActionKind::Finish));
  current_ = actions_[next_++];
  return std::string(action_name(current_->kind));
}

std::string TrajectoryAgent::query_generator(const std::string&) {
  return current_ ? current_->query : std::string();
}

std::string TrajectoryAgent::fact_extractor(const std::string&) {
  if (!current_) return {};
  const auto* page = std::get_if<PageView>(&shadow_.state().window);
  if (!page) return {};
  const auto range = current_->range;
  for (std::size_t n = 1; n <= range.size(); ++n) {
    auto enc = encode_fact_span(page->text, range, n);
    try {
      if (decode_fact_span(page->text, enc) == range) return enc;
    } catch (const Error&) {
    }
  }
  return encode_fact_span(page->text, range, range.size());
}

Trajectory run_episode(AgentModules& agent, Session& session, const EpisodeOptions& options) {
  while (!session.state().closed()) {
    std::size_t failures = 0;
    while (true) {
      const auto text = serialize_state(session.state(), options.serialize);
      try {
        Action action = Action::of(parse_action_text(agent.action_policy(text)));
        if (action.kind == ActionKind::Search) {
          action.query = std::string(trim(agent.query_generator(text)));
        } else if (action.kind == ActionKind::Quote) {
          const auto* page = std::get_if<PageView>(&session.state().window);
          if (!page) throw Error(ErrorCode::IllegalAction, "Quote outside browsing mode");
          action.range = decode_fact_span(page->text, agent.fact_extractor(text));
        }
        session.apply(action);
        break;
      } catch (const Error& e) {
        if (!retryable(e.code())) {
          auto t = record_trajectory(session);
          t.status = "failed";
          return t;
        }
        if (++failures > options.retry_limit) {
          session.apply(Action::of(ActionKind::Finish));
          break;
        }
      }
    }
  }
  return record_trajectory(session);
}

}  // namespace searchenv
