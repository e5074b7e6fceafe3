#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "searchenv/agent/serialize.hpp"
#include "searchenv/agent/span_codec.hpp"
#include "searchenv/env/session.hpp"
#include "searchenv/trajectory/trajectory.hpp"

namespace searchenv {

/// Exact match against the ten canonical action names after trimming
/// surrounding whitespace. Throws UnparseableAction otherwise.
ActionKind parse_action_text(std::string_view text);

/// The three text-to-text modules of a search agent. Each receives the
/// serialized state and answers with plain text: an action name, a query,
/// or a span encoding against the current window.
class AgentModules {
 public:
  virtual ~AgentModules() = default;
  virtual std::string action_policy(const std::string& state) = 0;
  virtual std::string query_generator(const std::string& state) = 0;
  virtual std::string fact_extractor(const std::string& state) = 0;
};

class FunctionAgent final : public AgentModules {
 public:
  using Fn = std::function<std::string(const std::string&)>;
  FunctionAgent(Fn action, Fn query = {}, Fn fact = {});

  std::string action_policy(const std::string& state) override;
  std::string query_generator(const std::string& state) override;
  std::string fact_extractor(const std::string& state) override;

 private:
  Fn action_;
  Fn query_;
  Fn fact_;
};

/// One scripted turn: an action name plus the text the query generator or
/// fact extractor should produce for it.
struct ScriptStep {
  std::string action;
  std::string query;
  std::string span;
};

/// Plays a fixed list of turns. Every action_policy call consumes one turn
/// (rejected turns included); once the script runs out it answers
/// "Finish".
class ScriptedAgent final : public AgentModules {
 public:
  explicit ScriptedAgent(std::vector<ScriptStep> steps);

  std::string action_policy(const std::string& state) override;
  std::string query_generator(const std::string& state) override;
  std::string fact_extractor(const std::string& state) override;

 private:
  std::vector<ScriptStep> steps_;
  std::size_t next_ = 0;
  std::optional<ScriptStep> current_;
};

/// A script file: {"question", "steps": [{"action", "query"?, "span"?}],
/// "answer"?, "referenced"?}. Other keys are ignored.
struct AgentScript {
  std::string question;
  std::vector<ScriptStep> steps;
  std::optional<std::string> answer;
  std::optional<std::vector<std::size_t>> referenced;
};

AgentScript load_agent_script(const std::filesystem::path& file);
AgentScript parse_agent_script(const nlohmann::json& j);

/// Re-enacts a recorded trajectory. It follows the recorded actions and
/// keeps a shadow session so that each Quote can be encoded against the
/// window it was taken from, using the smallest N_f that decodes back to
/// the recorded range.
class TrajectoryAgent final : public AgentModules {
 public:
  TrajectoryAgent(const Trajectory& t, std::shared_ptr<SearchProvider> provider);

  std::string action_policy(const std::string& state) override;
  std::string query_generator(const std::string& state) override;
  std::string fact_extractor(const std::string& state) override;

 private:
  void advance();

  std::vector<Action> actions_;
  std::size_t next_ = 0;
  Session shadow_;
  std::optional<Action> current_;
};

/// Remote modules behind an HTTP endpoint. Each call is
///   POST <base>/<module>   {"v": "v1", "input": <state>}
/// answered by {"output": <text>}, with <module> one of action_policy,
/// query_generator, fact_extractor. Transport failures throw
/// BackendUnavailable.
class HttpAgent final : public AgentModules {
 public:
  explicit HttpAgent(std::string base_url,
                     std::chrono::seconds timeout = std::chrono::seconds(60));

  std::string action_policy(const std::string& state) override;
  std::string query_generator(const std::string& state) override;
  std::string fact_extractor(const std::string& state) override;

 private:
  std::string call(std::string_view module, const std::string& state);

  std::string base_url_;
  std::chrono::seconds timeout_;
};

struct EpisodeOptions {
  /// Retries per turn after an unparseable or rejected agent output; when
  /// they run out the episode is ended with Finish.
  std::size_t retry_limit = 3;
  SerializeOptions serialize;
};

/// Drives `session` with `agent` until Finish or budget exhaustion and
/// returns the recorded trajectory. A backend failure ends the episode
/// early with status "failed".
Trajectory run_episode(AgentModules& agent, Session& session, const EpisodeOptions& options = {});

}  // namespace searchenv
