#include "searchenv/trajectory/trajectory.hpp"

#include <fstream>

#include "searchenv/error.hpp"

namespace searchenv {

void to_json(nlohmann::json& j, const Trajectory& t) {
  j = nlohmann::json{
      {"id", t.id},
      {"schema_version", t.schema_version},
      {"question", t.question},
      {"max_actions", t.max_actions},
      {"steps", t.steps},
      {"facts", t.facts},
      {"answer", t.answer ? nlohmann::json(*t.answer) : nlohmann::json()},
      {"referenced", t.referenced ? nlohmann::json(*t.referenced) : nlohmann::json()},
      {"snapshots", t.snapshots},
      {"status", t.status},
  };
}

void from_json(const nlohmann::json& j, Trajectory& t) {
  t.id = j.at("id").get<std::uint64_t>();
  t.schema_version = j.at("schema_version").get<int>();
  t.question = j.at("question").get<std::string>();
  t.max_actions = j.at("max_actions").get<std::size_t>();
  t.steps = j.at("steps").get<std::vector<StepRecord>>();
  t.facts = j.at("facts").get<std::vector<SupportingFact>>();
  t.answer.reset();
  if (j.contains("answer") && !j["answer"].is_null()) t.answer = j["answer"].get<std::string>();
  t.referenced.reset();
  if (j.contains("referenced") && !j["referenced"].is_null()) {
    t.referenced = j["referenced"].get<std::vector<std::size_t>>();
  }
  t.snapshots = j.value("snapshots", std::vector<SnapshotRef>{});
  t.status = j.value("status", std::string("complete"));
}

Trajectory record_trajectory(const Session& session, std::optional<std::string> answer,
                             std::optional<std::vector<std::size_t>> referenced) {
  Trajectory t;
  t.question = session.state().question;
  t.max_actions = session.state().max_actions;
  t.steps = session.steps();
  t.facts = session.state().facts;
  t.answer = std::move(answer);
  t.referenced = std::move(referenced);
  t.snapshots = session.snapshots().refs();
  return t;
}

std::string trajectory_line(const Trajectory& t) { return nlohmann::json(t).dump(); }

Trajectory parse_trajectory_line(std::string_view line) {
  try {
    return nlohmann::json::parse(line).get<Trajectory>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed trajectory: ") + e.what());
  } catch (const std::bad_optional_access&) {
    throw Error(ErrorCode::InvalidInput, "malformed trajectory: unknown action kind");
  }
}

std::vector<Trajectory> load_trajectories(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + file.string());
  std::vector<Trajectory> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_trajectory_line(line));
    } catch (const Error& e) {
      throw Error(e.code(), file.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

void save_trajectories(const std::filesystem::path& file, std::span<const Trajectory> items) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::InvalidInput, "cannot write " + file.string());
  for (const auto& t : items) out << trajectory_line(t) << '\n';
}

std::unique_ptr<Session> replay_trajectory(const Trajectory& t,
                                           std::shared_ptr<SearchProvider> provider) {
  auto session = std::make_unique<Session>(t.question, t.max_actions, std::move(provider));
  for (const auto& step : t.steps) session->apply(step.action);
  return session;
}

}  // namespace searchenv
