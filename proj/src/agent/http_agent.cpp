#include "httplib.h"
#include "searchenv/agent/agent.hpp"
#include "searchenv/error.hpp"
#include "searchenv/retrieval/live.hpp"

namespace searchenv {

HttpAgent::HttpAgent(std::string base_url, std::chrono::seconds timeout)
    : base_url_(std::move(base_url)), timeout_(timeout) {
  while (!base_url_.empty() && base_url_.back() == '/') base_url_.pop_back();
}

std::string HttpAgent::call(std::string_view module, const std::string& state) {
  const auto [origin, path] = split_url(base_url_ + "/" + std::string(module));
  httplib::Client client(origin);
  client.set_connection_timeout(timeout_);
  client.set_read_timeout(timeout_);
  const nlohmann::json body{{"v", "v1"}, {"input", state}};
  auto res = client.Post(path, body.dump(), "application/json");
  if (!res) {
    throw Error(ErrorCode::BackendUnavailable,
                "agent endpoint unreachable: " + httplib::to_string(res.error()));
  }
  if (res->status != 200) {
    throw Error(ErrorCode::BackendUnavailable,
                "agent endpoint answered HTTP " + std::to_string(res->status));
  }
  try {
    return nlohmann::json::parse(res->body).at("output").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::BackendUnavailable, std::string("bad agent response: ") + e.what());
  }
}

std::string HttpAgent::action_policy(const std::string& state) { return call("action_policy", state); }
std::string HttpAgent::query_generator(const std::string& state) {
  return call("query_generator", state);
}
std::string HttpAgent::fact_extractor(const std::string& state) {
  return call("fact_extractor", state);
}

}  // namespace searchenv
