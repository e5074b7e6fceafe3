#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <string>

#include "searchenv/env/state.hpp"
#include "searchenv/retrieval/provider.hpp"

namespace searchenv {

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::shared_ptr<SearchProvider> provider;
  /// Trajectory store behind POST /record.
  std::filesystem::path store_file = "trajectories.jsonl";
  std::size_t max_actions = kDefaultMaxActions;
};

struct HttpReply {
  int status = 200;
  std::string body;  // JSON
};

/// The v1 JSON API.
///
///   POST /session                {question, max_actions?}
///   GET  /session/{id}
///   POST /session/{id}/action    an action: {kind, query?, start?, end?}
///   POST /session/{id}/undo
///   POST /session/{id}/reset
///   POST /search                 {query, offset?}
///   POST /extract                {url}
///   POST /record                 {session, answer?, referenced?} or {trajectory}
///
/// Every body carries "v": "v1". Session replies hold the id, the full
/// state, its mode, actions_remaining and the legal action names. Errors
/// are {v, code, message}; illegal actions answer 409, failed validation
/// 422 with the violation list. Actions on one session are applied in
/// arrival order; sessions are independent of each other.
class Service {
 public:
  explicit Service(ServiceConfig config);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes one request. Used by the HTTP layer; callable directly.
  HttpReply handle(const std::string& method, const std::string& path, const std::string& body);

  /// Binds the listening socket and returns the port. Throws InvalidInput
  /// when the address cannot be bound.
  int bind();
  /// Serves until stop(). Requires bind().
  void listen();
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace searchenv
