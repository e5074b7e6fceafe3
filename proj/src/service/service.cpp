#include "searchenv/service/service.hpp"

#include <condition_variable>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "httplib.h"
#include "searchenv/env/session.hpp"
#include "searchenv/error.hpp"
#include "searchenv/trajectory/store.hpp"

namespace searchenv {

namespace {

using nlohmann::json;

/// Grants the lock in request order.
class TicketLock {
 public:
  void lock() {
    std::unique_lock lk(mu_);
    const auto ticket = next_++;
    cv_.wait(lk, [&] { return serving_ == ticket; });
  }
  void unlock() {
    {
      std::lock_guard lk(mu_);
      ++serving_;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::uint64_t next_ = 0;
  std::uint64_t serving_ = 0;
};

struct SessionEntry {
  std::unique_ptr<Session> session;
  TicketLock lock;
};

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::IllegalAction:
    case ErrorCode::SessionClosed:
    case ErrorCode::NothingToUndo:
      return 409;
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::ValidationFailed:
      return 422;
    case ErrorCode::UnsupportedContent:
      return 415;
    case ErrorCode::BackendUnavailable:
      return 502;
    default:
      return 400;
  }
}

HttpReply reply(int status, json body) {
  body["v"] = "v1";
  return {status, body.dump()};
}

HttpReply error_reply(const Error& e) {
  json body{{"code", error_code_name(e.code())}, {"message", e.what()}};
  if (const auto* ve = dynamic_cast<const ValidationError*>(&e)) body["violations"] = ve->violations();
  return reply(status_for(e.code()), std::move(body));
}

json session_body(const std::string& id, const Session& s) {
  const auto& st = s.state();
  json legal = json::array();
  for (auto k : s.legal_actions().kinds()) legal.push_back(action_name(k));
  return {{"id", id},
          {"state", st},
          {"mode", mode_name(st.mode())},
          {"actions_remaining", st.actions_remaining},
          {"legal_actions", legal}};
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> out;
  std::size_t start = 1;
  while (start <= path.size()) {
    auto slash = path.find('/', start);
    if (slash == std::string::npos) slash = path.size();
    if (slash > start) out.push_back(path.substr(start, slash - start));
    start = slash + 1;
  }
  return out;
}

json parse_body(const std::string& body) {
  if (body.empty()) return json::object();
  auto j = json::parse(body);
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "request body must be a JSON object");
  return j;
}

}  // namespace

struct Service::Impl {
  explicit Impl(ServiceConfig c) : config(std::move(c)), store(config.store_file) {}

  ServiceConfig config;
  TrajectoryStore store;
  std::mutex sessions_mu;
  std::map<std::string, std::shared_ptr<SessionEntry>> sessions;
  std::uint64_t next_session = 1;
  httplib::Server server;

  std::shared_ptr<SessionEntry> find(const std::string& id) {
    std::lock_guard lk(sessions_mu);
    const auto it = sessions.find(id);
    if (it == sessions.end()) throw Error(ErrorCode::NotFound, "no session " + id);
    return it->second;
  }

  HttpReply create_session(const json& req) {
    const auto question = req.value("question", std::string{});
    const auto max_actions = req.value("max_actions", config.max_actions);
    auto entry = std::make_shared<SessionEntry>();
    entry->session = std::make_unique<Session>(question, max_actions, config.provider);
    std::string id;
    {
      std::lock_guard lk(sessions_mu);
      id = std::to_string(next_session++);
      sessions[id] = entry;
    }
    return reply(200, session_body(id, *entry->session));
  }

  HttpReply session_call(const std::string& id, const std::string& verb, const json& req) {
    auto entry = find(id);
    std::lock_guard lk(entry->lock);
    auto& s = *entry->session;
    if (verb.empty()) return reply(200, session_body(id, s));
    if (verb == "action") {
      const auto action = req.get<Action>();
      const auto obs = s.apply(action);
      auto body = session_body(id, s);
      body["observation"] = obs;
      return reply(200, std::move(body));
    }
    if (verb == "undo") {
      s.undo();
      return reply(200, session_body(id, s));
    }
    if (verb == "reset") {
      s.reset();
      return reply(200, session_body(id, s));
    }
    throw Error(ErrorCode::NotFound, "unknown session operation " + verb);
  }

  HttpReply search(const json& req) {
    const auto query = req.value("query", std::string{});
    const auto offset = req.value("offset", std::size_t{0});
    const auto results = config.provider->search(query, offset);
    return reply(200, {{"query", query}, {"offset", offset}, {"results", results}});
  }

  HttpReply extract(const json& req) {
    const auto url = req.at("url").get<std::string>();
    const auto snap = config.provider->fetch(url);
    return reply(200, {{"url", snap.url},
                       {"title", snap.document.title},
                       {"body", snap.document.body},
                       {"windows", snap.document.windows},
                       {"fetched_at", snap.fetched_at},
                       {"html_digest", snap.html_digest}});
  }

  HttpReply record(const json& req) {
    std::optional<std::string> answer;
    if (req.contains("answer") && !req["answer"].is_null()) answer = req["answer"].get<std::string>();
    std::optional<std::vector<std::size_t>> referenced;
    if (req.contains("referenced") && !req["referenced"].is_null()) {
      referenced = req["referenced"].get<std::vector<std::size_t>>();
    }

    if (req.contains("session")) {
      auto entry = find(req["session"].get<std::string>());
      std::lock_guard lk(entry->lock);
      const auto t = record_trajectory(*entry->session, answer, referenced);
      const auto id = store.append(t, entry->session->snapshots().corpus());
      return reply(200, {{"id", id}});
    }

    auto t = req.at("trajectory").get<Trajectory>();
    if (answer) t.answer = answer;
    if (referenced) t.referenced = referenced;
    // Gather the snapshots by replaying over the configured provider; the
    // store then validates against those snapshots alone.
    FixtureCorpus corpus;
    try {
      Session s(t.question, t.max_actions, config.provider);
      for (const auto& step : t.steps) s.apply(step.action);
      corpus = s.snapshots().corpus();
    } catch (const Error&) {
    }
    const auto id = store.append(t, corpus);
    return reply(200, {{"id", id}});
  }

  HttpReply route(const std::string& method, const std::string& path, const std::string& body) {
    const auto parts = split_path(path);
    const auto req = parse_body(body);
    if (method == "POST" && parts.size() == 1) {
      if (parts[0] == "session") return create_session(req);
      if (parts[0] == "search") return search(req);
      if (parts[0] == "extract") return extract(req);
      if (parts[0] == "record") return record(req);
    }
    if (parts.size() == 2 && parts[0] == "session" && method == "GET") {
      return session_call(parts[1], "", req);
    }
    if (parts.size() == 3 && parts[0] == "session" && method == "POST") {
      return session_call(parts[1], parts[2], req);
    }
    throw Error(ErrorCode::NotFound, "no route for " + method + " " + path);
  }
};

Service::Service(ServiceConfig config) : impl_(std::make_unique<Impl>(std::move(config))) {
  if (!impl_->config.provider) throw Error(ErrorCode::InvalidInput, "service needs a provider");
  auto handler = [this](const httplib::Request& req, httplib::Response& res) {
    const auto r = handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
  };
  // SO_REUSEADDR only: SO_REUSEPORT would let a second service share a busy port.
  impl_->server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  impl_->server.Get(R"(/.*)", handler);
  impl_->server.Post(R"(/.*)", handler);
}

Service::~Service() { stop(); }

HttpReply Service::handle(const std::string& method, const std::string& path,
                          const std::string& body) {
  try {
    return impl_->route(method, path, body);
  } catch (const Error& e) {
    return error_reply(e);
  } catch (const json::exception& e) {
    return error_reply(Error(ErrorCode::InvalidInput, std::string("bad request: ") + e.what()));
  }
}

int Service::bind() {
  auto& c = impl_->config;
  int port = c.port;
  if (port == 0) {
    port = impl_->server.bind_to_any_port(c.host);
  } else if (!impl_->server.bind_to_port(c.host, port)) {
    port = -1;
  }
  if (port < 0) {
    throw Error(ErrorCode::InvalidInput,
                "cannot listen on " + c.host + ":" + std::to_string(c.port) +
                    " (address in use or not permitted)");
  }
  c.port = port;
  return port;
}

void Service::listen() { impl_->server.listen_after_bind(); }

void Service::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace searchenv
