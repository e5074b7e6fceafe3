#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "httplib.h"
#include "toy_corpus.hpp"
#include "searchenv/error.hpp"
#include "searchenv/service/cli.hpp"
#include "searchenv/service/service.hpp"
#include "searchenv/trajectory/store.hpp"

using namespace searchenv;
using nlohmann::json;
using searchenv::testing::toy_corpus;
using searchenv::testing::toy_provider;

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("searchenv_svc_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// A service on a free local port, served from a background thread.
class LiveService {
 public:
  explicit LiveService(const fs::path& store) {
    ServiceConfig c;
    c.port = 0;
    c.provider = toy_provider();
    c.store_file = store;
    service_ = std::make_unique<Service>(c);
    port_ = service_->bind();
    thread_ = std::thread([this] { service_->listen(); });
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    while (!client_->Get("/session/none")) std::this_thread::yield();
  }
  ~LiveService() {
    service_->stop();
    thread_.join();
  }

  std::pair<int, json> post(const std::string& path, const json& body = json::object()) {
    auto res = client_->Post(path, body.dump(), "application/json");
    REQUIRE(res);
    return {res->status, json::parse(res->body)};
  }
  std::pair<int, json> get(const std::string& path) {
    auto res = client_->Get(path);
    REQUIRE(res);
    return {res->status, json::parse(res->body)};
  }
  int port() const { return port_; }

 private:
  std::unique_ptr<Service> service_;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
  int port_ = 0;
};

int cli(const std::vector<std::string>& args, std::string* out = nullptr, std::string* err = nullptr) {
  std::ostringstream o, e;
  const int rc = run_cli(args, o, e);
  if (out) *out = o.str();
  if (err) *err = e.str();
  return rc;
}

const std::string kFixtures = SEARCHENV_FIXTURES_DIR;

}  // namespace

TEST_CASE("POST /session, actions, undo and reset over HTTP") {
  const auto dir = scratch_dir("session");
  LiveService svc(dir / "store.jsonl");

  auto [status, body] = svc.post("/session", {{"question", "麦田怪圈是什么？"}});
  REQUIRE(status == 200);
  CHECK(body["v"] == "v1");
  CHECK(body["actions_remaining"] == 100);
  CHECK(body["mode"] == "search");
  CHECK(body["legal_actions"] == json::array({"Search", "Finish"}));
  const auto id = body["id"].get<std::string>();

  auto [qs, quote] = svc.post("/session/" + id + "/action", {{"kind", "Quote"}, {"start", 0}, {"end", 1}});
  CHECK(qs == 409);
  CHECK(quote["code"] == "illegal_action");
  CHECK(quote["v"] == "v1");
  CHECK(svc.get("/session/" + id).second["state"] == body["state"]);

  auto [ss, searched] = svc.post("/session/" + id + "/action", {{"kind", "Search"}, {"query", "crop circles"}});
  CHECK(ss == 200);
  CHECK(searched["actions_remaining"] == 99);
  CHECK(searched["mode"] == "search");
  CHECK(searched["observation"]["key"] == "crop circles");

  auto [ls, loaded] = svc.post("/session/" + id + "/action", {{"kind", "Load Page <2>"}});
  CHECK(ls == 200);
  CHECK(loaded["mode"] == "browsing");
  CHECK(loaded["actions_remaining"] == 98);

  auto [us, undone] = svc.post("/session/" + id + "/undo");
  CHECK(us == 200);
  CHECK(undone["state"] == searched["state"]);
  CHECK(undone["actions_remaining"] == 99);

  auto [rs, reset] = svc.post("/session/" + id + "/reset");
  CHECK(rs == 200);
  CHECK(reset["state"] == body["state"]);
  CHECK(svc.post("/session/" + id + "/undo").second["code"] == "nothing_to_undo");
}

TEST_CASE("service error replies") {
  const auto dir = scratch_dir("errors");
  LiveService svc(dir / "store.jsonl");
  CHECK(svc.post("/session", {{"question", ""}}).second["code"] == "invalid_question");
  CHECK(svc.post("/session", {{"question", ""}}).first == 400);
  CHECK(svc.get("/session/42").first == 404);
  CHECK(svc.post("/nowhere").first == 404);
  CHECK(svc.post("/search", {{"query", ""}}).second["code"] == "invalid_query");

  httplib::Client raw("127.0.0.1", svc.port());
  auto res = raw.Post("/session", "{not json", "application/json");
  REQUIRE(res);
  CHECK(res->status == 400);
  CHECK(json::parse(res->body)["code"] == "invalid_input");

  const auto id = svc.post("/session", {{"question", "q"}, {"max_actions", 1}}).second["id"].get<std::string>();
  CHECK(svc.post("/session/" + id + "/action", {{"kind", "Dance"}}).second["code"] == "unparseable_action");
  CHECK(svc.post("/session/" + id + "/action", {{"kind", "Finish"}}).first == 200);
  auto [cs, closed] = svc.post("/session/" + id + "/action", {{"kind", "Finish"}});
  CHECK(cs == 409);
  CHECK(closed["code"] == "session_closed");
}

TEST_CASE("POST /search and /extract") {
  const auto dir = scratch_dir("search");
  LiveService svc(dir / "store.jsonl");
  auto [s1, results] = svc.post("/search", {{"query", "crop circles"}, {"offset", 3}});
  CHECK(s1 == 200);
  REQUIRE(results["results"].size() == 3);
  CHECK(results["results"][0]["url"] == searchenv::testing::toy_url(3));

  auto [s2, page] = svc.post("/extract", {{"url", searchenv::testing::toy_url(0)}});
  CHECK(s2 == 200);
  CHECK(page["title"] == "Page zero");
  CHECK(page["windows"].size() == 3);
  CHECK(page["body"].get<std::string>().find('<') == std::string::npos);
  CHECK(svc.post("/extract", {{"url", "https://missing.example/"}}).first == 502);
}

TEST_CASE("POST /record: HTTP-driven session equals the in-process one") {
  const auto dir = scratch_dir("record");
  LiveService svc(dir / "store.jsonl");
  const std::vector<json> actions{
      {{"kind", "Search"}, {"query", "crop circles"}}, {{"kind", "Scroll Down"}},
      {{"kind", "Load Page <1>"}},                      {{"kind", "Quote"}, {"start", 4}, {"end", 90}},
      {{"kind", "Go Back"}},                            {{"kind", "Scroll Up"}},
      {{"kind", "Load Page <1>"}},                      {{"kind", "Scroll Down"}},
      {{"kind", "Quote"}, {"start", 0}, {"end", 12}},  {{"kind", "Merge"}},
      {{"kind", "Finish"}}};

  const auto id = svc.post("/session", {{"question", "crop circles?"}}).second["id"].get<std::string>();
  Session local("crop circles?", 100, toy_provider());
  for (const auto& a : actions) {
    CHECK(svc.post("/session/" + id + "/action", a).first == 200);
    local.apply(a.get<Action>());
  }
  auto [rs, rec] = svc.post("/record", {{"session", id}, {"answer", "an answer"}, {"referenced", {0}}});
  REQUIRE(rs == 200);
  CHECK(rec["id"] == 1);

  auto stored = TrajectoryStore(dir / "store.jsonl").load();
  REQUIRE(stored.size() == 1);
  auto expected = record_trajectory(local, "an answer", std::vector<std::size_t>{0});
  expected.id = 1;
  CHECK(trajectory_line(stored[0]) == trajectory_line(expected));

  // Submitting a full trajectory works too; a broken one is refused with 422.
  auto [ts, again] = svc.post("/record", {{"trajectory", json(expected)}});
  CHECK(ts == 200);
  CHECK(again["id"] == 2);

  auto broken = expected;
  broken.facts[0].text = "tampered";
  auto [bs, bad] = svc.post("/record", {{"trajectory", json(broken)}});
  CHECK(bs == 422);
  CHECK(bad["code"] == "validation_failed");
  REQUIRE(bad["violations"].size() == 1);
  CHECK(bad["violations"][0]["code"] == "fact mismatch");

  const auto open = svc.post("/session", {{"question", "q"}}).second["id"].get<std::string>();
  auto [us, unterminated] = svc.post("/record", {{"session", open}});
  CHECK(us == 422);
  CHECK(unterminated["violations"][0]["code"] == "unterminated");
  CHECK(TrajectoryStore(dir / "store.jsonl").load().size() == 2);
}

TEST_CASE("concurrent requests: one session stays consistent, sessions are independent") {
  const auto dir = scratch_dir("concurrent");
  LiveService svc(dir / "store.jsonl");
  const auto shared = svc.post("/session", {{"question", "q"}}).second["id"].get<std::string>();
  std::vector<std::thread> workers;
  std::atomic<int> ok{0};
  for (int w = 0; w < 4; ++w) {
    workers.emplace_back([&, w] {
      httplib::Client c("127.0.0.1", svc.port());
      const auto own = json::parse(c.Post("/session", json{{"question", "own"}}.dump(), "application/json")->body)["id"]
                           .get<std::string>();
      for (int i = 0; i < 10; ++i) {
        const json a{{"kind", "Search"}, {"query", "wheat " + std::to_string(w)}};
        if (c.Post("/session/" + shared + "/action", a.dump(), "application/json")->status == 200) ++ok;
        c.Post("/session/" + own + "/action", a.dump(), "application/json");
      }
      const auto mine = json::parse(c.Get("/session/" + own)->body);
      CHECK(mine["actions_remaining"] == 90);
    });
  }
  for (auto& t : workers) t.join();
  const auto state = svc.get("/session/" + shared).second;
  CHECK(ok == 40);
  CHECK(state["actions_remaining"] == 60);
  CHECK(state["state"]["history"].size() == 40);
}

TEST_CASE("bind fails on a busy port") {
  const auto dir = scratch_dir("busy");
  LiveService first(dir / "a.jsonl");
  ServiceConfig c;
  c.port = first.port();
  c.provider = toy_provider();
  c.store_file = dir / "b.jsonl";
  Service second(c);
  CHECK_THROWS_AS(second.bind(), Error);
}

TEST_CASE("cli: usage errors") {
  std::string out, err;
  CHECK(cli({"frobnicate"}, &out, &err) == 2);
  CHECK(err.find("unknown subcommand 'frobnicate'") != std::string::npos);
  CHECK(err.find("Subcommands:") != std::string::npos);
  CHECK(cli({}, &out, &err) == 2);
  CHECK(cli({"stats"}, &out, &err) == 2);
  CHECK(cli({"--help"}, &out, &err) == 0);
  CHECK(out.find("validate") != std::string::npos);
  CHECK(cli({"stats", "/nonexistent.jsonl"}, &out, &err) == 1);
  CHECK_FALSE(err.empty());
}

TEST_CASE("cli: stats, validate and replay on the crop-circle trajectory") {
  const auto episode = kFixtures + "/crop_circles_episode.jsonl";
  const auto corpus = kFixtures + "/crop_circles";
  std::string out, err;
  REQUIRE(cli({"stats", episode}, &out, &err) == 0);
  const auto stats = json::parse(out);
  CHECK(stats["mean_actions"] == 40.0);
  CHECK(stats["mean_queries"] == 2.0);
  CHECK(stats["mean_page_loads"] == 3.0);
  CHECK(stats["mean_facts"] == 4.0);

  CHECK(cli({"validate", episode, "--corpus", corpus}, &out, &err) == 0);
  CHECK(json::parse(out)["violations"].empty());
  CHECK(cli({"replay", episode, "--corpus", corpus}, &out, &err) == 0);
  CHECK(json::parse(out)["facts"] == 4);

  // Without a corpus the store's own snapshot directory is used, and there
  // is none for this file.
  CHECK(cli({"validate", episode}, &out, &err) == 1);
  CHECK(json::parse(out)["violations"][0]["code"] == "missing snapshot");
}

TEST_CASE("cli: run into a store, then validate, split and corrupt it") {
  const auto dir = scratch_dir("cli_run");
  const auto store = (dir / "runs.jsonl").string();
  const auto script = kFixtures + "/crop_circles_script.json";
  const auto corpus = kFixtures + "/crop_circles";
  std::string out, err;
  for (int i = 1; i <= 3; ++i) {
    REQUIRE(cli({"run", "--script", script, "--corpus", corpus, "--out", store}, &out, &err) == 0);
    CHECK(json::parse(out)["id"] == i);
  }
  CHECK(cli({"validate", store}, &out, &err) == 0);
  CHECK(cli({"replay", store}, &out, &err) == 0);

  REQUIRE(cli({"split", store, "--train", "2", "--dev", "1", "--seed", "4"}, &out, &err) == 0);
  const auto sp = json::parse(out);
  CHECK(sp["train"].size() == 2);
  CHECK(sp["dev"].size() == 1);
  CHECK(sp["test"].empty());
  CHECK(cli({"split", store, "--train", "4"}, &out, &err) == 1);
  CHECK(err.find("invalid_split") != std::string::npos);

  REQUIRE(cli({"corrupt", store, "--noise", "2", "--erase-p", "0", "--seed", "1"}, &out, &err) == 0);
  std::istringstream lines(out);
  std::string line;
  int n = 0;
  while (std::getline(lines, line)) {
    const auto r = json::parse(line);
    CHECK(r["facts"].size() == 6);
    ++n;
  }
  CHECK(n == 3);
  CHECK(cli({"corrupt", store, "--erase-p", "2"}, &out, &err) == 2);

  // A printed (not stored) run is a single trajectory line.
  REQUIRE(cli({"run", "--script", script, "--corpus", corpus}, &out, &err) == 0);
  CHECK(parse_trajectory_line(out.substr(0, out.size() - 1)).steps.size() == 40);
  CHECK(cli({"run", "--corpus", corpus}, &out, &err) == 2);
}

TEST_CASE("cli: eval") {
  const auto dir = scratch_dir("cli_eval");
  std::ofstream(dir / "gold.jsonl") << R"({"action":"Search"})" "\n" R"({"action":"Quote"})" "\n";
  std::ofstream(dir / "pred.jsonl") << R"({"action":"Search"})" "\n" R"({"action":"Merge"})" "\n";
  std::string out, err;
  REQUIRE(cli({"eval", "--task", "action", (dir / "gold.jsonl").string(), (dir / "pred.jsonl").string()},
              &out, &err) == 0);
  const auto report = json::parse(out);
  CHECK(report["v"] == "v1");
  CHECK(report["micro_f1"] == 0.5);
  CHECK(cli({"eval", "--task", "vibes", "a", "b"}, &out, &err) == 2);
}
