#include "searchenv/service/cli.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>

#include "CLI11.hpp"
#include "searchenv/agent/agent.hpp"
#include "searchenv/error.hpp"
#include "searchenv/eval/metrics.hpp"
#include "searchenv/retrieval/fixture.hpp"
#include "searchenv/retrieval/live.hpp"
#include "searchenv/service/service.hpp"
#include "searchenv/synthesis/synthesis.hpp"
#include "searchenv/trajectory/stats.hpp"
#include "searchenv/trajectory/store.hpp"

namespace searchenv {

namespace fs = std::filesystem;

namespace {

struct ProviderOptions {
  std::string kind = "fixture";
  std::string corpus;
  std::string blocklist;
  std::string endpoint = LiveProviderConfig{}.endpoint;
};

void add_provider_options(CLI::App* cmd, ProviderOptions& o) {
  cmd->add_option("--provider", o.kind, "Search backend")
      ->check(CLI::IsMember({"live", "fixture"}))
      ->capture_default_str();
  cmd->add_option("--corpus", o.corpus, "Fixture corpus directory");
  cmd->add_option("--blocklist", o.blocklist, "File of blocked domain suffixes, one per line");
  cmd->add_option("--endpoint", o.endpoint, "Search API endpoint (live provider)")
      ->capture_default_str();
}

std::shared_ptr<SearchProvider> make_provider(const ProviderOptions& o) {
  Blocklist blocklist;
  if (!o.blocklist.empty()) blocklist = Blocklist::load(o.blocklist);
  if (o.kind == "live") {
    LiveProviderConfig config;
    config.endpoint = o.endpoint;
    return std::make_shared<LiveProvider>(config, std::move(blocklist));
  }
  if (o.corpus.empty()) throw Error(ErrorCode::InvalidInput, "--provider fixture needs --corpus");
  return std::make_shared<FixtureProvider>(fs::path(o.corpus), std::move(blocklist));
}

/// Snapshots for `t`: an explicit corpus, else the store's own directory.
std::shared_ptr<SearchProvider> replay_provider(const std::string& corpus, const fs::path& file,
                                                const Trajectory& t) {
  if (!corpus.empty()) return std::make_shared<FixtureProvider>(fs::path(corpus));
  return std::make_shared<FixtureProvider>(TrajectoryStore(file).snapshot_dir(t.id));
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  f << text;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  return in;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interactive web-search environment: sessions, trajectories, corruption, metrics",
               "searchenv"};
  app.require_subcommand(1);

  // serve
  auto* serve = app.add_subcommand("serve", "Run the HTTP JSON service");
  ProviderOptions serve_provider;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string serve_store = "trajectories.jsonl";
  std::size_t serve_max_actions = kDefaultMaxActions;
  add_provider_options(serve, serve_provider);
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--store", serve_store, "Trajectory store for /record")->capture_default_str();
  serve->add_option("--max-actions", serve_max_actions)->capture_default_str();

  // run
  auto* run = app.add_subcommand("run", "Run one agent episode");
  ProviderOptions run_provider;
  std::string script_file;
  std::string agent_url;
  std::string question;
  std::string run_out;
  std::size_t run_max_actions = kDefaultMaxActions;
  std::size_t retries = EpisodeOptions{}.retry_limit;
  add_provider_options(run, run_provider);
  auto* script_opt = run->add_option("--script", script_file, "Scripted agent (JSON)");
  run->add_option("--agent-url", agent_url, "Remote agent modules base URL")->excludes(script_opt);
  run->add_option("--question", question, "Question (overrides the script's)");
  run->add_option("--max-actions", run_max_actions)->capture_default_str();
  run->add_option("--retries", retries)->capture_default_str();
  run->add_option("--out", run_out, "Append to this trajectory store instead of printing");

  // replay / validate / stats
  auto* replay = app.add_subcommand("replay", "Replay stored trajectories");
  std::string replay_file;
  std::string replay_corpus;
  replay->add_option("file", replay_file)->required();
  replay->add_option("--corpus", replay_corpus, "Snapshot corpus (default: the store's own)");

  auto* validate = app.add_subcommand("validate", "Check stored trajectories");
  std::string validate_file;
  std::string validate_corpus;
  validate->add_option("file", validate_file)->required();
  validate->add_option("--corpus", validate_corpus, "Snapshot corpus (default: the store's own)");

  auto* stats = app.add_subcommand("stats", "Dataset statistics as JSON");
  std::string stats_file;
  stats->add_option("file", stats_file)->required();

  // split
  auto* split = app.add_subcommand("split", "Seeded train/dev/test split of trajectory ids");
  std::string split_file;
  SplitSizes sizes;
  std::uint64_t split_seed = 0;
  split->add_option("file", split_file)->required();
  split->add_option("--train", sizes.train)->required();
  split->add_option("--dev", sizes.dev)->capture_default_str();
  split->add_option("--test", sizes.test)->capture_default_str();
  split->add_option("--seed", split_seed)->capture_default_str();

  // corrupt
  auto* corrupt = app.add_subcommand("corrupt", "Build corrupted synthesis records");
  std::string corrupt_file;
  std::string corrupt_out;
  std::optional<std::size_t> noise;
  CorruptionConfig corruption;
  corrupt->add_option("file", corrupt_file)->required();
  corrupt->add_option("--noise", noise, "Fixed number of injected facts");
  corrupt->add_option("--erase-p", corruption.erase_p, "Sub-sentence erasure probability")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  corrupt->add_option("--punctuation", corruption.punctuation)->capture_default_str();
  corrupt->add_option("--seed", corruption.seed)->capture_default_str();
  corrupt->add_option("--out", corrupt_out, "Output JSONL (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "Score predictions against references");
  std::string task_name;
  std::string gold_file;
  std::string pred_file;
  std::string denominator = "candidate";
  eval->add_option("--task", task_name)
      ->required()
      ->check(CLI::IsMember({"action", "query", "fact", "synthesis"}));
  eval->add_option("gold", gold_file)->required();
  eval->add_option("pred", pred_file)->required();
  eval->add_option("--novelty-denominator", denominator)
      ->check(CLI::IsMember({"candidate", "facts"}))
      ->capture_default_str();

  if (!args.empty() && !args[0].starts_with("-")) {
    bool known = false;
    for (const auto* sub : app.get_subcommands({})) known = known || sub->get_name() == args[0];
    if (!known) {
      err << "searchenv: unknown subcommand '" << args[0] << "'\n\n" << app.help();
      return 2;
    }
  }

  std::vector<std::string> argv_store{"searchenv"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "searchenv: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (*serve) {
      ServiceConfig config;
      config.host = host;
      config.port = port;
      config.provider = make_provider(serve_provider);
      config.store_file = serve_store;
      config.max_actions = serve_max_actions;
      Service service(config);
      const int bound = service.bind();
      err << "listening on " << host << ":" << bound << "\n";
      service.listen();
      return 0;
    }

    if (*run) {
      if (script_file.empty() && agent_url.empty()) {
        err << "searchenv run: one of --script or --agent-url is required\n";
        return 2;
      }
      std::unique_ptr<AgentModules> agent;
      std::optional<AgentScript> script;
      if (!script_file.empty()) {
        script = load_agent_script(script_file);
        if (question.empty()) question = script->question;
        agent = std::make_unique<ScriptedAgent>(script->steps);
      } else {
        agent = std::make_unique<HttpAgent>(agent_url);
      }
      Session session(question, run_max_actions, make_provider(run_provider));
      EpisodeOptions options;
      options.retry_limit = retries;
      auto t = run_episode(*agent, session, options);
      if (script) {
        t.answer = script->answer;
        t.referenced = script->referenced;
      }
      if (t.status == "failed") {
        err << "searchenv run: episode aborted by a backend failure\n";
        out << trajectory_line(t) << "\n";
        return 1;
      }
      if (run_out.empty()) {
        out << trajectory_line(t) << "\n";
      } else {
        TrajectoryStore store(run_out);
        const auto id = store.append(t, session.snapshots().corpus());
        out << nlohmann::json{{"v", "v1"}, {"id", id}}.dump() << "\n";
      }
      return 0;
    }

    if (*replay) {
      int status = 0;
      for (const auto& t : load_trajectories(replay_file)) {
        try {
          const auto s = replay_trajectory(t, replay_provider(replay_corpus, replay_file, t));
          out << nlohmann::json{{"id", t.id},
                                {"state_digest", state_digest(s->state())},
                                {"facts", s->state().facts.size()},
                                {"steps", t.steps.size()}}
                     .dump()
              << "\n";
        } catch (const Error& e) {
          err << "trajectory " << t.id << ": " << e.what() << "\n";
          status = 1;
        }
      }
      return status;
    }

    if (*validate) {
      int status = 0;
      for (const auto& t : load_trajectories(validate_file)) {
        std::vector<Violation> violations;
        try {
          violations = validate_trajectory(t, replay_provider(validate_corpus, validate_file, t));
        } catch (const Error& e) {
          violations.push_back({kViolationMissingSnapshot, e.what()});
        }
        if (!violations.empty()) status = 1;
        out << nlohmann::json{{"id", t.id}, {"violations", violations}}.dump() << "\n";
      }
      return status;
    }

    if (*stats) {
      const auto data = load_trajectories(stats_file);
      out << stats_to_json(compute_stats(data)).dump(2) << "\n";
      return 0;
    }

    if (*split) {
      std::vector<std::uint64_t> ids;
      for (const auto& t : load_trajectories(split_file)) ids.push_back(t.id);
      const auto sp = split_dataset(ids, sizes, split_seed);
      out << nlohmann::json{{"v", "v1"},
                            {"seed", split_seed},
                            {"train", sp.train},
                            {"dev", sp.dev},
                            {"test", sp.test}}
                 .dump()
          << "\n";
      return 0;
    }

    if (*corrupt) {
      corruption.noise_count = noise;
      std::vector<SynthesisInstance> data;
      for (const auto& t : load_trajectories(corrupt_file)) data.push_back(instance_from_trajectory(t));
      std::string text;
      for (const auto& r : corrupt_dataset(data, corruption)) text += nlohmann::json(r).dump() + "\n";
      write_output(corrupt_out, text, out);
      return 0;
    }

    if (*eval) {
      auto gold = open_input(gold_file);
      auto pred = open_input(pred_file);
      const auto report =
          evaluate_jsonl(*eval_task_from_name(task_name), gold, pred,
                         denominator == "facts" ? NoveltyDenominator::Facts
                                                : NoveltyDenominator::Candidate);
      out << report.dump(2) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "searchenv: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "searchenv: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace searchenv
