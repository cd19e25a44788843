#include <httplib.h>

#include "synthcorp/errors.hpp"
#include "synthcorp/runner.hpp"

#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <atomic>
#include <filesystem>
#include <sstream>
#include <thread>

using namespace synthcorp;
using namespace synthcorp::testkit;
using namespace std::chrono_literals;

namespace {

std::vector<TaskInstance> sweets_instances() {
  ParallelCorpus c = sweets12_corpus();
  std::vector<TaskInstance> all;
  for (Variant v : {Variant::en, Variant::gib}) {
    auto re = build_relation_extraction(c, v);
    auto td = build_taxonomy_discovery(c, v, 1);
    all.insert(all.end(), re.begin(), re.end());
    all.insert(all.end(), td.begin(), td.end());
  }
  return all;
}

std::string dump(const std::vector<Prediction>& preds) {
  std::ostringstream out;
  write_predictions(out, preds);
  return out.str();
}

// Answers after a delay that depends on the prompt and tracks concurrency.
class SlowBackend : public Backend {
 public:
  std::string id() const override { return "slow"; }
  Answer answer(const TaskInstance& inst) override {
    int now = ++in_flight_;
    int seen = peak_.load();
    while (now > seen && !peak_.compare_exchange_weak(seen, now)) {
    }
    std::this_thread::sleep_for(std::chrono::microseconds(50 + inst.prompt.size() % 300));
    --in_flight_;
    ++calls_;
    return {inst.kind == TaskKind::taxonomy_discovery ? "True" : "[]", 10, 1, 0.5};
  }
  bool metered(const TaskInstance&) const override { return true; }

  std::atomic<int> in_flight_{0};
  std::atomic<int> peak_{0};
  std::atomic<int> calls_{0};
};

class FlakyBackend : public Backend {
 public:
  explicit FlakyBackend(int failures) : failures_(failures) {}
  std::string id() const override { return "flaky"; }
  Answer answer(const TaskInstance&) override {
    if (calls_++ < failures_) throw TransportError("connection reset");
    return {"False"};
  }
  int failures_;
  std::atomic<int> calls_{0};
};

class ThrowingBackend : public Backend {
 public:
  std::string id() const override { return "throwing"; }
  Answer answer(const TaskInstance&) override { throw Error("bad request"); }
};

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name) : path(std::filesystem::temp_directory_path() / name) {
    std::filesystem::remove(path);
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST(Parser, JsonObjects) {
  auto p = parse_re_response(R"([{"subject":"macaron","relation":"is a subclass of","object":"confection"}])");
  EXPECT_FALSE(p.warning);
  EXPECT_EQ(p.triples, (std::set<ParsedTriple>{{"macaron", Relation::subclass_of, "confection"}}));
}

TEST(Parser, WrappedArraysAndProse) {
  auto p = parse_re_response(
      "Sure! Here is the JSON:\n```json\n{\"triples\": [[\"egg white\", \"is a part of\", \"macaron\"], "
      "[\"macaron\", \"subclass_of\", \"cookie\"]]}\n```");
  EXPECT_FALSE(p.warning);
  EXPECT_EQ(p.triples, (std::set<ParsedTriple>{{"egg white", Relation::part_of, "macaron"},
                                               {"macaron", Relation::subclass_of, "cookie"}}));
  EXPECT_TRUE(parse_re_response("[]").triples.empty());
  EXPECT_FALSE(parse_re_response("[]").warning);
}

TEST(Parser, LineFallback) {
  auto p = parse_re_response("I think the answer is\n(Macaron, is a subclass of, confection)\nHope that helps.");
  EXPECT_EQ(p.triples, (std::set<ParsedTriple>{{"Macaron", Relation::subclass_of, "confection"}}));
  EXPECT_FALSE(p.warning);
}

TEST(Parser, Unparseable) {
  auto empty = parse_re_response("");
  EXPECT_TRUE(empty.triples.empty());
  EXPECT_TRUE(empty.warning);
  auto junk = parse_re_response("I cannot answer that {");
  EXPECT_TRUE(junk.triples.empty());
  EXPECT_TRUE(junk.warning);
}

TEST(Parser, TaxonomyAnswers) {
  EXPECT_EQ(parse_td_response("True"), TdAnswer::True);
  EXPECT_EQ(parse_td_response("false."), TdAnswer::False);
  EXPECT_EQ(parse_td_response("  FALSE, because"), TdAnswer::False);
  EXPECT_EQ(parse_td_response("It depends"), TdAnswer::Invalid);
  EXPECT_EQ(parse_td_response("untrue"), TdAnswer::Invalid);
  EXPECT_EQ(parse_td_response("Answer: true or false? True"), TdAnswer::True);
  EXPECT_EQ(parse_td_response(""), TdAnswer::Invalid);
}

TEST(Runner, GoldOracleAnswersEverything) {
  auto inst = sweets_instances();
  GoldOracle oracle;
  auto preds = run(inst, oracle, {});
  ASSERT_EQ(preds.size(), inst.size());
  for (std::size_t i = 1; i < preds.size(); ++i) EXPECT_LT(preds[i - 1].instance_id, preds[i].instance_id);
  for (const auto& p : preds) {
    EXPECT_EQ(p.status, PredictionStatus::ok);
    EXPECT_EQ(p.cost, 0.0);
    EXPECT_FALSE(p.parse_warning) << p.instance_id;
  }
}

TEST(Runner, EnglishOnlyOracle) {
  auto inst = sweets_instances();
  EnglishOnlyOracle oracle;
  for (const auto& p : run(inst, oracle, {})) {
    if (p.instance_id.starts_with("gib:td")) {
      EXPECT_EQ(p.answer, TdAnswer::False);
    } else if (p.instance_id.starts_with("gib:re")) {
      EXPECT_TRUE(p.triples.empty());
    }
  }
}

TEST(Runner, RespectsConcurrencyLimit) {
  auto inst = sweets_instances();
  for (std::size_t limit : {1u, 3u, 8u}) {
    SlowBackend backend;
    RunOptions o;
    o.max_in_flight = limit;
    auto preds = run(inst, backend, o);
    EXPECT_LE(backend.peak_.load(), static_cast<int>(limit));
    EXPECT_EQ(backend.calls_.load(), static_cast<int>(inst.size()));
    EXPECT_EQ(preds.size(), inst.size());
  }
}

TEST(Runner, BudgetStopsMeteredRequests) {
  auto inst = sweets_instances();
  SlowBackend backend;
  RunOptions o;
  o.budget = 0.0;
  auto none = run(inst, backend, o);
  EXPECT_EQ(backend.calls_.load(), 0);
  for (const auto& p : none) EXPECT_EQ(p.status, PredictionStatus::skipped);

  SlowBackend some;
  o.budget = 2.0;
  o.max_in_flight = 1;
  auto part = run(inst, some, o);
  EXPECT_EQ(some.calls_.load(), 4);
  std::size_t skipped = 0;
  for (const auto& p : part) skipped += p.status == PredictionStatus::skipped;
  EXPECT_EQ(skipped, inst.size() - 4);
}

TEST(Runner, RemoteBackendWithZeroBudgetMakesNoCall) {
  auto inst = sweets_instances();
  RemoteChat remote({"http://127.0.0.1:9", "m", "", 1.0, 1.0, 1});
  RunOptions o;
  o.budget = 0.0;
  for (const auto& p : run(inst, remote, o)) EXPECT_EQ(p.status, PredictionStatus::skipped);
}

TEST(Runner, RetriesTransportFailures) {
  std::vector<TaskInstance> one{sweets_instances().back()};
  RunOptions o;
  o.backoff = 1ms;
  FlakyBackend recovers(3);
  auto ok = run(one, recovers, o);
  EXPECT_EQ(ok[0].status, PredictionStatus::ok);
  EXPECT_EQ(recovers.calls_.load(), 4);

  FlakyBackend gives_up(10);
  auto failed = run(one, gives_up, o);
  EXPECT_EQ(failed[0].status, PredictionStatus::failed);
  EXPECT_EQ(gives_up.calls_.load(), 4);
  EXPECT_NE(failed[0].error.find("connection reset"), std::string::npos);

  ThrowingBackend bad;
  auto no_retry = run(one, bad, o);
  EXPECT_EQ(no_retry[0].status, PredictionStatus::failed);
}

TEST(Runner, RejectsBadOptions) {
  GoldOracle g;
  EXPECT_THROW(run({}, g, {}), ConfigError);
  RunOptions o;
  o.max_in_flight = 0;
  EXPECT_THROW(run(sweets_instances(), g, o), ConfigError);
}

TEST(Runner, PredictionFileRoundTrip) {
  auto inst = sweets_instances();
  FixedAnswer fixed("(a, is a subclass of, b) True");
  auto preds = run(inst, fixed, {});
  std::string text = dump(preds);
  std::istringstream in(text);
  auto back = read_predictions(in);
  EXPECT_EQ(dump(back), text);
}

TEST(ReplayCache, ByteIdenticalReplayWithoutInnerBackend) {
  TempFile cache("synthcorp_replay_test.jsonl");
  auto inst = sweets_instances();
  std::string first;
  {
    auto slow = std::make_unique<SlowBackend>();
    auto* raw = slow.get();
    ReplayCache warm(cache.path.string(), std::move(slow));
    RunOptions o;
    o.max_in_flight = 16;
    first = dump(run(inst, warm, o));
    warm.save();
    EXPECT_EQ(raw->calls_.load(), static_cast<int>(inst.size()));
    EXPECT_EQ(warm.misses(), inst.size());
  }
  for (std::size_t limit : {1u, 16u}) {
    ReplayCache replay(cache.path.string(), nullptr);
    RunOptions o;
    o.max_in_flight = limit;
    o.budget = 0.0;  // cached answers are free
    EXPECT_EQ(dump(run(inst, replay, o)), first);
    EXPECT_EQ(replay.hits(), inst.size());
    EXPECT_EQ(replay.id(), "slow");
  }
  ReplayCache empty((cache.path.string() + ".missing"), nullptr);
  auto preds = run(inst, empty, {});
  for (const auto& p : preds) EXPECT_EQ(p.status, PredictionStatus::failed);
}

TEST(RemoteChat, TalksToOpenAiCompatibleServer) {
  httplib::Server server;
  std::atomic<int> requests{0};
  std::string seen_auth, seen_model;
  double seen_temperature = -1;
  server.Post("/v1/chat/completions", [&](const httplib::Request& req, httplib::Response& res) {
    ++requests;
    seen_auth = req.get_header_value("Authorization");
    auto body = nlohmann::json::parse(req.body);
    seen_model = body["model"];
    seen_temperature = body["temperature"];
    std::string prompt = body["messages"][0]["content"];
    nlohmann::json reply = {{"choices", {{{"message", {{"role", "assistant"}, {"content", "True"}}}}}}};
    if (prompt.find("A:") != std::string::npos) reply["usage"] = {{"prompt_tokens", 1000}, {"completion_tokens", 500}};
    res.set_content(reply.dump(), "application/json");
  });
  server.Post("/broken/chat/completions",
              [](const httplib::Request&, httplib::Response& res) { res.status = 503; });
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread t([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  TaskInstance inst;
  inst.id = "en:td:x";
  inst.kind = TaskKind::taxonomy_discovery;
  inst.prompt = "A: x";
  RemoteChat chat({"http://127.0.0.1:" + std::to_string(port) + "/v1/", "tiny", "sk-test", 0.002, 0.004, 5});
  EXPECT_EQ(chat.id(), "remote:tiny");
  Answer a = chat.answer(inst);
  EXPECT_EQ(a.raw, "True");
  EXPECT_EQ(a.input_tokens, 1000u);
  EXPECT_EQ(a.output_tokens, 500u);
  EXPECT_NEAR(a.cost, 0.002 + 0.002, 1e-12);
  EXPECT_EQ(seen_auth, "Bearer sk-test");
  EXPECT_EQ(seen_model, "tiny");
  EXPECT_EQ(seen_temperature, 0.0);

  inst.prompt = std::string(10, 'x');
  Answer est = chat.answer(inst);
  EXPECT_EQ(est.input_tokens, 3u);
  EXPECT_EQ(est.output_tokens, 1u);

  RemoteChat broken({"http://127.0.0.1:" + std::to_string(port) + "/broken", "tiny", "", 0, 0, 5});
  EXPECT_THROW(broken.answer(inst), TransportError);
  RunOptions o;
  o.backoff = 1ms;
  int before = requests.load();
  auto preds = run({inst}, broken, o);
  EXPECT_EQ(preds[0].status, PredictionStatus::failed);
  EXPECT_EQ(requests.load(), before);

  server.stop();
  t.join();
}

TEST(RemoteChat, RejectsBadEndpoint) {
  EXPECT_THROW(RemoteChat({.endpoint = "localhost:8000", .model = "m", .api_key = ""}), ConfigError);
  EXPECT_THROW(RemoteChat({.endpoint = "http://localhost:8000", .model = "", .api_key = ""}), ConfigError);
}
