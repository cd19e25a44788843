#pragma once

#include "synthcorp/tasks.hpp"

#include <chrono>
#include <compare>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace synthcorp {

struct ParsedTriple {
  std::string subject;
  Relation relation = Relation::subclass_of;
  std::string object;

  auto operator<=>(const ParsedTriple&) const = default;
};

struct RelationParse {
  std::set<ParsedTriple> triples;
  bool warning = false;
};

enum class TdAnswer { True, False, Invalid };

std::string_view td_answer_name(TdAnswer a);

// Reads triples from a JSON answer (array of {subject, relation, object}
// objects or [s, r, o] arrays, optionally wrapped in an object); falls back
// to "(A, is a subclass of, B)" lines. Never throws.
RelationParse parse_re_response(std::string_view raw);

// First standalone "true"/"false" word, case-insensitive.
TdAnswer parse_td_response(std::string_view raw);

struct Answer {
  std::string raw;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  double cost = 0.0;
};

// Answer source. Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual std::string id() const = 0;
  // Throws TransportError for retryable delivery failures.
  virtual Answer answer(const TaskInstance& instance) = 0;
  // Whether answering this instance would spend budget.
  virtual bool metered(const TaskInstance&) const { return false; }
};

// Answers exactly the instance gold.
class GoldOracle : public Backend {
 public:
  std::string id() const override { return "gold-oracle"; }
  Answer answer(const TaskInstance& instance) override;
};

// Gold on English instances, an uninformative answer on gibberish ones.
class EnglishOnlyOracle : public Backend {
 public:
  std::string id() const override { return "english-only-oracle"; }
  Answer answer(const TaskInstance& instance) override;
};

class FixedAnswer : public Backend {
 public:
  explicit FixedAnswer(std::string raw) : raw_(std::move(raw)) {}
  std::string id() const override { return "fixed"; }
  Answer answer(const TaskInstance&) override { return {raw_}; }

 private:
  std::string raw_;
};

// Prompt-keyed answer cache. With an inner backend, misses are forwarded and
// recorded; without one, misses fail. Cached answers are returned verbatim.
class ReplayCache : public Backend {
 public:
  // Loads `path` if it exists. `inner` may be null.
  ReplayCache(std::string path, std::unique_ptr<Backend> inner);

  std::string id() const override;
  Answer answer(const TaskInstance& instance) override;
  bool metered(const TaskInstance& instance) const override;

  // Writes the cache, sorted by key.
  void save() const;
  std::size_t hits() const;
  std::size_t misses() const;

  static std::string key_for(std::string_view prompt);

 private:
  struct Record {
    std::string backend;
    Answer answer;
  };

  std::string path_;
  std::unique_ptr<Backend> inner_;
  mutable std::mutex mu_;
  std::map<std::string, Record> records_;
  std::string recorded_backend_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;
};

struct RemoteChatConfig {
  std::string endpoint;  // base URL, e.g. http://localhost:8000/v1
  std::string model;
  std::string api_key;
  double price_in_per_1k = 0.0;
  double price_out_per_1k = 0.0;
  int timeout_seconds = 120;
};

// OpenAI-compatible chat-completions client (temperature 0, one user message).
class RemoteChat : public Backend {
 public:
  explicit RemoteChat(RemoteChatConfig config);
  std::string id() const override { return "remote:" + config_.model; }
  Answer answer(const TaskInstance& instance) override;
  bool metered(const TaskInstance&) const override { return true; }

  // Token estimate used when the endpoint reports no usage: ceil(chars / 4).
  static std::size_t estimate_tokens(std::string_view s) { return (s.size() + 3) / 4; }

 private:
  RemoteChatConfig config_;
  std::string base_;  // scheme://host[:port]
  std::string path_;  // path prefix before /chat/completions
};

enum class PredictionStatus { ok, failed, skipped };
std::string_view status_name(PredictionStatus s);

struct Prediction {
  std::string instance_id;
  TaskKind kind = TaskKind::relation_extraction;
  std::string backend_id;
  std::string raw;
  std::set<ParsedTriple> triples;
  TdAnswer answer = TdAnswer::Invalid;
  bool parse_warning = false;
  PredictionStatus status = PredictionStatus::ok;
  std::string error;
  std::size_t input_tokens = 0;
  std::size_t output_tokens = 0;
  double cost = 0.0;
  double latency_ms = 0.0;  // not serialized

  nlohmann::json to_json() const;
  static Prediction from_json(const nlohmann::json& j);
};

struct RunOptions {
  std::size_t max_in_flight = 4;
  std::optional<double> budget;  // cost ceiling; unlimited when empty
  int max_retries = 3;
  std::chrono::milliseconds backoff{250};  // doubled after each retry
};

// Answers every instance with at most `max_in_flight` outstanding requests.
// Once the accumulated cost reaches the budget, metered instances are marked
// skipped. Results are sorted by instance id.
std::vector<Prediction> run(const std::vector<TaskInstance>& instances, Backend& backend, const RunOptions& options);

void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions);
std::vector<Prediction> read_predictions(std::istream& in);

}  // namespace synthcorp
