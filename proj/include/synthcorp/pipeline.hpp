#pragma once

#include "synthcorp/lexicon.hpp"
#include "synthcorp/miner.hpp"
#include "synthcorp/runner.hpp"
#include "synthcorp/scorer.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace synthcorp {

namespace artifacts {
inline constexpr const char* domain = "domain.json";
inline constexpr const char* links = "links.jsonl";
inline constexpr const char* form_map = "formmap.jsonl";
inline constexpr const char* corpus = "corpus.jsonl";
inline constexpr const char* instances = "instances.jsonl";
inline constexpr const char* predictions = "predictions.jsonl";
inline constexpr const char* metrics = "metrics.json";
inline constexpr const char* metrics_table = "metrics.txt";
inline constexpr const char* finetune = "finetune.jsonl";
}  // namespace artifacts

struct PipelineConfig {
  std::string lexicon;
  // Concept ids, or "form:pos:k" for the k-th concept (1-based, id order)
  // with that written form and part of speech.
  std::vector<std::string> roots;
  int depth = 5;
  std::set<RelationKind> relations{RelationKind::hyponym, RelationKind::derivation, RelationKind::topic};
  TraversalOptions traversal;
  bool plural_tolerance = false;
  std::uint64_t seed = 0;
  bool seed_set = false;
  std::string re_template;
  std::string td_template;

  // gold-oracle | english-only-oracle | fixed | remote | replay
  std::string backend = "gold-oracle";
  std::string fixed_answer;
  std::string endpoint = "https://api.openai.com/v1";
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  double price_in_per_1k = 0.0;
  double price_out_per_1k = 0.0;
  std::string cache;  // replay cache file; empty disables caching
  std::optional<double> budget;
  std::size_t max_in_flight = 4;
  int max_retries = 3;
  int backoff_ms = 250;

  std::filesystem::path out_dir = "out";
};

// Throws ConfigError naming the first problem.
void validate_for_lexicon(const PipelineConfig& config);

std::vector<ConceptId> resolve_roots(const Lexicon& lex, const std::vector<std::string>& specs);

// Builds the configured backend, wrapped in a replay cache when one is set.
std::unique_ptr<Backend> make_backend(const PipelineConfig& config);

// Each stage reads upstream artifacts from out_dir (StageDependencyError if
// one is missing) and writes its own.
void stage_mine(const PipelineConfig& config);
void stage_link(const PipelineConfig& config);
void stage_gibberify(const PipelineConfig& config);
void stage_build_tasks(const PipelineConfig& config);

struct RunSummary {
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  double cost = 0.0;
};
RunSummary stage_run(const PipelineConfig& config);

std::vector<MetricsReport> stage_score(const PipelineConfig& config);
void stage_export_finetune(const PipelineConfig& config);

// Summary row: roots, concepts, hypernym pairs, depth.
std::string stage_stats(const PipelineConfig& config);

// mine, link, gibberify, build-tasks, run, score, export-finetune.
RunSummary run_pipeline(const PipelineConfig& config);

}  // namespace synthcorp
