// synthcorp: build gibberish parallel corpora from a lexicon and evaluate
// answer backends on them.
#include "synthcorp/errors.hpp"
#include "synthcorp/pipeline.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>

using namespace synthcorp;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitStage = 2;
constexpr int kExitRun = 3;

int report_run(const RunSummary& s) {
  std::printf("predictions: %zu ok, %zu failed, %zu skipped, cost %.4f\n", s.ok, s.failed, s.skipped, s.cost);
  return s.failed + s.skipped > 0 ? kExitRun : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gibberish parallel corpus builder and ontology-learning evaluator"};
  app.set_config("--config", "", "key = value configuration file (any option below)");
  app.require_subcommand(1);

  PipelineConfig cfg;
  std::vector<std::string> relations{"hyponym", "derivation", "topic"};
  std::optional<std::uint64_t> seed;
  bool literal_taxonomy = false;
  bool lateral_forward_only = false;

  app.add_option("--lexicon", cfg.lexicon, "lexicon JSONL file");
  app.add_option("--roots", cfg.roots, "root concept ids or form:pos:k selectors")->delimiter(',');
  app.add_option("--depth", cfg.depth, "maximal exploration depth")->check(CLI::NonNegativeNumber);
  app.add_option("--relations", relations, "relation kinds followed while mining")->delimiter(',');
  app.add_flag("--literal-taxonomy", literal_taxonomy, "follow hypernym/hyponym edges in their own direction");
  app.add_flag("--lateral-forward-only", lateral_forward_only, "follow derivation/topic edges one way only");
  app.add_flag("--plural-tolerance", cfg.plural_tolerance, "link forms followed by s/es");
  app.add_option("--seed", seed, "seed for every random choice");
  app.add_option("--re-template", cfg.re_template, "relation extraction prompt template file");
  app.add_option("--td-template", cfg.td_template, "taxonomy discovery prompt template file");
  app.add_option("--backend", cfg.backend, "gold-oracle | english-only-oracle | fixed | remote | replay");
  app.add_option("--fixed-answer", cfg.fixed_answer, "answer returned by the fixed backend");
  app.add_option("--endpoint", cfg.endpoint, "OpenAI-compatible base URL");
  app.add_option("--model", cfg.model, "remote model name");
  app.add_option("--api-key-env", cfg.api_key_env, "environment variable holding the API key");
  app.add_option("--price-in", cfg.price_in_per_1k, "cost per 1k input tokens");
  app.add_option("--price-out", cfg.price_out_per_1k, "cost per 1k output tokens");
  app.add_option("--cache", cfg.cache, "replay cache file");
  app.add_option("--budget", cfg.budget, "cost ceiling for metered requests");
  app.add_option("--max-in-flight", cfg.max_in_flight, "concurrent requests")->check(CLI::PositiveNumber);
  app.add_option("--max-retries", cfg.max_retries, "retries after a transport failure");
  app.add_option("--backoff-ms", cfg.backoff_ms, "first retry delay in milliseconds");
  std::string out_dir = cfg.out_dir.string();
  app.add_option("--out", out_dir, "artifact directory");

  auto sub = [&](const char* name, const char* help) { return app.add_subcommand(name, help)->fallthrough(); };
  auto* mine = sub("mine", "mine the domain (domain.json)");
  auto* link = sub("link", "link definitions to domain forms (links.jsonl)");
  auto* gibberify = sub("gibberify", "propagate gibberish (corpus.jsonl, formmap.jsonl)");
  auto* build = sub("build-tasks", "build task instances (instances.jsonl)");
  auto* run_cmd = sub("run", "answer instances with the backend (predictions.jsonl)");
  auto* score = sub("score", "score predictions (metrics.json, metrics.txt)");
  auto* finetune = sub("export-finetune", "fine-tuning split (finetune.jsonl)");
  auto* stats = sub("stats", "print domain statistics");
  auto* pipeline = sub("pipeline", "run every stage in order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    cfg.out_dir = out_dir;
    cfg.seed_set = seed.has_value();
    cfg.seed = seed.value_or(0);
    cfg.traversal.taxonomic_downward = !literal_taxonomy;
    cfg.traversal.lateral_bidirectional = !lateral_forward_only;
    cfg.relations.clear();
    for (const auto& r : relations) cfg.relations.insert(parse_relation(r));

    if (mine->parsed()) stage_mine(cfg);
    if (link->parsed()) stage_link(cfg);
    if (gibberify->parsed()) stage_gibberify(cfg);
    if (build->parsed()) stage_build_tasks(cfg);
    if (run_cmd->parsed()) return report_run(stage_run(cfg));
    if (score->parsed()) std::cout << render_table(stage_score(cfg));
    if (finetune->parsed()) stage_export_finetune(cfg);
    if (stats->parsed()) std::cout << stage_stats(cfg) << '\n';
    if (pipeline->parsed()) {
      RunSummary s = run_pipeline(cfg);
      std::cout << render_table(stage_score(cfg));
      return report_run(s);
    }
    return kExitOk;
  } catch (const StageDependencyError& e) {
    std::cerr << "synthcorp: missing upstream artifact: " << e.file() << '\n';
    return kExitStage;
  } catch (const ConfigError& e) {
    std::cerr << "synthcorp: configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "synthcorp: " << e.what() << '\n';
    return kExitConfig;
  }
}
