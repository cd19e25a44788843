#pragma once

#include "synthcorp/propagator.hpp"
#include "synthcorp/runner.hpp"
#include "synthcorp/tasks.hpp"
#include "synthcorp/translator.hpp"

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace synthcorp {

enum class Setting { gt_en, gt_gib, en_vs_gib };
std::string_view setting_name(Setting s);

struct ClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t support = 0;  // gold (or label) count
};

struct ConceptAlignment {
  std::string key;
  double precision = 0.0;
  double recall = 0.0;
  std::size_t en_triples = 0;
  std::size_t gib_triples = 0;
  std::size_t shared = 0;
};

struct MetricsReport {
  Setting setting = Setting::gt_en;
  TaskKind task = TaskKind::relation_extraction;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t ignored = 0;   // invalid or unanswered predictions left out
  std::size_t evaluated = 0; // instances (or concepts) that entered the metric
  bool undefined = false;    // some ratio had a zero denominator and was set to 0
  std::map<std::string, ClassMetrics> per_class;  // TD: "True", "False"
  std::vector<ConceptAlignment> concepts;         // RE alignment breakdown

  nlohmann::json to_json() const;
};

// Micro P/R/F1 over subclass triples. Terms are resolved to members through
// case-folded form lookup in the instance variant; unresolved or reflexive
// triples are false positives. Gold pairs implied by the transitive closure of
// the resolved predictions count as found. Part-of triples are not scored.
// Throws ConfigError if a prediction belongs to an instance of another variant
// or task.
MetricsReport score_relation_extraction(const std::vector<Prediction>& predictions,
                                        const std::vector<TaskInstance>& instances, const ParallelCorpus& corpus,
                                        Variant variant);

// Per-class P/R/F1 for True and False with Invalid or unanswered predictions
// ignored; the report carries the unweighted mean over classes that occur.
MetricsReport score_taxonomy(const std::vector<Prediction>& predictions, const std::vector<TaskInstance>& instances);

// Consistency of the gibberish answers against the English ones, matched by
// alignment key. Gibberish terms are mapped back through the form map (whole
// form first, then word by word, unknown words kept). RE: per-concept P/R
// over subclass and part-of triples, macro-averaged, F1 from the averages.
// TD: English answers act as labels. Throws AlignmentError for unmatched keys.
MetricsReport score_alignment(const std::vector<Prediction>& pred_en, const std::vector<Prediction>& pred_gib,
                              const std::vector<TaskInstance>& inst_en, const std::vector<TaskInstance>& inst_gib,
                              const FormMap& form_map, TaskKind task);

// Gibberish term rendered back in English (case-folded).
std::string invert_term(std::string_view term, const FormMap& form_map);

// Plain-text table: one row per report with P, R, F1 and counts.
std::string render_table(const std::vector<MetricsReport>& reports);

}  // namespace synthcorp
