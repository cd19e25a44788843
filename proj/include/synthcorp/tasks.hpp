#pragma once

#include "synthcorp/lexicon.hpp"
#include "synthcorp/propagator.hpp"
#include "synthcorp/templates.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace synthcorp {

enum class TaskKind { relation_extraction, taxonomy_discovery };
enum class Variant { en, gib };
enum class Relation { subclass_of, part_of };

std::string_view task_name(TaskKind kind);
TaskKind parse_task(std::string_view name);
std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);
// "is a subclass of" / "is a part of"
std::string_view relation_phrase(Relation r);
std::string_view relation_key(Relation r);

// What a prompt shows about one concept, in the instance's variant.
struct ConceptView {
  ConceptId id;
  std::string form;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::string definition;

  bool operator==(const ConceptView&) const = default;
};

struct GoldTriple {
  ConceptId subject_id;
  Relation relation = Relation::subclass_of;
  ConceptId object_id;
  std::string subject;  // canonical form in the instance's variant
  std::string object;

  bool operator==(const GoldTriple&) const = default;
};

struct TaskInstance {
  std::string id;  // "<variant>:<alignment key>"
  TaskKind kind = TaskKind::relation_extraction;
  Variant variant = Variant::en;
  std::string alignment_key;
  std::vector<ConceptView> payload;  // one concept (RE) or the pair A, B (TD)
  std::vector<GoldTriple> gold_triples;
  bool gold_label = false;
  std::string prompt;

  nlohmann::json to_json() const;
  static TaskInstance from_json(const nlohmann::json& j);
};

ConceptView concept_view(const CorpusEntry& e, Variant v);

// One instance per member; gold holds every in-domain hypernym pair and
// holonym edge whose hyponym/part side is the query or a concept its
// definition mentions.
std::vector<TaskInstance> build_relation_extraction(const ParallelCorpus& corpus, Variant variant,
                                                    const PromptTemplates& templates = PromptTemplates::defaults());

// Every closure pair as a positive plus one or two corrupted negatives per
// positive (hypernym replaced by a member that is neither the hyponym nor one
// of its ancestors). The same seed yields the same pairs for both variants.
// Throws SamplingError if a positive admits no corruption.
std::vector<TaskInstance> build_taxonomy_discovery(const ParallelCorpus& corpus, Variant variant, std::uint64_t seed,
                                                   const PromptTemplates& templates = PromptTemplates::defaults());

void write_instances(std::ostream& out, const std::vector<TaskInstance>& instances);
std::vector<TaskInstance> read_instances(std::istream& in);

enum class Split { train, test };
std::string_view split_name(Split s);

struct FinetunePair {
  ConceptId a_id;
  ConceptId b_id;
  std::string term_a;
  PartOfSpeech pos_a = PartOfSpeech::noun;
  std::string definition_a;
  std::string term_b;
  PartOfSpeech pos_b = PartOfSpeech::noun;
  std::string definition_b;
  bool label = false;
  Split split = Split::train;
  Variant variant = Variant::en;
};

struct FinetuneSplit {
  std::vector<FinetunePair> train;
  std::vector<FinetunePair> test;
};

// Training values reported for the taxonomy fine-tuning runs; exported as
// metadata for downstream trainers.
struct TrainingHyperparameters {
  int epochs = 20;
  int batch_size = 4;
  double learning_rate = 3e-6;
  int lora_alpha = 256;
  int lora_rank = 1024;
  int quantization_bits = 4;

  nlohmann::json to_json() const;
};

// Seeded half split of the members. Train positives are closure pairs with both
// ends in the train half; test positives are the remaining pairs. Negatives are
// inverted positives topped up with random corruptions to twice the positives.
// Pairs for both variants are returned, en first, in the same order.
FinetuneSplit split_finetune(const ParallelCorpus& corpus, std::uint64_t seed);

std::string render_finetune_prompt(const FinetunePair& pair);
// Prompt followed by the "True"/"False" target.
std::string render_finetune_target(const FinetunePair& pair);

void write_finetune_export(std::ostream& out, const FinetuneSplit& split,
                           const TrainingHyperparameters& hp = {});

}  // namespace synthcorp
