#include "synthcorp/tasks.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/seeding.hpp"
#include "synthcorp/text.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <set>

namespace synthcorp {

using nlohmann::json;

std::string_view task_name(TaskKind kind) {
  return kind == TaskKind::relation_extraction ? "relation_extraction" : "taxonomy_discovery";
}

TaskKind parse_task(std::string_view name) {
  if (name == "relation_extraction" || name == "re") return TaskKind::relation_extraction;
  if (name == "taxonomy_discovery" || name == "td") return TaskKind::taxonomy_discovery;
  throw ConfigError("unknown task '" + std::string(name) + "'");
}

std::string_view variant_name(Variant v) { return v == Variant::en ? "en" : "gib"; }

Variant parse_variant(std::string_view name) {
  if (name == "en") return Variant::en;
  if (name == "gib") return Variant::gib;
  throw ConfigError("unknown variant '" + std::string(name) + "'");
}

std::string_view relation_phrase(Relation r) {
  return r == Relation::subclass_of ? "is a subclass of" : "is a part of";
}

std::string_view relation_key(Relation r) { return r == Relation::subclass_of ? "subclass_of" : "part_of"; }

std::string_view split_name(Split s) { return s == Split::train ? "train" : "test"; }

ConceptView concept_view(const CorpusEntry& e, Variant v) {
  if (v == Variant::en) return {e.id, e.forms_en.front(), e.pos, e.definition_en};
  return {e.id, e.forms_gib.front(), e.pos, e.definition_gib};
}

namespace {

std::string instance_id(Variant v, const std::string& key) { return std::string(variant_name(v)) + ":" + key; }

std::string render_re_prompt(const PromptTemplates& t, const ConceptView& c) {
  return render_template(t.relation_extraction,
                         {{"F_C", c.form}, {"P_C", std::string(pos_name(c.pos))}, {"D_C", c.definition}});
}

std::string render_td_prompt(const PromptTemplates& t, const ConceptView& a, const ConceptView& b) {
  return render_template(t.taxonomy_discovery,
                         {{"F_A", a.form}, {"D_A", a.definition}, {"F_B", b.form}, {"D_B", b.definition}});
}

std::set<HypernymPair> closure_of(const ParallelCorpus& corpus) {
  std::set<HypernymPair> out;
  for (const auto& e : corpus.entries) {
    for (const auto& h : e.hypernyms) out.emplace(e.id, h);
  }
  return out;
}

}  // namespace

std::vector<TaskInstance> build_relation_extraction(const ParallelCorpus& corpus, Variant variant,
                                                    const PromptTemplates& templates) {
  std::vector<TaskInstance> out;
  for (const auto& e : corpus.entries) {
    TaskInstance inst;
    inst.kind = TaskKind::relation_extraction;
    inst.variant = variant;
    inst.alignment_key = "re:" + e.id;
    inst.id = instance_id(variant, inst.alignment_key);
    inst.payload.push_back(concept_view(e, variant));
    inst.prompt = render_re_prompt(templates, inst.payload.front());

    std::vector<ConceptId> scope{e.id};
    scope.insert(scope.end(), e.mentions.begin(), e.mentions.end());
    std::set<std::tuple<ConceptId, Relation, ConceptId>> seen;
    for (const auto& s : scope) {
      const CorpusEntry& sub = corpus.entry(s);
      auto add = [&](Relation r, const ConceptId& obj) {
        if (!seen.emplace(s, r, obj).second) return;
        inst.gold_triples.push_back(
            {s, r, obj, concept_view(sub, variant).form, concept_view(corpus.entry(obj), variant).form});
      };
      for (const auto& h : sub.hypernyms) add(Relation::subclass_of, h);
      for (const auto& w : sub.holonyms) add(Relation::part_of, w);
    }
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<TaskInstance> build_taxonomy_discovery(const ParallelCorpus& corpus, Variant variant, std::uint64_t seed,
                                                   const PromptTemplates& templates) {
  SplitMix64 rng(derive_seed(seed, seed_labels::negatives));
  std::vector<TaskInstance> out;

  auto make = [&](const ConceptId& a, const ConceptId& b, bool label, const std::string& key) {
    TaskInstance inst;
    inst.kind = TaskKind::taxonomy_discovery;
    inst.variant = variant;
    inst.alignment_key = key;
    inst.id = instance_id(variant, key);
    inst.payload = {concept_view(corpus.entry(a), variant), concept_view(corpus.entry(b), variant)};
    inst.gold_label = label;
    inst.prompt = render_td_prompt(templates, inst.payload[0], inst.payload[1]);
    out.push_back(std::move(inst));
  };

  for (const auto& e : corpus.entries) {
    if (e.hypernyms.empty()) continue;
    std::set<ConceptId> excluded(e.hypernyms.begin(), e.hypernyms.end());
    excluded.insert(e.id);
    std::vector<ConceptId> candidates;
    for (const auto& other : corpus.entries) {
      if (!excluded.contains(other.id)) candidates.push_back(other.id);
    }
    for (const auto& hyper : e.hypernyms) {
      const std::string key = "td:" + e.id + "|" + hyper;
      make(e.id, hyper, true, key);
      if (candidates.empty()) {
        throw SamplingError("no valid corruption for (" + e.id + ", " + hyper + ")");
      }
      const std::size_t k = 1 + rng.uniform(2);
      std::vector<ConceptId> pool = candidates;
      for (std::size_t n = 0; n < k && !pool.empty(); ++n) {
        std::size_t idx = rng.uniform(pool.size());
        make(e.id, pool[idx], false, key + "|neg" + std::to_string(n) + "|" + pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
      }
    }
  }
  return out;
}

json TaskInstance::to_json() const {
  json payload_json = json::array();
  for (const auto& c : payload) {
    payload_json.push_back(
        {{"id", c.id}, {"form", c.form}, {"pos", std::string(pos_code(c.pos))}, {"definition", c.definition}});
  }
  json j = {{"id", id},
            {"kind", std::string(task_name(kind))},
            {"variant", std::string(variant_name(variant))},
            {"alignment_key", alignment_key},
            {"payload", payload_json},
            {"prompt", prompt}};
  if (kind == TaskKind::relation_extraction) {
    json gold = json::array();
    for (const auto& g : gold_triples) {
      gold.push_back({{"subject_id", g.subject_id},
                      {"relation", std::string(relation_key(g.relation))},
                      {"object_id", g.object_id},
                      {"subject", g.subject},
                      {"object", g.object}});
    }
    j["gold"] = std::move(gold);
  } else {
    j["gold"] = gold_label;
  }
  return j;
}

TaskInstance TaskInstance::from_json(const json& j) {
  TaskInstance inst;
  inst.id = j.at("id").get<std::string>();
  inst.kind = parse_task(j.at("kind").get<std::string>());
  inst.variant = parse_variant(j.at("variant").get<std::string>());
  inst.alignment_key = j.at("alignment_key").get<std::string>();
  inst.prompt = j.at("prompt").get<std::string>();
  for (const auto& c : j.at("payload")) {
    inst.payload.push_back({c.at("id").get<std::string>(), c.at("form").get<std::string>(),
                            parse_pos(c.at("pos").get<std::string>()), c.at("definition").get<std::string>()});
  }
  if (inst.kind == TaskKind::relation_extraction) {
    for (const auto& g : j.at("gold")) {
      inst.gold_triples.push_back(
          {g.at("subject_id").get<std::string>(),
           g.at("relation").get<std::string>() == "part_of" ? Relation::part_of : Relation::subclass_of,
           g.at("object_id").get<std::string>(), g.at("subject").get<std::string>(),
           g.at("object").get<std::string>()});
    }
  } else {
    inst.gold_label = j.at("gold").get<bool>();
  }
  return inst;
}

void write_instances(std::ostream& out, const std::vector<TaskInstance>& instances) {
  for (const auto& i : instances) out << i.to_json().dump() << '\n';
}

std::vector<TaskInstance> read_instances(std::istream& in) {
  std::vector<TaskInstance> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(TaskInstance::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(n, std::string("malformed instance: ") + e.what());
    }
  }
  return out;
}

namespace {

struct SplitPairs {
  std::vector<HypernymPair> positives;
  std::vector<HypernymPair> negatives;
};

SplitPairs build_split(const std::vector<HypernymPair>& positives, const std::vector<ConceptId>& pool,
                       const std::set<HypernymPair>& closure, std::set<HypernymPair>& used, SplitMix64& rng) {
  SplitPairs out;
  out.positives = positives;
  used.insert(positives.begin(), positives.end());
  const std::size_t target = 2 * positives.size();

  for (const auto& [a, b] : positives) {
    if (out.negatives.size() >= target) break;
    HypernymPair inv{b, a};
    if (closure.contains(inv) || used.contains(inv)) continue;
    used.insert(inv);
    out.negatives.push_back(std::move(inv));
  }
  if (positives.empty() || pool.empty()) return out;

  const std::size_t max_attempts = 100 * target + 100;
  for (std::size_t attempt = 0; out.negatives.size() < target && attempt < max_attempts; ++attempt) {
    const auto& [a, b] = positives[rng.uniform(positives.size())];
    const ConceptId& x = pool[rng.uniform(pool.size())];
    HypernymPair cand{a, x};
    if (x == a || closure.contains(cand) || used.contains(cand)) continue;
    used.insert(cand);
    out.negatives.push_back(std::move(cand));
  }
  return out;
}

FinetunePair make_pair(const ParallelCorpus& corpus, const HypernymPair& p, bool label, Split split, Variant v) {
  ConceptView a = concept_view(corpus.entry(p.first), v);
  ConceptView b = concept_view(corpus.entry(p.second), v);
  return {a.id, b.id, a.form, a.pos, a.definition, b.form, b.pos, b.definition, label, split, v};
}

}  // namespace

FinetuneSplit split_finetune(const ParallelCorpus& corpus, std::uint64_t seed) {
  SplitMix64 rng(derive_seed(seed, seed_labels::split));
  std::vector<ConceptId> members;
  for (const auto& e : corpus.entries) members.push_back(e.id);
  for (std::size_t i = members.size(); i > 1; --i) std::swap(members[i - 1], members[rng.uniform(i)]);

  const std::size_t half = (members.size() + 1) / 2;
  std::vector<ConceptId> train_members(members.begin(), members.begin() + static_cast<std::ptrdiff_t>(half));
  std::sort(train_members.begin(), train_members.end());
  std::set<ConceptId> train_set(train_members.begin(), train_members.end());
  std::vector<ConceptId> all_members(members);
  std::sort(all_members.begin(), all_members.end());

  std::set<HypernymPair> closure = closure_of(corpus);
  std::vector<HypernymPair> train_pos, test_pos;
  for (const auto& p : closure) {
    if (train_set.contains(p.first) && train_set.contains(p.second)) {
      train_pos.push_back(p);
    } else {
      test_pos.push_back(p);
    }
  }

  std::set<HypernymPair> used;
  SplitPairs train = build_split(train_pos, train_members, closure, used, rng);
  SplitPairs test = build_split(test_pos, all_members, closure, used, rng);

  FinetuneSplit out;
  for (Variant v : {Variant::en, Variant::gib}) {
    for (const auto& p : train.positives) out.train.push_back(make_pair(corpus, p, true, Split::train, v));
    for (const auto& p : train.negatives) out.train.push_back(make_pair(corpus, p, false, Split::train, v));
    for (const auto& p : test.positives) out.test.push_back(make_pair(corpus, p, true, Split::test, v));
    for (const auto& p : test.negatives) out.test.push_back(make_pair(corpus, p, false, Split::test, v));
  }
  return out;
}

namespace {

constexpr const char* kFinetuneTemplate =
    "### HUMAN:\n"
    "Identify whether the statement is true or false. Answer with only one word: 'True' or 'False'.\n"
    "\n"
    "CONCEPT A: {term_a} ({pos_a})\n"
    "Definition: {definition_a}\n"
    "\n"
    "CONCEPT B: {term_b} ({pos_b})\n"
    "Definition: {definition_b}\n"
    "\n"
    "Statement: '{term_a}' is a subclass of '{term_b}'.\n"
    "### ASSISTANT:\n";

}  // namespace

std::string render_finetune_prompt(const FinetunePair& p) {
  return render_template(kFinetuneTemplate, {{"term_a", p.term_a},
                                             {"pos_a", std::string(pos_name(p.pos_a))},
                                             {"definition_a", p.definition_a},
                                             {"term_b", p.term_b},
                                             {"pos_b", std::string(pos_name(p.pos_b))},
                                             {"definition_b", p.definition_b}});
}

std::string render_finetune_target(const FinetunePair& p) {
  return render_finetune_prompt(p) + (p.label ? "True" : "False");
}

json TrainingHyperparameters::to_json() const {
  return {{"epochs", epochs},       {"batch_size", batch_size}, {"learning_rate", learning_rate},
          {"lora_alpha", lora_alpha}, {"lora_r", lora_rank},     {"quantization_bits", quantization_bits}};
}

void write_finetune_export(std::ostream& out, const FinetuneSplit& split, const TrainingHyperparameters& hp) {
  std::size_t counts[2][2] = {{0, 0}, {0, 0}};
  for (const auto* part : {&split.train, &split.test}) {
    for (const auto& p : *part) {
      if (p.variant == Variant::en) ++counts[p.split == Split::train ? 0 : 1][p.label ? 0 : 1];
    }
  }
  json meta = {{"kind", "metadata"},
               {"task", "taxonomy_discovery"},
               {"hyperparameters", hp.to_json()},
               {"train", {{"positives", counts[0][0]}, {"negatives", counts[0][1]}}},
               {"test", {{"positives", counts[1][0]}, {"negatives", counts[1][1]}}}};
  out << meta.dump() << '\n';
  for (const auto* part : {&split.train, &split.test}) {
    for (const auto& p : *part) {
      json rec = {{"text", p.split == Split::train ? render_finetune_target(p) : render_finetune_prompt(p)},
                  {"prompt", render_finetune_prompt(p)},
                  {"label", p.label ? "True" : "False"},
                  {"split", std::string(split_name(p.split))},
                  {"variant", std::string(variant_name(p.variant))},
                  {"a", p.a_id},
                  {"b", p.b_id}};
      out << rec.dump() << '\n';
    }
  }
}

}  // namespace synthcorp
