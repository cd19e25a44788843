#include "synthcorp/pipeline.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/linker.hpp"
#include "synthcorp/propagator.hpp"
#include "synthcorp/tasks.hpp"
#include "synthcorp/templates.hpp"
#include "synthcorp/text.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace synthcorp {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path input(const PipelineConfig& c, const char* name) {
  fs::path p = c.out_dir / name;
  if (!fs::exists(p)) throw StageDependencyError(p.string());
  return p;
}

std::ifstream open_in(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw StageDependencyError(p.string());
  return in;
}

std::ofstream open_out(const PipelineConfig& c, const char* name) {
  fs::create_directories(c.out_dir);
  fs::path p = c.out_dir / name;
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  return out;
}

void require_seed(const PipelineConfig& c) {
  if (!c.seed_set) throw ConfigError("a seed is required (--seed)");
}

Lexicon load_lexicon(const PipelineConfig& c) {
  validate_for_lexicon(c);
  return Lexicon::load_file(c.lexicon);
}

Domain load_domain(const PipelineConfig& c) {
  auto in = open_in(input(c, artifacts::domain));
  return Domain::from_json(json::parse(in));
}

std::vector<DefinitionLink> load_links(const PipelineConfig& c) {
  auto in = open_in(input(c, artifacts::links));
  std::vector<DefinitionLink> links;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (text::trim(line).empty()) continue;
    try {
      links.push_back(DefinitionLink::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(n, std::string("malformed link: ") + e.what());
    }
  }
  return links;
}

ParallelCorpus load_corpus(const PipelineConfig& c) {
  auto corpus_path = input(c, artifacts::corpus);
  auto map_path = input(c, artifacts::form_map);
  auto cin = open_in(corpus_path);
  auto min = open_in(map_path);
  return ParallelCorpus::load(cin, min);
}

std::vector<TaskInstance> load_instances(const PipelineConfig& c) {
  auto in = open_in(input(c, artifacts::instances));
  return read_instances(in);
}

PromptTemplates templates_for(const PipelineConfig& c) { return PromptTemplates::load(c.re_template, c.td_template); }

std::vector<TaskInstance> select(const std::vector<TaskInstance>& all, TaskKind kind, Variant variant) {
  std::vector<TaskInstance> out;
  for (const auto& i : all) {
    if (i.kind == kind && i.variant == variant) out.push_back(i);
  }
  return out;
}

}  // namespace

void validate_for_lexicon(const PipelineConfig& c) {
  if (c.lexicon.empty()) throw ConfigError("no lexicon configured (--lexicon)");
  if (!fs::exists(c.lexicon)) throw ConfigError("lexicon file '" + c.lexicon + "' does not exist");
}

std::vector<ConceptId> resolve_roots(const Lexicon& lex, const std::vector<std::string>& specs) {
  std::vector<ConceptId> out;
  for (const auto& spec : specs) {
    if (lex.contains(spec)) {
      out.push_back(spec);
      continue;
    }
    auto last = spec.rfind(':');
    auto mid = last == std::string::npos || last == 0 ? std::string::npos : spec.rfind(':', last - 1);
    if (mid == std::string::npos) throw LookupError("unknown root concept '" + spec + "'");
    std::string form = spec.substr(0, mid);
    PartOfSpeech pos = parse_pos(spec.substr(mid + 1, last - mid - 1));
    std::size_t k = 0;
    try {
      k = std::stoul(spec.substr(last + 1));
    } catch (const std::exception&) {
      throw ConfigError("bad root selector '" + spec + "'");
    }
    std::vector<ConceptId> matches;
    for (const auto& id : lex.concepts_with_form(text::fold(form))) {
      if (lex.at(id).pos == pos) matches.push_back(id);
    }
    if (k == 0 || k > matches.size()) throw LookupError("root selector '" + spec + "' matches no concept");
    out.push_back(matches[k - 1]);
  }
  if (out.empty()) throw ConfigError("no root concepts configured (--roots)");
  return out;
}

std::unique_ptr<Backend> make_backend(const PipelineConfig& c) {
  std::unique_ptr<Backend> inner;
  if (c.backend == "gold-oracle") {
    inner = std::make_unique<GoldOracle>();
  } else if (c.backend == "english-only-oracle") {
    inner = std::make_unique<EnglishOnlyOracle>();
  } else if (c.backend == "fixed") {
    inner = std::make_unique<FixedAnswer>(c.fixed_answer);
  } else if (c.backend == "remote") {
    RemoteChatConfig rc;
    rc.endpoint = c.endpoint;
    rc.model = c.model;
    if (const char* key = std::getenv(c.api_key_env.c_str())) rc.api_key = key;
    rc.price_in_per_1k = c.price_in_per_1k;
    rc.price_out_per_1k = c.price_out_per_1k;
    inner = std::make_unique<RemoteChat>(rc);
  } else if (c.backend == "replay") {
    if (c.cache.empty()) throw ConfigError("the replay backend needs a cache file (--cache)");
    if (!fs::exists(c.cache)) throw ConfigError("cache file '" + c.cache + "' does not exist");
  } else {
    throw ConfigError("unknown backend '" + c.backend + "'");
  }
  if (c.cache.empty()) return inner;
  return std::make_unique<ReplayCache>(c.cache, std::move(inner));
}

void stage_mine(const PipelineConfig& c) {
  Lexicon lex = load_lexicon(c);
  Domain d = mine_domain(lex, resolve_roots(lex, c.roots), c.relations, c.depth, c.traversal);
  auto out = open_out(c, artifacts::domain);
  out << d.to_json().dump(1) << '\n';
}

void stage_link(const PipelineConfig& c) {
  Lexicon lex = load_lexicon(c);
  Domain d = load_domain(c);
  auto links = link_definitions(lex, d, MatcherOptions{c.plural_tolerance});
  auto out = open_out(c, artifacts::links);
  for (const auto& l : links) out << l.to_json().dump() << '\n';
}

void stage_gibberify(const PipelineConfig& c) {
  require_seed(c);
  Lexicon lex = load_lexicon(c);
  Domain d = load_domain(c);
  auto links = load_links(c);
  ParallelCorpus corpus = propagate(lex, d, links, c.seed);
  auto corpus_out = open_out(c, artifacts::corpus);
  corpus.save(corpus_out);
  auto map_out = open_out(c, artifacts::form_map);
  corpus.form_map.save(map_out);
}

void stage_build_tasks(const PipelineConfig& c) {
  require_seed(c);
  ParallelCorpus corpus = load_corpus(c);
  PromptTemplates t = templates_for(c);
  std::vector<TaskInstance> all;
  for (Variant v : {Variant::en, Variant::gib}) {
    auto re = build_relation_extraction(corpus, v, t);
    all.insert(all.end(), re.begin(), re.end());
  }
  for (Variant v : {Variant::en, Variant::gib}) {
    auto td = build_taxonomy_discovery(corpus, v, c.seed, t);
    all.insert(all.end(), td.begin(), td.end());
  }
  auto out = open_out(c, artifacts::instances);
  write_instances(out, all);
}

RunSummary stage_run(const PipelineConfig& c) {
  auto instances = load_instances(c);
  auto backend = make_backend(c);
  RunOptions opts;
  opts.max_in_flight = c.max_in_flight;
  opts.budget = c.budget;
  opts.max_retries = c.max_retries;
  opts.backoff = std::chrono::milliseconds(c.backoff_ms);
  auto preds = run(instances, *backend, opts);
  if (auto* cache = dynamic_cast<ReplayCache*>(backend.get())) cache->save();
  auto out = open_out(c, artifacts::predictions);
  write_predictions(out, preds);

  RunSummary s;
  for (const auto& p : preds) {
    s.cost += p.cost;
    switch (p.status) {
      case PredictionStatus::ok: ++s.ok; break;
      case PredictionStatus::failed: ++s.failed; break;
      case PredictionStatus::skipped: ++s.skipped; break;
    }
  }
  return s;
}

std::vector<MetricsReport> stage_score(const PipelineConfig& c) {
  ParallelCorpus corpus = load_corpus(c);
  auto instances = load_instances(c);
  auto pin = open_in(input(c, artifacts::predictions));
  auto preds = read_predictions(pin);

  using enum TaskKind;
  std::vector<MetricsReport> reports;
  for (TaskKind task : {relation_extraction, taxonomy_discovery}) {
    auto en = select(instances, task, Variant::en);
    auto gib = select(instances, task, Variant::gib);
    if (task == relation_extraction) {
      reports.push_back(score_relation_extraction(preds, en, corpus, Variant::en));
      reports.push_back(score_relation_extraction(preds, gib, corpus, Variant::gib));
    } else {
      auto r_en = score_taxonomy(preds, en);
      r_en.setting = Setting::gt_en;
      auto r_gib = score_taxonomy(preds, gib);
      r_gib.setting = Setting::gt_gib;
      reports.push_back(r_en);
      reports.push_back(r_gib);
    }
    reports.push_back(score_alignment(preds, preds, en, gib, corpus.form_map, task));
  }

  json j = json::array();
  for (const auto& r : reports) j.push_back(r.to_json());
  auto out = open_out(c, artifacts::metrics);
  out << j.dump(1) << '\n';
  auto table = open_out(c, artifacts::metrics_table);
  table << render_table(reports);
  return reports;
}

void stage_export_finetune(const PipelineConfig& c) {
  require_seed(c);
  ParallelCorpus corpus = load_corpus(c);
  auto split = split_finetune(corpus, c.seed);
  auto out = open_out(c, artifacts::finetune);
  write_finetune_export(out, split);
}

std::string stage_stats(const PipelineConfig& c) {
  Lexicon lex = load_lexicon(c);
  auto roots = resolve_roots(lex, c.roots);
  DomainStats s = domain_stats(mine_domain(lex, roots, c.relations, c.depth, c.traversal));
  std::ostringstream row;
  for (std::size_t i = 0; i < s.roots.size(); ++i) row << (i ? ", " : "") << s.roots[i];
  row << " & " << s.concepts << " & " << s.hypernym_pairs << " & " << s.depth;
  return row.str();
}

RunSummary run_pipeline(const PipelineConfig& c) {
  require_seed(c);
  stage_mine(c);
  stage_link(c);
  stage_gibberify(c);
  stage_build_tasks(c);
  RunSummary s = stage_run(c);
  stage_score(c);
  stage_export_finetune(c);
  return s;
}

}  // namespace synthcorp
