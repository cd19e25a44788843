#include "synthcorp/propagator.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/seeding.hpp"
#include "synthcorp/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

namespace synthcorp {

using nlohmann::json;

namespace {

std::string_view step_kind_name(PropagationStep::Kind k) {
  switch (k) {
    case PropagationStep::Kind::seed: return "seed";
    case PropagationStep::Kind::progress: return "progress";
    case PropagationStep::Kind::stall: return "stall";
  }
  return "seed";
}

PropagationStep::Kind parse_step_kind(std::string_view s) {
  if (s == "progress") return PropagationStep::Kind::progress;
  if (s == "stall") return PropagationStep::Kind::stall;
  return PropagationStep::Kind::seed;
}

// Renders `surface` (which case-insensitively equals `form`) through the
// word-level pseudo-words of `gib`, word by word.
std::string render_surface(std::string_view surface, std::string_view gib) {
  std::vector<char> ss, gs;
  auto sw = text::split_words(surface, &ss);
  auto gw = text::split_words(gib, &gs);
  if (sw.size() != gw.size()) return std::string(gib);
  std::string out;
  for (std::size_t i = 0; i < gw.size(); ++i) {
    out += text::apply_case(gw[i], text::classify_case(sw[i]));
    if (i < gs.size()) out.push_back(gs[i]);
  }
  return out;
}

}  // namespace

const CorpusEntry& ParallelCorpus::entry(std::string_view id) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), id,
                             [](const CorpusEntry& e, std::string_view key) { return e.id < key; });
  if (it == entries.end() || it->id != id) throw LookupError("concept '" + std::string(id) + "' is not in the corpus");
  return *it;
}

std::string domain_digest(const Domain& domain) {
  return text::hex64(text::fnv1a64(domain.to_json().dump()));
}

std::string substitute_definition(std::string_view definition, std::span<const DefinitionLink> links,
                                  const FormMap& map) {
  std::vector<const DefinitionLink*> ordered;
  for (const auto& l : links) ordered.push_back(&l);
  std::sort(ordered.begin(), ordered.end(),
            [](const DefinitionLink* a, const DefinitionLink* b) { return a->start < b->start; });

  std::string out;
  std::size_t pos = 0;
  for (const DefinitionLink* l : ordered) {
    auto gib = map.lookup(l->form);
    if (!gib) throw UnresolvedDependencyError("form '" + l->form + "' has no pseudo-word yet");
    if (l->start < pos || l->end > definition.size()) throw Error("link spans overlap or exceed the definition");
    out.append(definition.substr(pos, l->start - pos));
    std::string_view surface = definition.substr(l->start, l->end - l->start);
    std::string_view stem = surface.substr(0, surface.size() - l->suffix);
    out += render_surface(stem, *gib);
    out.append(surface.substr(stem.size()));
    pos = l->end;
  }
  out.append(definition.substr(pos));
  return out;
}

std::string restore_definition(std::string_view gib_def, const FormMap& map, bool plural_tolerance) {
  std::string out;
  std::size_t i = 0;
  while (i < gib_def.size()) {
    if (!text::is_letter(static_cast<unsigned char>(gib_def[i]))) {
      out.push_back(gib_def[i++]);
      continue;
    }
    std::size_t j = i;
    while (j < gib_def.size() && text::is_letter(static_cast<unsigned char>(gib_def[j]))) ++j;
    std::string_view token = gib_def.substr(i, j - i);
    std::string folded = text::fold(token);
    std::string replacement(token);
    auto try_invert = [&](std::size_t cut) {
      auto src = map.word_from(std::string_view(folded).substr(0, folded.size() - cut));
      if (!src) return false;
      replacement = text::apply_case(*src, text::classify_case(token)) + std::string(token.substr(token.size() - cut));
      return true;
    };
    if (!try_invert(0) && plural_tolerance) {
      if (!(folded.ends_with("es") && try_invert(2)) && folded.ends_with("s")) try_invert(1);
    }
    out += replacement;
    i = j;
  }
  return out;
}

ParallelCorpus propagate(const Lexicon& lex, const Domain& domain, const std::vector<DefinitionLink>& links,
                         std::uint64_t seed) {
  auto by_owner = links_by_owner(links);
  std::vector<std::string> definitions;
  for (const auto& id : domain.members) definitions.push_back(lex.at(id).definition);

  ParallelCorpus corpus;
  corpus.seed = seed;
  corpus.domain_digest = domain_digest(domain);
  corpus.form_map = FormMap(derive_seed(seed, seed_labels::translator),
                            reserved_vocabulary(domain_forms(lex, domain), definitions));
  FormMap& map = corpus.form_map;
  SplitMix64 stall_rng(derive_seed(seed, seed_labels::stall));

  std::map<ConceptId, ProcessingStatus> status;
  std::set<ConceptId> layer;  // at least partially processed
  std::map<ConceptId, std::string> gib_definition;
  std::size_t full_count = 0;

  auto represent = [&](const ConceptId& id) {
    const Concept& c = lex.at(id);
    for (const auto& f : c.written_forms) map.gibberish_form(f, c.pos);
  };
  auto make_full = [&](const ConceptId& id) {
    represent(id);
    const auto& own = by_owner[id];
    gib_definition[id] = substitute_definition(lex.at(id).definition, own, map);
    status[id] = ProcessingStatus::full;
    layer.insert(id);
    ++full_count;
  };
  auto add_homonyms = [&](const std::vector<ConceptId>& processed, PropagationStep& step) {
    std::set<ConceptId> fresh;
    for (const auto& p : processed) {
      for (const auto& h : homonyms(lex, p)) {
        if (!layer.contains(h)) fresh.insert(h);
      }
    }
    for (const auto& h : fresh) {
      represent(h);
      status[h] = ProcessingStatus::partial;
      layer.insert(h);
      step.partial.push_back(h);
    }
  };

  PropagationStep first;
  first.kind = PropagationStep::Kind::seed;
  for (const auto& id : dependency_free(domain, links)) {
    make_full(id);
    first.completed.push_back(id);
  }
  add_homonyms(first.completed, first);
  first.layer_size = layer.size();
  corpus.trace.push_back(std::move(first));

  while (full_count < domain.members.size()) {
    PropagationStep step;
    std::vector<ConceptId> eligible;
    for (const auto& id : domain.members) {
      if (status[id] == ProcessingStatus::full) continue;
      bool resolvable = true;
      for (const auto& link : by_owner[id]) {
        bool ok = std::any_of(link.referenced.begin(), link.referenced.end(),
                              [&](const ConceptId& ref) { return ref == id || layer.contains(ref); });
        if (!ok) {
          resolvable = false;
          break;
        }
      }
      if (resolvable) eligible.push_back(id);
    }

    if (!eligible.empty()) {
      step.kind = PropagationStep::Kind::progress;
      for (const auto& id : eligible) {
        make_full(id);
        step.completed.push_back(id);
      }
      add_homonyms(eligible, step);
    } else {
      step.kind = PropagationStep::Kind::stall;
      std::vector<ConceptId> candidates;
      for (const auto& id : domain.members) {
        if (!layer.contains(id)) candidates.push_back(id);
      }
      if (candidates.empty()) {
        throw UnresolvedDependencyError("definition links reference no domain member; propagation cannot finish");
      }
      const ConceptId& pick = candidates[stall_rng.uniform(candidates.size())];
      represent(pick);
      status[pick] = ProcessingStatus::partial;
      layer.insert(pick);
      step.partial.push_back(pick);
    }
    step.layer_size = layer.size();
    corpus.trace.push_back(std::move(step));
  }
  corpus.layer_size = layer.size();

  std::map<ConceptId, std::vector<ConceptId>> ancestors;
  for (const auto& [hypo, hyper] : domain.induced_hypernyms) ancestors[hypo].push_back(hyper);

  for (const auto& id : domain.members) {
    const Concept& c = lex.at(id);
    CorpusEntry e;
    e.id = id;
    e.pos = c.pos;
    e.forms_en = c.written_forms;
    e.definition_en = c.definition;
    for (const auto& f : c.written_forms) e.forms_gib.push_back(*map.lookup(f));
    e.definition_gib = gib_definition.at(id);
    e.hypernyms = ancestors[id];
    for (const auto& whole : lex.targets(id, RelationKind::holonym)) {
      if (domain.members.contains(whole) && whole != id) e.holonyms.push_back(whole);
    }
    std::set<ConceptId> mentioned;
    for (const auto& l : by_owner[id]) {
      for (const auto& r : l.referenced) {
        if (r != id) mentioned.insert(r);
      }
    }
    e.mentions.assign(mentioned.begin(), mentioned.end());
    corpus.entries.push_back(std::move(e));
  }
  return corpus;
}

void ParallelCorpus::save(std::ostream& out) const {
  json trace_json = json::array();
  for (const auto& s : trace) {
    trace_json.push_back({{"kind", std::string(step_kind_name(s.kind))},
                          {"completed", s.completed},
                          {"partial", s.partial},
                          {"layer_size", s.layer_size}});
  }
  json header = {{"kind", "corpus"},
                 {"seed", seed},
                 {"domain_digest", domain_digest},
                 {"form_map_digest", form_map.digest()},
                 {"layer_size", layer_size},
                 {"trace", trace_json}};
  out << header.dump() << '\n';
  for (const auto& e : entries) {
    json rec = {{"id", e.id},
                {"pos", std::string(pos_code(e.pos))},
                {"forms_en", e.forms_en},
                {"definition_en", e.definition_en},
                {"forms_gib", e.forms_gib},
                {"definition_gib", e.definition_gib},
                {"hypernyms", e.hypernyms},
                {"holonyms", e.holonyms},
                {"mentions", e.mentions}};
    out << rec.dump() << '\n';
  }
}

ParallelCorpus ParallelCorpus::load(std::istream& corpus_in, std::istream& form_map_in) {
  ParallelCorpus c;
  c.form_map = FormMap::load(form_map_in);
  std::string line;
  if (!std::getline(corpus_in, line)) throw Error("empty corpus file");
  try {
    json header = json::parse(line);
    c.seed = header.at("seed").get<std::uint64_t>();
    c.domain_digest = header.at("domain_digest").get<std::string>();
    c.layer_size = header.at("layer_size").get<std::size_t>();
    if (header.at("form_map_digest").get<std::string>() != c.form_map.digest()) {
      throw Error("form map digest does not match the corpus header");
    }
    for (const auto& s : header.at("trace")) {
      c.trace.push_back({parse_step_kind(s.at("kind").get<std::string>()),
                         s.at("completed").get<std::vector<ConceptId>>(),
                         s.at("partial").get<std::vector<ConceptId>>(), s.at("layer_size").get<std::size_t>()});
    }
    while (std::getline(corpus_in, line)) {
      if (text::trim(line).empty()) continue;
      json rec = json::parse(line);
      CorpusEntry e;
      e.id = rec.at("id").get<std::string>();
      e.pos = parse_pos(rec.at("pos").get<std::string>());
      e.forms_en = rec.at("forms_en").get<std::vector<std::string>>();
      e.definition_en = rec.at("definition_en").get<std::string>();
      e.forms_gib = rec.at("forms_gib").get<std::vector<std::string>>();
      e.definition_gib = rec.at("definition_gib").get<std::string>();
      e.hypernyms = rec.at("hypernyms").get<std::vector<ConceptId>>();
      e.holonyms = rec.at("holonyms").get<std::vector<ConceptId>>();
      e.mentions = rec.at("mentions").get<std::vector<ConceptId>>();
      c.entries.push_back(std::move(e));
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed corpus file: ") + e.what());
  }
  std::sort(c.entries.begin(), c.entries.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  return c;
}

}  // namespace synthcorp
