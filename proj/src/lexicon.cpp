#include "synthcorp/lexicon.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>

namespace synthcorp {

using nlohmann::json;

std::string_view pos_code(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::noun: return "n";
    case PartOfSpeech::verb: return "v";
    case PartOfSpeech::adjective: return "a";
    case PartOfSpeech::adverb: return "r";
  }
  return "n";
}

std::string_view pos_name(PartOfSpeech pos) {
  switch (pos) {
    case PartOfSpeech::noun: return "noun";
    case PartOfSpeech::verb: return "verb";
    case PartOfSpeech::adjective: return "adjective";
    case PartOfSpeech::adverb: return "adverb";
  }
  return "noun";
}

PartOfSpeech parse_pos(std::string_view code) {
  if (code == "n" || code == "noun") return PartOfSpeech::noun;
  if (code == "v" || code == "verb") return PartOfSpeech::verb;
  // WordNet satellite adjectives ("s") fold into adjectives.
  if (code == "a" || code == "s" || code == "adjective") return PartOfSpeech::adjective;
  if (code == "r" || code == "adverb") return PartOfSpeech::adverb;
  throw Error("unknown part-of-speech '" + std::string(code) + "'");
}

std::string_view relation_name(RelationKind kind) {
  switch (kind) {
    case RelationKind::hypernym: return "hypernym";
    case RelationKind::hyponym: return "hyponym";
    case RelationKind::derivation: return "derivation";
    case RelationKind::topic: return "topic";
    case RelationKind::holonym: return "holonym";
    case RelationKind::meronym: return "meronym";
  }
  return "hypernym";
}

RelationKind parse_relation(std::string_view name) {
  for (auto k : {RelationKind::hypernym, RelationKind::hyponym, RelationKind::derivation,
                 RelationKind::topic, RelationKind::holonym, RelationKind::meronym}) {
    if (relation_name(k) == name) return k;
  }
  throw Error("unknown relation kind '" + std::string(name) + "'");
}

namespace {

const std::vector<ConceptId> kNoIds;
const std::set<ConceptId> kNoIdSet;

bool inverse_of(RelationKind kind, RelationKind* inv) {
  switch (kind) {
    case RelationKind::hypernym: *inv = RelationKind::hyponym; return true;
    case RelationKind::hyponym: *inv = RelationKind::hypernym; return true;
    case RelationKind::holonym: *inv = RelationKind::meronym; return true;
    case RelationKind::meronym: *inv = RelationKind::holonym; return true;
    default: return false;
  }
}

std::string required_string(const json& obj, const char* key, std::size_t line) {
  auto it = obj.find(key);
  if (it == obj.end() || !it->is_string()) {
    throw ParseError(line, std::string("missing or non-string field '") + key + "'");
  }
  std::string value = it->get<std::string>();
  if (value.empty()) throw ParseError(line, std::string("empty field '") + key + "'");
  return value;
}

ConceptRecord parse_record(const std::string& raw, std::size_t line) {
  json obj;
  try {
    obj = json::parse(raw);
  } catch (const json::parse_error& e) {
    throw ParseError(line, std::string("malformed record: ") + e.what());
  }
  if (!obj.is_object()) throw ParseError(line, "record is not an object");

  ConceptRecord rec;
  rec.data.id = required_string(obj, "id", line);
  try {
    rec.data.pos = parse_pos(required_string(obj, "pos", line));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(line, e.what());
  }
  rec.data.definition = required_string(obj, "definition", line);

  auto forms = obj.find("forms");
  if (forms == obj.end() || !forms->is_array() || forms->empty()) {
    throw ParseError(line, "missing or empty 'forms'");
  }
  for (const auto& f : *forms) {
    if (!f.is_string() || f.get<std::string>().empty()) {
      throw ParseError(line, "written forms must be non-empty strings");
    }
    rec.data.written_forms.push_back(f.get<std::string>());
  }

  if (auto rels = obj.find("relations"); rels != obj.end()) {
    if (!rels->is_array()) throw ParseError(line, "'relations' must be an array");
    for (const auto& r : *rels) {
      if (!r.is_object()) throw ParseError(line, "relation must be an object");
      std::string kind = required_string(r, "kind", line);
      std::string target = required_string(r, "target", line);
      try {
        rec.relations.emplace_back(parse_relation(kind), std::move(target));
      } catch (const Error& e) {
        throw ParseError(line, e.what());
      }
    }
  }
  return rec;
}

}  // namespace

Lexicon Lexicon::load(std::istream& in) {
  std::vector<ConceptRecord> records;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (text::trim(raw).empty()) continue;
    records.push_back(parse_record(raw, line));
  }
  return from_records(std::move(records));
}

Lexicon Lexicon::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon file '" + path + "'");
  return load(in);
}

Lexicon Lexicon::from_records(std::vector<ConceptRecord> records) {
  Lexicon lex;
  for (auto& rec : records) {
    if (rec.data.id.empty() || rec.data.definition.empty() || rec.data.written_forms.empty()) {
      throw Error("concept record violates field invariants");
    }
    if (lex.concepts_.contains(rec.data.id)) throw DuplicateIdError(rec.data.id);
    lex.concepts_.emplace(rec.data.id, rec.data);
  }

  std::vector<std::string> dangling;
  for (const auto& rec : records) {
    for (const auto& [kind, target] : rec.relations) {
      if (!lex.concepts_.contains(target)) {
        dangling.push_back(rec.data.id + "->" + target);
        continue;
      }
      lex.edges_.insert({rec.data.id, kind, target});
      RelationKind inv;
      if (inverse_of(kind, &inv)) lex.edges_.insert({target, inv, rec.data.id});
    }
  }
  if (!dangling.empty()) {
    std::sort(dangling.begin(), dangling.end());
    throw ReferentialError(std::move(dangling));
  }

  for (const auto& [id, c] : lex.concepts_) {
    for (const auto& f : c.written_forms) lex.form_index_[text::fold(f)].insert(id);
  }
  // edges_ is ordered, so adjacency lists come out sorted.
  for (const auto& e : lex.edges_) {
    lex.outgoing_[e.src][e.kind].push_back(e.dst);
    lex.incoming_[e.dst][e.kind].push_back(e.src);
  }
  for (auto& [id, by_kind] : lex.incoming_) {
    for (auto& [kind, ids] : by_kind) std::sort(ids.begin(), ids.end());
  }
  return lex;
}

void Lexicon::save(std::ostream& out) const {
  for (const auto& [id, c] : concepts_) {
    json obj;
    obj["id"] = c.id;
    obj["pos"] = std::string(pos_code(c.pos));
    obj["forms"] = c.written_forms;
    obj["definition"] = c.definition;
    json rels = json::array();
    auto it = edges_.lower_bound(RelationEdge{id, RelationKind::hypernym, ""});
    for (; it != edges_.end() && it->src == id; ++it) {
      rels.push_back({{"kind", std::string(relation_name(it->kind))}, {"target", it->dst}});
    }
    obj["relations"] = std::move(rels);
    out << obj.dump() << '\n';
  }
}

bool Lexicon::contains(std::string_view id) const { return concepts_.find(id) != concepts_.end(); }

const Concept& Lexicon::at(std::string_view id) const {
  auto it = concepts_.find(id);
  if (it == concepts_.end()) throw LookupError("unknown concept id '" + std::string(id) + "'");
  return it->second;
}

const std::set<ConceptId>& Lexicon::concepts_with_form(std::string_view folded_form) const {
  auto it = form_index_.find(folded_form);
  return it == form_index_.end() ? kNoIdSet : it->second;
}

const std::vector<ConceptId>& Lexicon::targets(std::string_view id, RelationKind kind) const {
  auto it = outgoing_.find(id);
  if (it == outgoing_.end()) return kNoIds;
  auto k = it->second.find(kind);
  return k == it->second.end() ? kNoIds : k->second;
}

const std::vector<ConceptId>& Lexicon::sources(std::string_view id, RelationKind kind) const {
  auto it = incoming_.find(id);
  if (it == incoming_.end()) return kNoIds;
  auto k = it->second.find(kind);
  return k == it->second.end() ? kNoIds : k->second;
}

std::set<HypernymPair> hypernym_closure(const Lexicon& lex, const std::set<ConceptId>& restrict) {
  std::set<HypernymPair> out;
  for (const auto& start : restrict) {
    if (!lex.contains(start)) continue;
    // Upward DFS; hyponym edges are already mirrored as hypernym edges.
    std::set<ConceptId> seen;
    std::vector<ConceptId> stack{start};
    while (!stack.empty()) {
      ConceptId cur = std::move(stack.back());
      stack.pop_back();
      for (const auto& up : lex.targets(cur, RelationKind::hypernym)) {
        if (seen.insert(up).second) stack.push_back(up);
      }
    }
    for (const auto& anc : seen) {
      if (anc != start && restrict.contains(anc)) out.emplace(start, anc);
    }
  }
  return out;
}

std::set<ConceptId> homonyms(const Lexicon& lex, std::string_view id) {
  const Concept& c = lex.at(id);
  std::set<ConceptId> out;
  for (const auto& f : c.written_forms) {
    const auto& ids = lex.concepts_with_form(text::fold(f));
    out.insert(ids.begin(), ids.end());
  }
  out.erase(std::string(id));
  return out;
}

}  // namespace synthcorp
