#pragma once

#include <compare>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace synthcorp {

enum class PartOfSpeech { noun, verb, adjective, adverb };

enum class RelationKind { hypernym, hyponym, derivation, topic, holonym, meronym };

// One-letter codes used in lexicon files (n, v, a, r).
std::string_view pos_code(PartOfSpeech pos);
// Full English name ("noun", ...), as shown in prompts.
std::string_view pos_name(PartOfSpeech pos);
PartOfSpeech parse_pos(std::string_view code);

std::string_view relation_name(RelationKind kind);
RelationKind parse_relation(std::string_view name);

using ConceptId = std::string;
// (hyponym id, hypernym id)
using HypernymPair = std::pair<ConceptId, ConceptId>;

struct Concept {
  ConceptId id;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::vector<std::string> written_forms;
  std::string definition;

  const std::string& canonical_form() const { return written_forms.front(); }
  bool operator==(const Concept&) const = default;
};

// src --kind--> dst. For hypernym edges dst is the superclass of src.
struct RelationEdge {
  ConceptId src;
  RelationKind kind;
  ConceptId dst;

  auto operator<=>(const RelationEdge&) const = default;
};

// One line of a lexicon file before validation.
struct ConceptRecord {
  Concept data;
  std::vector<std::pair<RelationKind, ConceptId>> relations;
};

// Immutable in-memory lexicon graph. Hypernym/hyponym and holonym/meronym
// edges are symmetrized on load.
class Lexicon {
 public:
  // Reads the line-delimited lexicon format. Throws ParseError,
  // DuplicateIdError or ReferentialError.
  static Lexicon load(std::istream& in);
  static Lexicon load_file(const std::string& path);
  static Lexicon from_records(std::vector<ConceptRecord> records);

  // Writes one record per concept, sorted by id, with every stored edge.
  void save(std::ostream& out) const;

  bool contains(std::string_view id) const;
  // Throws LookupError for unknown ids.
  const Concept& at(std::string_view id) const;

  const std::map<ConceptId, Concept, std::less<>>& concepts() const { return concepts_; }
  const std::set<RelationEdge>& edges() const { return edges_; }
  const std::map<std::string, std::set<ConceptId>, std::less<>>& form_index() const { return form_index_; }

  // Concepts carrying the case-folded form; empty when none.
  const std::set<ConceptId>& concepts_with_form(std::string_view folded_form) const;

  // Targets of outgoing edges of `kind` from `id` (sorted).
  const std::vector<ConceptId>& targets(std::string_view id, RelationKind kind) const;
  // Sources of incoming edges of `kind` into `id` (sorted).
  const std::vector<ConceptId>& sources(std::string_view id, RelationKind kind) const;

  bool operator==(const Lexicon& other) const {
    return concepts_ == other.concepts_ && edges_ == other.edges_;
  }

 private:
  using Adjacency = std::map<ConceptId, std::map<RelationKind, std::vector<ConceptId>>, std::less<>>;

  std::map<ConceptId, Concept, std::less<>> concepts_;
  std::set<RelationEdge> edges_;
  std::map<std::string, std::set<ConceptId>, std::less<>> form_index_;
  Adjacency outgoing_;
  Adjacency incoming_;
};

// Transitive closure of the hypernym relation over the whole lexicon, keeping
// only pairs whose endpoints both lie in `restrict`. Self-pairs are dropped.
std::set<HypernymPair> hypernym_closure(const Lexicon& lex, const std::set<ConceptId>& restrict);

// Lexicon-wide concepts sharing a case-folded written form with `id`,
// excluding `id`. Throws LookupError for unknown ids.
std::set<ConceptId> homonyms(const Lexicon& lex, std::string_view id);

}  // namespace synthcorp
