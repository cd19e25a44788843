#pragma once

#include "synthcorp/lexicon.hpp"
#include "synthcorp/linker.hpp"
#include "synthcorp/miner.hpp"
#include "synthcorp/propagator.hpp"

#include <string>
#include <vector>

namespace synthcorp::testkit {

inline std::string data_path(const std::string& name) { return std::string(SYNTHCORP_TEST_DATA) + "/" + name; }

inline ConceptRecord record(std::string id, PartOfSpeech pos, std::vector<std::string> forms, std::string definition,
                            std::vector<std::pair<RelationKind, ConceptId>> relations = {}) {
  return {{std::move(id), pos, std::move(forms), std::move(definition)}, std::move(relations)};
}

// Five-concept example with a homonym pair and a sweet/dessert cycle.
inline Lexicon five_concept_lexicon() {
  using enum PartOfSpeech;
  return Lexicon::from_records({
      record("sweet_a", adjective, {"sweet"}, "having a pleasant taste"),
      record("fruit", noun, {"fruit"}, "the ripened reproductive body of a seed plant"),
      record("sweet_n", noun, {"sweet"}, "a food eaten as a dessert"),
      record("dessert", noun, {"dessert"}, "a sweet course served at the end of a meal",
             {{RelationKind::hypernym, "sweet_n"}}),
      record("compote", noun, {"compote"}, "a dessert of fruit stewed in syrup",
             {{RelationKind::hypernym, "dessert"}}),
  });
}

// Domain holding `members` (all concepts when empty), hypernyms closed.
inline Domain domain_of(const Lexicon& lex, std::vector<ConceptId> members = {}) {
  Domain d;
  if (members.empty()) {
    for (const auto& [id, _] : lex.concepts()) members.push_back(id);
  }
  d.members.insert(members.begin(), members.end());
  d.roots = {*d.members.begin()};
  d.relations_used = {RelationKind::hyponym};
  d.induced_hypernyms = hypernym_closure(lex, d.members);
  d.discovery_order.assign(d.members.begin(), d.members.end());
  return d;
}

inline Lexicon sweets12_lexicon() { return Lexicon::load_file(data_path("sweets12.jsonl")); }

inline Domain sweets12_domain(const Lexicon& lex) {
  return mine_domain(lex, {"sweet_n", "sweet_a", "sugar"},
                     {RelationKind::hyponym, RelationKind::derivation, RelationKind::topic}, 5);
}

inline ParallelCorpus sweets12_corpus(std::uint64_t seed = 7) {
  Lexicon lex = sweets12_lexicon();
  Domain d = sweets12_domain(lex);
  return propagate(lex, d, link_definitions(lex, d), seed);
}

}  // namespace synthcorp::testkit
