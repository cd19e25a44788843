#pragma once

#include "synthcorp/lexicon.hpp"

#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace synthcorp {

// How selected relation kinds are walked during mining.
struct TraversalOptions {
  // Selecting hypernym or hyponym walks root -> subclasses. When false each
  // kind is followed literally along its own direction.
  bool taxonomic_downward = true;
  // Derivation and topic edges are followed in both directions.
  bool lateral_bidirectional = true;
};

struct Domain {
  std::vector<ConceptId> roots;
  int depth = 0;
  std::set<ConceptId> members;
  std::set<RelationKind> relations_used;
  std::set<HypernymPair> induced_hypernyms;
  TraversalOptions traversal;
  // Members in BFS discovery order.
  std::vector<ConceptId> discovery_order;

  nlohmann::json to_json() const;
  static Domain from_json(const nlohmann::json& j);
};

struct DomainStats {
  std::size_t concepts = 0;
  std::size_t hypernym_pairs = 0;
  int depth = 0;
  std::vector<ConceptId> roots;
};

// Breadth-first exploration from `roots` over the selected relation kinds,
// at most `depth` hops. Frontiers are expanded in concept-id order.
// Throws LookupError for unknown roots and ConfigError for bad settings.
Domain mine_domain(const Lexicon& lex, const std::vector<ConceptId>& roots,
                   const std::set<RelationKind>& relations, int depth,
                   const TraversalOptions& options = {});

DomainStats domain_stats(const Domain& domain);

}  // namespace synthcorp
