#include "synthcorp/miner.hpp"

#include "synthcorp/errors.hpp"

#include <algorithm>

namespace synthcorp {

using nlohmann::json;

namespace {

// Neighbours reachable in one hop over the selected kinds.
void expand(const Lexicon& lex, const ConceptId& id, const std::set<RelationKind>& relations,
            const TraversalOptions& opt, std::vector<ConceptId>& out) {
  auto add = [&out](const std::vector<ConceptId>& ids) { out.insert(out.end(), ids.begin(), ids.end()); };
  for (RelationKind kind : relations) {
    switch (kind) {
      case RelationKind::hypernym:
      case RelationKind::hyponym:
        if (opt.taxonomic_downward) {
          add(lex.targets(id, RelationKind::hyponym));
        } else {
          add(lex.targets(id, kind));
        }
        break;
      case RelationKind::derivation:
      case RelationKind::topic:
        add(lex.targets(id, kind));
        if (opt.lateral_bidirectional) add(lex.sources(id, kind));
        break;
      default:
        break;
    }
  }
}

}  // namespace

Domain mine_domain(const Lexicon& lex, const std::vector<ConceptId>& roots,
                   const std::set<RelationKind>& relations, int depth,
                   const TraversalOptions& options) {
  if (roots.empty()) throw ConfigError("mining needs at least one root");
  if (relations.empty()) throw ConfigError("mining needs at least one relation kind");
  if (depth < 0) throw ConfigError("exploration depth must be non-negative");
  for (RelationKind k : relations) {
    if (k == RelationKind::holonym || k == RelationKind::meronym) {
      throw ConfigError("relation '" + std::string(relation_name(k)) + "' cannot drive mining");
    }
  }
  for (const auto& r : roots) {
    if (!lex.contains(r)) throw LookupError("unknown root concept '" + r + "'");
  }

  Domain d;
  d.roots = roots;
  d.depth = depth;
  d.relations_used = relations;
  d.traversal = options;

  std::vector<ConceptId> frontier(roots.begin(), roots.end());
  std::sort(frontier.begin(), frontier.end());
  frontier.erase(std::unique(frontier.begin(), frontier.end()), frontier.end());
  for (const auto& r : frontier) {
    d.members.insert(r);
    d.discovery_order.push_back(r);
  }

  for (int hop = 0; hop < depth && !frontier.empty(); ++hop) {
    std::vector<ConceptId> next;
    std::vector<ConceptId> neighbours;
    for (const auto& id : frontier) {
      neighbours.clear();
      expand(lex, id, relations, options, neighbours);
      for (auto& n : neighbours) {
        if (d.members.insert(n).second) next.push_back(std::move(n));
      }
    }
    std::sort(next.begin(), next.end());
    d.discovery_order.insert(d.discovery_order.end(), next.begin(), next.end());
    frontier = std::move(next);
  }

  d.induced_hypernyms = hypernym_closure(lex, d.members);
  return d;
}

DomainStats domain_stats(const Domain& domain) {
  return {domain.members.size(), domain.induced_hypernyms.size(), domain.depth, domain.roots};
}

json Domain::to_json() const {
  json rels = json::array();
  for (auto k : relations_used) rels.push_back(std::string(relation_name(k)));
  json pairs = json::array();
  for (const auto& [a, b] : induced_hypernyms) pairs.push_back({a, b});
  return {
      {"roots", roots},
      {"depth", depth},
      {"relations", rels},
      {"taxonomic_downward", traversal.taxonomic_downward},
      {"lateral_bidirectional", traversal.lateral_bidirectional},
      {"members", discovery_order},
      {"hypernym_pairs", pairs},
  };
}

Domain Domain::from_json(const json& j) {
  Domain d;
  try {
    d.roots = j.at("roots").get<std::vector<ConceptId>>();
    d.depth = j.at("depth").get<int>();
    for (const auto& r : j.at("relations")) d.relations_used.insert(parse_relation(r.get<std::string>()));
    d.traversal.taxonomic_downward = j.value("taxonomic_downward", true);
    d.traversal.lateral_bidirectional = j.value("lateral_bidirectional", true);
    d.discovery_order = j.at("members").get<std::vector<ConceptId>>();
    d.members.insert(d.discovery_order.begin(), d.discovery_order.end());
    for (const auto& p : j.at("hypernym_pairs")) {
      d.induced_hypernyms.emplace(p.at(0).get<std::string>(), p.at(1).get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed domain manifest: ") + e.what());
  }
  return d;
}

}  // namespace synthcorp
