#pragma once

#include "synthcorp/lexicon.hpp"
#include "synthcorp/miner.hpp"

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace synthcorp {

struct MatcherOptions {
  // Also accept a trailing "s" or "es" after a form.
  bool plural_tolerance = false;
};

struct FormMatch {
  std::size_t start = 0;
  std::size_t end = 0;  // exclusive, includes any plural suffix
  std::string form;     // case-folded form that matched
  std::size_t suffix = 0;
};

// Greedy longest-match scanner for a fixed vocabulary of forms. Matches are
// case-insensitive and must start and end on word boundaries; a hyphen
// between two letters joins them into one word.
class FormMatcher {
 public:
  FormMatcher() = default;
  FormMatcher(const std::set<std::string>& folded_forms, MatcherOptions options = {});

  // Non-overlapping matches, scanned left to right, longest first.
  std::vector<FormMatch> find_all(std::string_view text) const;

 private:
  // Forms keyed by their leading letter run, longest first.
  std::map<std::string, std::vector<std::string>, std::less<>> by_head_;
  MatcherOptions options_;
};

struct DefinitionLink {
  ConceptId concept_id;
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
  std::string form;
  std::size_t suffix = 0;  // plural suffix length inside the surface
  std::vector<ConceptId> referenced;  // sorted

  bool operator==(const DefinitionLink&) const = default;

  nlohmann::json to_json() const;
  static DefinitionLink from_json(const nlohmann::json& j);
};

// Case-folded written forms of every domain member.
std::set<std::string> domain_forms(const Lexicon& lex, const Domain& domain);

// Links every in-domain form mention inside member definitions. Output is
// ordered by owner id, then span start.
std::vector<DefinitionLink> link_definitions(const Lexicon& lex, const Domain& domain,
                                             const MatcherOptions& options = {});

// Members whose links reference nothing but themselves.
std::set<ConceptId> dependency_free(const Domain& domain, const std::vector<DefinitionLink>& links);

// Groups links by owner, preserving order.
std::map<ConceptId, std::vector<DefinitionLink>> links_by_owner(const std::vector<DefinitionLink>& links);

}  // namespace synthcorp
