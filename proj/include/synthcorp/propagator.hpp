#pragma once

#include "synthcorp/lexicon.hpp"
#include "synthcorp/linker.hpp"
#include "synthcorp/miner.hpp"
#include "synthcorp/translator.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace synthcorp {

enum class ProcessingStatus { unprocessed, partial, full };

struct PropagationStep {
  enum class Kind { seed, progress, stall };
  Kind kind = Kind::seed;
  std::vector<ConceptId> completed;  // became fully processed
  std::vector<ConceptId> partial;    // newly partially processed (incl. out-of-domain homonyms)
  std::size_t layer_size = 0;        // |D_n| after the step

  bool operator==(const PropagationStep&) const = default;
};

struct CorpusEntry {
  ConceptId id;
  PartOfSpeech pos = PartOfSpeech::noun;
  std::vector<std::string> forms_en;
  std::string definition_en;
  std::vector<std::string> forms_gib;
  std::string definition_gib;
  std::vector<ConceptId> hypernyms;  // in-domain ancestors (transitive)
  std::vector<ConceptId> holonyms;   // in-domain wholes this concept is part of
  std::vector<ConceptId> mentions;   // members referenced from the definition

  bool operator==(const CorpusEntry&) const = default;
};

struct ParallelCorpus {
  std::uint64_t seed = 0;
  std::string domain_digest;
  FormMap form_map;
  std::vector<CorpusEntry> entries;  // sorted by id
  std::vector<PropagationStep> trace;
  std::size_t layer_size = 0;        // final |D_n|, may exceed the member count

  // Throws LookupError for non-members.
  const CorpusEntry& entry(std::string_view id) const;

  // Corpus records only; the form map goes to its own file.
  void save(std::ostream& out) const;
  static ParallelCorpus load(std::istream& corpus, std::istream& form_map);
};

std::string domain_digest(const Domain& domain);

// Replaces each linked span with the pseudo-word rendering of its form, keeping
// the surface's per-word capitalization and any plural suffix. All text outside
// links is copied byte for byte. Throws UnresolvedDependencyError when a link's
// form has no mapping.
std::string substitute_definition(std::string_view definition, std::span<const DefinitionLink> links,
                                  const FormMap& map);

// Inverse of substitute_definition at token level: every letter run that is a
// generated pseudo-word is replaced by its source word.
std::string restore_definition(std::string_view gibberish_definition, const FormMap& map,
                               bool plural_tolerance = false);

// Assigns pseudo-word forms and definitions to every member, layer by layer:
// dependency-free concepts first, then concepts whose links all resolve
// against the current layer, sampling a concept to seed the layer whenever no
// concept is eligible. Homonyms (lexicon-wide) of processed concepts join the
// layer as partially processed.
ParallelCorpus propagate(const Lexicon& lex, const Domain& domain, const std::vector<DefinitionLink>& links,
                         std::uint64_t seed);

}  // namespace synthcorp
