#pragma once

#include "synthcorp/lexicon.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace synthcorp {

// Deterministic, collision-free mapping from case-folded written forms to
// pseudo-words. Forms are translated word by word (words split on spaces and
// hyphens), so a word keeps the same pseudo-word inside every form.
//
// Word generation: SplitMix64 seeded with FNV-1a-64 over
// (seed as 8 LE bytes || word bytes || retry counter as 4 LE bytes);
// syllable count = clamp(2 + len/4, 2, 5); each syllable is
// onset + nucleus + coda drawn from fixed tables. A candidate equal to a
// reserved string or an existing output is regenerated with retry + 1.
class FormMap {
 public:
  struct Entry {
    std::string gibberish;
    PartOfSpeech pos = PartOfSpeech::noun;  // part-of-speech seen first
    bool operator==(const Entry&) const = default;
  };

  static constexpr int kMaxRetries = 1000;

  explicit FormMap(std::uint64_t seed = 0, std::set<std::string> reserved = {});

  // Returns the pseudo-word form for `form` (case-folded first), creating and
  // registering it on first use. Throws ExhaustionError if no collision-free
  // word is found within kMaxRetries.
  std::string gibberish_form(std::string_view form, PartOfSpeech pos);

  // Unique preimage of a full gibberish form. Throws LookupError.
  std::string invert(std::string_view gibberish) const;

  std::optional<std::string> lookup(std::string_view form) const;
  bool contains(std::string_view form) const { return lookup(form).has_value(); }

  // Word-level views used for token-wise substitution and inversion.
  std::optional<std::string> word_for(std::string_view folded_word) const;
  std::optional<std::string> word_from(std::string_view gibberish_word) const;

  std::uint64_t seed() const { return seed_; }
  const std::set<std::string>& reserved() const { return reserved_; }
  const std::map<std::string, Entry, std::less<>>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Header line (seed, reserved) followed by one record per form, sorted.
  void save(std::ostream& out) const;
  static FormMap load(std::istream& in);
  std::string digest() const;

  bool operator==(const FormMap& other) const {
    return seed_ == other.seed_ && reserved_ == other.reserved_ && entries_ == other.entries_;
  }

 private:
  std::string word_gibberish(const std::string& word);
  std::string generate(const std::string& word, std::uint32_t retry) const;

  std::uint64_t seed_;
  std::set<std::string> reserved_;
  std::map<std::string, Entry, std::less<>> entries_;
  std::map<std::string, std::string, std::less<>> inverse_;
  std::map<std::string, std::string, std::less<>> words_;
  std::map<std::string, std::string, std::less<>> word_inverse_;
};

// Strings no pseudo-word may spell: every form, every word and letter run of
// every form, and every letter run of the supplied texts, all case-folded.
std::set<std::string> reserved_vocabulary(const std::set<std::string>& folded_forms,
                                          const std::vector<std::string>& texts);

}  // namespace synthcorp
