#include "synthcorp/translator.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/seeding.hpp"
#include "synthcorp/text.hpp"

#include <json.hpp>

#include <algorithm>
#include <array>
#include <istream>
#include <ostream>
#include <sstream>

namespace synthcorp {

using nlohmann::json;

namespace {

constexpr std::array<std::string_view, 34> kOnsets = {
    "b",  "c",  "d",  "f",  "g",  "h",  "j",  "k",  "l",  "m",  "n",  "p",
    "r",  "s",  "t",  "v",  "w",  "z",  "br", "cr", "dr", "fr", "gr", "pr",
    "tr", "st", "sh", "ch", "bl", "cl", "fl", "gl", "pl", "sl"};
constexpr std::array<std::string_view, 10> kNuclei = {"a", "e", "i", "o", "u", "ou", "oa", "ai", "ee", "io"};
constexpr std::array<std::string_view, 12> kCodas = {"", "", "n", "r", "s", "t", "l", "m", "ck", "st", "mp", "nd"};

}  // namespace

FormMap::FormMap(std::uint64_t seed, std::set<std::string> reserved)
    : seed_(seed), reserved_(std::move(reserved)) {}

std::string FormMap::generate(const std::string& word, std::uint32_t retry) const {
  std::string key(8, '\0');
  for (int i = 0; i < 8; ++i) key[i] = static_cast<char>((seed_ >> (8 * i)) & 0xff);
  key += word;
  for (int i = 0; i < 4; ++i) key.push_back(static_cast<char>((retry >> (8 * i)) & 0xff));
  SplitMix64 rng(text::fnv1a64(key));

  const std::size_t syllables = std::clamp<std::size_t>(2 + word.size() / 4, 2, 5);
  std::string out;
  for (std::size_t s = 0; s < syllables; ++s) {
    out += kOnsets[rng.next() % kOnsets.size()];
    out += kNuclei[rng.next() % kNuclei.size()];
    out += kCodas[rng.next() % kCodas.size()];
  }
  return out;
}

std::string FormMap::word_gibberish(const std::string& word) {
  if (auto it = words_.find(word); it != words_.end()) return it->second;
  for (std::uint32_t retry = 0; retry < static_cast<std::uint32_t>(kMaxRetries); ++retry) {
    std::string candidate = generate(word, retry);
    if (candidate == word || reserved_.contains(candidate) || word_inverse_.contains(candidate)) continue;
    words_.emplace(word, candidate);
    word_inverse_.emplace(candidate, word);
    return candidate;
  }
  throw ExhaustionError("no collision-free pseudo-word for '" + word + "' after " +
                        std::to_string(kMaxRetries) + " retries");
}

std::string FormMap::gibberish_form(std::string_view form, PartOfSpeech pos) {
  if (form.empty()) throw Error("cannot translate an empty form");
  std::string folded = text::fold(form);
  if (auto it = entries_.find(folded); it != entries_.end()) return it->second.gibberish;

  std::vector<char> seps;
  auto words = text::split_words(folded, &seps);
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (!words[i].empty()) out += word_gibberish(std::string(words[i]));
    if (i < seps.size()) out.push_back(seps[i]);
  }
  entries_.emplace(folded, Entry{out, pos});
  inverse_.emplace(out, folded);
  return out;
}

std::string FormMap::invert(std::string_view gibberish) const {
  auto it = inverse_.find(gibberish);
  if (it == inverse_.end()) throw LookupError("not a generated form: '" + std::string(gibberish) + "'");
  return it->second;
}

std::optional<std::string> FormMap::lookup(std::string_view form) const {
  auto it = entries_.find(text::fold(form));
  if (it == entries_.end()) return std::nullopt;
  return it->second.gibberish;
}

std::optional<std::string> FormMap::word_for(std::string_view folded_word) const {
  auto it = words_.find(folded_word);
  if (it == words_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::string> FormMap::word_from(std::string_view gibberish_word) const {
  auto it = word_inverse_.find(gibberish_word);
  if (it == word_inverse_.end()) return std::nullopt;
  return it->second;
}

void FormMap::save(std::ostream& out) const {
  json header = {{"seed", seed_}, {"reserved", reserved_}};
  out << header.dump() << '\n';
  for (const auto& [form, e] : entries_) {
    json rec = {{"form", form}, {"gibberish", e.gibberish}, {"pos", std::string(pos_code(e.pos))}};
    out << rec.dump() << '\n';
  }
}

FormMap FormMap::load(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error("empty form map file");
  FormMap map;
  try {
    json header = json::parse(line);
    map.seed_ = header.at("seed").get<std::uint64_t>();
    map.reserved_ = header.at("reserved").get<std::set<std::string>>();
    while (std::getline(in, line)) {
      if (text::trim(line).empty()) continue;
      json rec = json::parse(line);
      std::string form = rec.at("form").get<std::string>();
      std::string gib = rec.at("gibberish").get<std::string>();
      std::vector<char> fs, gs;
      auto fw = text::split_words(form, &fs);
      auto gw = text::split_words(gib, &gs);
      if (fw.size() != gw.size() || fs != gs) throw Error("form map record shape mismatch for '" + form + "'");
      for (std::size_t i = 0; i < fw.size(); ++i) {
        if (fw[i].empty()) continue;
        map.words_.emplace(fw[i], gw[i]);
        map.word_inverse_.emplace(gw[i], fw[i]);
      }
      map.inverse_.emplace(gib, form);
      map.entries_.emplace(std::move(form), Entry{std::move(gib), parse_pos(rec.at("pos").get<std::string>())});
    }
  } catch (const json::exception& e) {
    throw Error(std::string("malformed form map: ") + e.what());
  }
  return map;
}

std::string FormMap::digest() const {
  std::ostringstream os;
  save(os);
  return text::hex64(text::fnv1a64(os.str()));
}

std::set<std::string> reserved_vocabulary(const std::set<std::string>& folded_forms,
                                          const std::vector<std::string>& texts) {
  std::set<std::string> out;
  for (const auto& f : folded_forms) {
    out.insert(f);
    for (auto w : text::split_words(f)) {
      if (!w.empty()) out.emplace(w);
    }
    for (auto r : text::letter_runs(f)) out.emplace(r);
  }
  for (const auto& t : texts) {
    for (auto r : text::letter_runs(t)) out.insert(text::fold(r));
  }
  return out;
}

}  // namespace synthcorp
