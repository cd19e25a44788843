#include "random_lexicon.hpp"

#include "synthcorp/seeding.hpp"

#include <cctype>
#include <cstdio>
#include <set>

namespace synthcorp::testkit {

namespace {

const char* kSyllables[] = {"ba", "be", "bo", "da", "di", "do", "fa", "fe", "ga", "gu", "ka", "ki",
                            "lo", "lu", "ma", "me", "na", "ni", "pa", "po", "ra", "ri", "sa", "so",
                            "ta", "te", "va", "vo", "za", "zu", "th", "ch", "st", "pl"};

std::string id_for(std::size_t i, bool in_domain) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04zu", in_domain ? "c" : "x", i);
  return buf;
}

bool chance(SplitMix64& rng, double p) {
  return static_cast<double>(rng.next() >> 11) * 0x1.0p-53 < p;
}

std::string cased(const std::string& w, SplitMix64& rng) {
  switch (rng.uniform(8)) {
    case 0: {
      std::string out = w;
      out[0] = static_cast<char>(out[0] - 'a' + 'A');
      return out;
    }
    case 1: {
      std::string out = w;
      for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
      return out;
    }
    default: return w;
  }
}

}  // namespace

std::vector<std::string> make_words(std::uint64_t seed, std::size_t n) {
  SplitMix64 rng(seed);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w;
    std::size_t syl = 2 + rng.uniform(3);
    for (std::size_t s = 0; s < syl; ++s) w += kSyllables[rng.uniform(std::size(kSyllables))];
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

Lexicon random_lexicon(std::uint64_t seed, const RandomLexiconOptions& o) {
  SplitMix64 rng(seed);
  const std::size_t n = o.concepts;
  // Forms and filler words come from one pool so they never coincide.
  auto words = make_words(seed ^ 0x5eedULL, 3 * n + 40);
  std::size_t next_word = 0;
  std::vector<std::string> filler(words.end() - 40, words.end());

  std::vector<ConceptRecord> recs(n);
  std::vector<std::string> ids(n);
  std::vector<std::string> forms;  // every distinct form so far
  for (std::size_t i = 0; i < n; ++i) {
    bool in_domain = !chance(rng, o.out_of_domain) || i == 0;
    ids[i] = id_for(i, in_domain);
    auto& c = recs[i].data;
    c.id = ids[i];
    c.pos = static_cast<PartOfSpeech>(rng.uniform(4));
    if (!forms.empty() && chance(rng, o.homonym_rate)) {
      c.written_forms.push_back(forms[rng.uniform(forms.size())]);
    } else {
      std::string f = words[next_word++];
      if (chance(rng, o.multiword_rate)) f += (rng.uniform(2) ? " " : "-") + words[next_word++];
      c.written_forms.push_back(f);
      forms.push_back(f);
    }
    if (chance(rng, 0.2)) {
      c.written_forms.push_back(words[next_word++]);
      forms.push_back(c.written_forms.back());
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    auto& rec = recs[i];
    std::string def;
    std::size_t mentions = rng.uniform(o.max_mentions + 1);
    std::size_t pieces = 2 + rng.uniform(4);
    for (std::size_t p = 0; p < pieces + mentions; ++p) {
      if (!def.empty()) def += (rng.uniform(6) == 0 ? ", " : " ");
      bool mention = p >= pieces || (mentions > 0 && rng.uniform(3) == 0);
      if (mention) {
        const auto& other = recs[rng.uniform(n)].data;
        const auto& f = other.written_forms[rng.uniform(other.written_forms.size())];
        def += cased(f, rng);
        if (mentions > 0) --mentions;
      } else {
        def += filler[rng.uniform(filler.size())];
      }
    }
    if (rng.uniform(2)) def[0] = static_cast<char>(def[0] >= 'a' && def[0] <= 'z' ? def[0] - 'a' + 'A' : def[0]);
    def += rng.uniform(3) == 0 ? "." : "";
    rec.data.definition = def;

    if (i > 0 && chance(rng, o.hypernym_rate)) {
      std::size_t k = 1 + rng.uniform(2);
      std::set<std::size_t> targets;
      for (std::size_t t = 0; t < k; ++t) targets.insert(rng.uniform(i));
      for (auto t : targets) rec.relations.emplace_back(RelationKind::hypernym, ids[t]);
    }
    if (i > 0 && chance(rng, o.holonym_rate)) rec.relations.emplace_back(RelationKind::holonym, ids[rng.uniform(i)]);
    if (i > 0 && chance(rng, 0.1)) rec.relations.emplace_back(RelationKind::derivation, ids[rng.uniform(i)]);
  }
  return Lexicon::from_records(std::move(recs));
}

Domain whole_domain(const Lexicon& lex) {
  Domain d;
  for (const auto& [id, c] : lex.concepts()) {
    if (id.front() == 'c') d.members.insert(id);
  }
  d.roots = {*d.members.begin()};
  d.depth = 0;
  d.relations_used = {RelationKind::hyponym};
  d.induced_hypernyms = hypernym_closure(lex, d.members);
  d.discovery_order.assign(d.members.begin(), d.members.end());
  return d;
}

Lexicon random_hypernym_graph(std::uint64_t seed, std::size_t nodes, double edge_rate) {
  SplitMix64 rng(seed);
  std::vector<ConceptRecord> recs(nodes);
  for (std::size_t i = 0; i < nodes; ++i) {
    recs[i].data = {id_for(i, true), PartOfSpeech::noun, {"n" + std::to_string(i)}, "node"};
  }
  for (std::size_t i = 0; i < nodes; ++i) {
    for (std::size_t j = 0; j < nodes; ++j) {
      if (chance(rng, edge_rate)) recs[i].relations.emplace_back(RelationKind::hypernym, id_for(j, true));
    }
  }
  return Lexicon::from_records(std::move(recs));
}

}  // namespace synthcorp::testkit
