#include "synthcorp/errors.hpp"
#include "synthcorp/propagator.hpp"

#include "support/fixtures.hpp"
#include "support/random_lexicon.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace synthcorp;
using namespace synthcorp::testkit;
using Kind = PropagationStep::Kind;

namespace {

std::set<ConceptId> as_set(const std::vector<ConceptId>& v) { return {v.begin(), v.end()}; }

ParallelCorpus propagate_all(const Lexicon& lex, const Domain& d, std::uint64_t seed) {
  return propagate(lex, d, link_definitions(lex, d), seed);
}

}  // namespace

TEST(Propagator, FiveConceptTrace) {
  Lexicon lex = five_concept_lexicon();
  Domain d = domain_of(lex);
  ParallelCorpus c = propagate_all(lex, d, 1);
  ASSERT_EQ(c.trace.size(), 3u);
  EXPECT_EQ(c.trace[0].kind, Kind::seed);
  EXPECT_EQ(as_set(c.trace[0].completed), (std::set<ConceptId>{"fruit", "sweet_a"}));
  EXPECT_EQ(as_set(c.trace[0].partial), std::set<ConceptId>{"sweet_n"});
  EXPECT_EQ(c.trace[1].kind, Kind::progress);
  EXPECT_EQ(as_set(c.trace[1].completed), std::set<ConceptId>{"dessert"});
  EXPECT_EQ(as_set(c.trace[2].completed), (std::set<ConceptId>{"compote", "sweet_n"}));
  EXPECT_EQ(c.trace.back().layer_size, 5u);

  const auto& dessert = c.entry("dessert");
  EXPECT_EQ(dessert.forms_gib.size(), 1u);
  EXPECT_EQ(dessert.definition_gib.find("sweet"), std::string::npos);
  // sweet (n) and sweet (a) share one pseudo-word.
  EXPECT_EQ(c.entry("sweet_n").forms_gib, c.entry("sweet_a").forms_gib);
  EXPECT_EQ(c.entry("compote").hypernyms, (std::vector<ConceptId>{"dessert", "sweet_n"}));
  EXPECT_EQ(c.entry("compote").mentions, (std::vector<ConceptId>{"dessert", "fruit"}));
}

TEST(Propagator, TwoCycleNeedsOneStall) {
  using enum PartOfSpeech;
  Lexicon lex = Lexicon::from_records({
      record("a", noun, {"alpha"}, "kind of beta"),
      record("b", noun, {"beta"}, "kind of alpha"),
  });
  Domain d = domain_of(lex);
  ParallelCorpus c = propagate_all(lex, d, 3);
  EXPECT_LE(c.trace.size(), 4u);
  EXPECT_EQ(c.trace[0].completed.size(), 0u);
  EXPECT_EQ(c.trace[1].kind, Kind::stall);
  EXPECT_EQ(c.trace[1].partial.size(), 1u);
  EXPECT_EQ(c.trace[2].kind, Kind::progress);
  EXPECT_EQ(c.entries.size(), 2u);
  for (const auto& e : c.entries) EXPECT_EQ(restore_definition(e.definition_gib, c.form_map), e.definition_en);
}

TEST(Propagator, Sweets12Layers) {
  ParallelCorpus c = sweets12_corpus();
  std::vector<std::set<ConceptId>> expected{
      {"chocolate", "sugar"},
      {"confection", "sweet_a"},
      {"candy", "dessert"},
      {"chocolate_candy", "pudding", "sweet_n"},
      {"custard", "vanilla_pudding"},
      {"egg_white"},
  };
  ASSERT_EQ(c.trace.size(), expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) EXPECT_EQ(as_set(c.trace[i].completed), expected[i]) << i;
  EXPECT_EQ(c.trace[1].partial, std::vector<ConceptId>{"sweet_n"});
  // Out-of-domain homonym gets a form but no corpus entry.
  EXPECT_EQ(c.trace[2].partial, std::vector<ConceptId>{"candy_v"});
  EXPECT_EQ(c.layer_size, 13u);
  EXPECT_EQ(c.entries.size(), 12u);
  EXPECT_THROW(c.entry("candy_v"), LookupError);
}

TEST(Propagator, SubstitutionPreservesCaseAndRoundTrips) {
  ParallelCorpus c = sweets12_corpus();
  const auto& e = c.entry("chocolate_candy");
  std::string candy = c.entry("candy").forms_gib.front();
  ASSERT_FALSE(candy.empty());
  std::string cap = candy;
  cap[0] = static_cast<char>(cap[0] - 'a' + 'A');
  EXPECT_EQ(e.definition_gib.rfind(cap, 0), 0u) << e.definition_gib;
  for (const auto& entry : c.entries) EXPECT_EQ(restore_definition(entry.definition_gib, c.form_map), entry.definition_en);
}

TEST(Propagator, PluralSurfacesKeepTheirSuffix) {
  using enum PartOfSpeech;
  Lexicon lex = Lexicon::from_records({
      record("p", noun, {"peach"}, "a juicy fruit"),
      record("t", noun, {"tart"}, "pastry filled with peaches"),
  });
  Domain d = domain_of(lex);
  auto links = link_definitions(lex, d, MatcherOptions{true});
  ParallelCorpus c = propagate(lex, d, links, 2);
  std::string peach = c.entry("p").forms_gib.front();
  EXPECT_NE(c.entry("t").definition_gib.find(peach + "es"), std::string::npos);
  EXPECT_EQ(restore_definition(c.entry("t").definition_gib, c.form_map, true), "pastry filled with peaches");
}

TEST(Propagator, DeterministicAndSerializable) {
  ParallelCorpus a = sweets12_corpus(5);
  ParallelCorpus b = sweets12_corpus(5);
  std::ostringstream sa, sb, ma;
  a.save(sa);
  b.save(sb);
  EXPECT_EQ(sa.str(), sb.str());
  a.form_map.save(ma);
  std::istringstream cin(sa.str()), min(ma.str());
  ParallelCorpus back = ParallelCorpus::load(cin, min);
  EXPECT_EQ(back.entries, a.entries);
  EXPECT_EQ(back.trace, a.trace);
  EXPECT_EQ(back.form_map, a.form_map);

  std::istringstream bad_c(sa.str());
  std::istringstream other_map([] {
    std::ostringstream o;
    sweets12_corpus(6).form_map.save(o);
    return o.str();
  }());
  EXPECT_THROW(ParallelCorpus::load(bad_c, other_map), Error);
}

TEST(Propagator, RandomLexiconsTerminateAndComplete) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    RandomLexiconOptions o;
    o.concepts = 10 + seed * 3;
    Lexicon lex = random_lexicon(seed, o);
    Domain d = whole_domain(lex);
    ParallelCorpus c = propagate_all(lex, d, seed);
    ASSERT_EQ(c.entries.size(), d.members.size());
    ASSERT_LE(c.trace.size(), d.members.size() + c.layer_size) << seed;
    FormMatcher english(domain_forms(lex, d));
    for (const auto& e : c.entries) {
      ASSERT_TRUE(english.find_all(e.definition_gib).empty()) << e.definition_gib;
      ASSERT_EQ(restore_definition(e.definition_gib, c.form_map), e.definition_en) << seed << " " << e.id;
    }
  }
}
