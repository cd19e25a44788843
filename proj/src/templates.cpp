#include "synthcorp/templates.hpp"

#include "synthcorp/errors.hpp"

#include <fstream>
#include <sstream>

namespace synthcorp {

namespace {

// Mirrors templates/relation_extraction.txt.
constexpr const char* kRelationExtraction = R"tmpl(You extract taxonomic and part-whole relations from dictionary definitions.
Given a concept, its part-of-speech and its definition, list every relation that holds between the concept and the concepts mentioned in its definition, or among those mentioned concepts.
Use only two relations: "is a subclass of" and "is a part of".
Answer with a JSON array of objects with the keys "subject", "relation" and "object", and nothing else.

Example:
Concept: oak
Part-of-speech: noun
Definition: a deciduous tree with lobed leaves and acorns
Answer: [{"subject": "oak", "relation": "is a subclass of", "object": "tree"}, {"subject": "acorn", "relation": "is a part of", "object": "oak"}]

Concept: {F_C}
Part-of-speech: {P_C}
Definition: {D_C}
)tmpl";

// Mirrors templates/taxonomy_discovery.txt.
constexpr const char* kTaxonomyDiscovery = R"tmpl(Decide whether Concept A is a subclass of Concept B, using only the written forms and definitions given.
Answer with a JSON object of the form {"answer": "True"} or {"answer": "False"}, and nothing else.

Example:
Concept A: oak
Definition: a deciduous tree with lobed leaves and acorns

Concept B: tree
Definition: a tall woody plant with a single main stem
Answer: {"answer": "True"}

Concept A: {F_A}
Definition: {D_A}

Concept B: {F_B}
Definition: {D_B}
)tmpl";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open template file '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

PromptTemplates PromptTemplates::defaults() { return {kRelationExtraction, kTaxonomyDiscovery}; }

PromptTemplates PromptTemplates::load(const std::string& re_path, const std::string& td_path) {
  PromptTemplates t = defaults();
  if (!re_path.empty()) t.relation_extraction = read_file(re_path);
  if (!td_path.empty()) t.taxonomy_discovery = read_file(td_path);
  return t;
}

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string, std::less<>>& values) {
  std::string out;
  out.reserve(tmpl.size());
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      std::size_t close = tmpl.find('}', i + 1);
      if (close != std::string_view::npos) {
        auto it = values.find(tmpl.substr(i + 1, close - i - 1));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out.push_back(tmpl[i++]);
  }
  return out;
}

}  // namespace synthcorp
