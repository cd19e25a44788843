#include "synthcorp/linker.hpp"

#include "synthcorp/text.hpp"

#include <algorithm>

namespace synthcorp {

using nlohmann::json;

namespace {

bool letter_at(std::string_view s, std::size_t i) {
  return i < s.size() && text::is_letter(static_cast<unsigned char>(s[i]));
}

// True when position `i` does not continue a word that started before it.
bool starts_word(std::string_view s, std::size_t i) {
  if (i == 0) return true;
  if (letter_at(s, i - 1)) return false;
  if (s[i - 1] == '-' && i >= 2 && letter_at(s, i - 2) && letter_at(s, i)) return false;
  return true;
}

// True when the word ends right before position `i`.
bool ends_word(std::string_view s, std::size_t i) {
  if (i >= s.size()) return true;
  if (letter_at(s, i)) return false;
  if (s[i] == '-' && i > 0 && letter_at(s, i - 1) && letter_at(s, i + 1)) return false;
  return true;
}

std::string_view head_run(std::string_view s) {
  std::size_t j = 0;
  while (letter_at(s, j)) ++j;
  return s.substr(0, j);
}

bool iequal_prefix(std::string_view text, std::size_t at, std::string_view folded) {
  if (at + folded.size() > text.size()) return false;
  for (std::size_t k = 0; k < folded.size(); ++k) {
    char c = text[at + k];
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    if (c != folded[k]) return false;
  }
  return true;
}

}  // namespace

FormMatcher::FormMatcher(const std::set<std::string>& folded_forms, MatcherOptions options)
    : options_(options) {
  for (const auto& f : folded_forms) {
    std::string_view head = head_run(f);
    if (head.empty()) continue;  // forms must begin with a letter to be matchable
    by_head_[std::string(head)].push_back(f);
  }
  for (auto& [head, forms] : by_head_) {
    std::stable_sort(forms.begin(), forms.end(),
                     [](const std::string& a, const std::string& b) { return a.size() > b.size(); });
  }
}

std::vector<FormMatch> FormMatcher::find_all(std::string_view text) const {
  std::vector<FormMatch> out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!letter_at(text, i) || !starts_word(text, i)) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (letter_at(text, run_end)) ++run_end;
    std::string head = text::fold(text.substr(i, run_end - i));

    const FormMatch* best = nullptr;
    FormMatch candidate;
    // A form's head run can be shorter than the text's run only when the
    // form is a plural-stripped match, so probe both the full run and, with
    // plural tolerance, the run minus "s"/"es".
    std::vector<std::string> heads{head};
    if (options_.plural_tolerance) {
      if (head.size() > 1 && head.back() == 's') heads.push_back(head.substr(0, head.size() - 1));
      if (head.size() > 2 && head.ends_with("es")) heads.push_back(head.substr(0, head.size() - 2));
    }
    for (const auto& h : heads) {
      auto it = by_head_.find(h);
      if (it == by_head_.end()) continue;
      for (const auto& form : it->second) {
        if (best && form.size() + 2 <= best->end - best->start) break;
        if (!iequal_prefix(text, i, form)) continue;
        std::size_t end = i + form.size();
        std::size_t suffix = 0;
        if (!ends_word(text, end)) {
          if (!options_.plural_tolerance) continue;
          if (iequal_prefix(text, end, "es") && ends_word(text, end + 2)) {
            suffix = 2;
          } else if (iequal_prefix(text, end, "s") && ends_word(text, end + 1)) {
            suffix = 1;
          } else {
            continue;
          }
        }
        std::size_t total = form.size() + suffix;
        if (!best || total > best->end - best->start) {
          candidate = FormMatch{i, i + total, form, suffix};
          best = &candidate;
        }
      }
    }
    if (best) {
      out.push_back(*best);
      i = best->end;
    } else {
      i = run_end;
    }
  }
  return out;
}

std::set<std::string> domain_forms(const Lexicon& lex, const Domain& domain) {
  std::set<std::string> forms;
  for (const auto& id : domain.members) {
    for (const auto& f : lex.at(id).written_forms) forms.insert(text::fold(f));
  }
  return forms;
}

std::vector<DefinitionLink> link_definitions(const Lexicon& lex, const Domain& domain,
                                             const MatcherOptions& options) {
  FormMatcher matcher(domain_forms(lex, domain), options);
  std::vector<DefinitionLink> links;
  for (const auto& id : domain.members) {
    const Concept& c = lex.at(id);
    for (auto& m : matcher.find_all(c.definition)) {
      DefinitionLink link;
      link.concept_id = id;
      link.start = m.start;
      link.end = m.end;
      link.surface = c.definition.substr(m.start, m.end - m.start);
      link.suffix = m.suffix;
      for (const auto& ref : lex.concepts_with_form(m.form)) {
        if (domain.members.contains(ref)) link.referenced.push_back(ref);
      }
      link.form = std::move(m.form);
      links.push_back(std::move(link));
    }
  }
  return links;
}

std::set<ConceptId> dependency_free(const Domain& domain, const std::vector<DefinitionLink>& links) {
  std::set<ConceptId> out = domain.members;
  for (const auto& link : links) {
    for (const auto& ref : link.referenced) {
      if (ref != link.concept_id) {
        out.erase(link.concept_id);
        break;
      }
    }
  }
  return out;
}

std::map<ConceptId, std::vector<DefinitionLink>> links_by_owner(const std::vector<DefinitionLink>& links) {
  std::map<ConceptId, std::vector<DefinitionLink>> out;
  for (const auto& l : links) out[l.concept_id].push_back(l);
  return out;
}

json DefinitionLink::to_json() const {
  return {{"owner", concept_id}, {"start", start},   {"end", end},
          {"surface", surface},  {"form", form},     {"suffix", suffix},
          {"referenced", referenced}};
}

DefinitionLink DefinitionLink::from_json(const json& j) {
  DefinitionLink l;
  l.concept_id = j.at("owner").get<std::string>();
  l.start = j.at("start").get<std::size_t>();
  l.end = j.at("end").get<std::size_t>();
  l.surface = j.at("surface").get<std::string>();
  l.form = j.at("form").get<std::string>();
  l.suffix = j.value("suffix", std::size_t{0});
  l.referenced = j.at("referenced").get<std::vector<ConceptId>>();
  return l;
}

}  // namespace synthcorp
