#include "synthcorp/runner.hpp"
#include "synthcorp/text.hpp"

#include <json.hpp>

#include <regex>

namespace synthcorp {

using nlohmann::json;

std::string_view td_answer_name(TdAnswer a) {
  switch (a) {
    case TdAnswer::True: return "True";
    case TdAnswer::False: return "False";
    case TdAnswer::Invalid: return "Invalid";
  }
  return "Invalid";
}

namespace {

std::optional<Relation> normalize_relation(std::string_view raw) {
  std::string r = text::fold(raw);
  for (char& c : r) {
    if (c == '_' || c == '-') c = ' ';
  }
  if (r.find("subclass") != std::string::npos || r == "is a" || r == "isa") return Relation::subclass_of;
  if (r.find("part of") != std::string::npos || r.find("partof") != std::string::npos) return Relation::part_of;
  return std::nullopt;
}

std::string clean_term(std::string_view raw) {
  std::string t = text::trim(raw);
  while (t.size() >= 2 && (t.front() == '"' || t.front() == '\'') && t.back() == t.front()) {
    t = text::trim(std::string_view(t).substr(1, t.size() - 2));
  }
  return t;
}

void add_triple(RelationParse& out, std::string_view s, std::string_view r, std::string_view o) {
  auto rel = normalize_relation(r);
  std::string subject = clean_term(s), object = clean_term(o);
  if (!rel || subject.empty() || object.empty()) return;
  out.triples.insert({std::move(subject), *rel, std::move(object)});
}

// Returns false if the value has no recognizable triple structure at all.
bool collect(const json& v, RelationParse& out) {
  if (v.is_array()) {
    if (v.size() == 3 && v[0].is_string() && v[1].is_string() && v[2].is_string()) {
      add_triple(out, v[0].get<std::string>(), v[1].get<std::string>(), v[2].get<std::string>());
      return true;
    }
    bool ok = true;
    for (const auto& item : v) ok = collect(item, out) && ok;
    return ok;
  }
  if (v.is_object()) {
    if (v.contains("subject") && v.contains("relation") && v.contains("object")) {
      const auto& s = v["subject"];
      const auto& r = v["relation"];
      const auto& o = v["object"];
      if (s.is_string() && r.is_string() && o.is_string()) {
        add_triple(out, s.get<std::string>(), r.get<std::string>(), o.get<std::string>());
      }
      return true;
    }
    for (const char* key : {"triples", "relations", "answer", "result"}) {
      if (auto it = v.find(key); it != v.end()) return collect(*it, out);
    }
  }
  return false;
}

bool try_json(std::string_view raw, RelationParse& out) {
  std::size_t open = raw.find_first_of("[{");
  while (open != std::string_view::npos) {
    char close_char = raw[open] == '[' ? ']' : '}';
    std::size_t close = raw.rfind(close_char);
    if (close != std::string_view::npos && close > open) {
      try {
        json v = json::parse(raw.substr(open, close - open + 1));
        RelationParse attempt;
        if (collect(v, attempt)) {
          out = std::move(attempt);
          return true;
        }
      } catch (const json::exception&) {
      }
    }
    open = raw.find_first_of("[{", open + 1);
  }
  return false;
}

}  // namespace

RelationParse parse_re_response(std::string_view raw) {
  RelationParse out;
  if (text::trim(raw).empty()) {
    out.warning = true;
    return out;
  }
  if (try_json(raw, out)) return out;

  static const std::regex line_pattern(
      R"(\(\s*([^,()\n]+?)\s*,\s*(is a subclass of|is a part of|subclass of|part of)\s*,\s*([^,()\n]+?)\s*\))",
      std::regex::icase);
  std::string s(raw);
  for (auto it = std::sregex_iterator(s.begin(), s.end(), line_pattern); it != std::sregex_iterator(); ++it) {
    add_triple(out, (*it)[1].str(), (*it)[2].str(), (*it)[3].str());
  }
  if (out.triples.empty()) out.warning = true;
  return out;
}

TdAnswer parse_td_response(std::string_view raw) {
  for (auto run : text::letter_runs(raw)) {
    std::string w = text::fold(run);
    if (w == "true") return TdAnswer::True;
    if (w == "false") return TdAnswer::False;
  }
  return TdAnswer::Invalid;
}

}  // namespace synthcorp
