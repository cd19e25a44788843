#include "synthcorp/scorer.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/text.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <utility>

namespace synthcorp {

using nlohmann::json;

std::string_view setting_name(Setting s) {
  switch (s) {
    case Setting::gt_en: return "gt_en";
    case Setting::gt_gib: return "gt_gib";
    case Setting::en_vs_gib: return "en_vs_gib";
  }
  return "gt_en";
}

namespace {

double ratio(std::size_t num, std::size_t den, bool& undefined) {
  if (den == 0) {
    undefined = true;
    return 0.0;
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

double harmonic(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

std::map<std::string, const Prediction*> index_predictions(const std::vector<Prediction>& preds) {
  std::map<std::string, const Prediction*> out;
  for (const auto& p : preds) out[p.instance_id] = &p;
  return out;
}

using Pair = std::pair<ConceptId, ConceptId>;

std::set<Pair> close(const std::set<Pair>& pairs) {
  std::map<ConceptId, std::set<ConceptId>> up;
  for (const auto& [a, b] : pairs) up[a].insert(b);
  std::set<Pair> out;
  for (const auto& [start, _] : up) {
    std::vector<ConceptId> stack(up[start].begin(), up[start].end());
    std::set<ConceptId> seen;
    while (!stack.empty()) {
      ConceptId cur = std::move(stack.back());
      stack.pop_back();
      if (!seen.insert(cur).second) continue;
      if (cur != start) out.emplace(start, cur);
      if (auto it = up.find(cur); it != up.end()) {
        for (const auto& n : it->second) stack.push_back(n);
      }
    }
  }
  return out;
}

// Per-class confusion over (label, prediction) pairs with both answers valid.
void fill_classes(MetricsReport& r, const std::vector<std::pair<bool, bool>>& pairs) {
  r.evaluated = pairs.size();
  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;
  std::size_t classes = 0;
  for (bool cls : {true, false}) {
    ClassMetrics m;
    for (const auto& [label, pred] : pairs) {
      if (label == cls) ++m.support;
      if (pred == cls && label == cls) ++m.tp;
      if (pred == cls && label != cls) ++m.fp;
      if (pred != cls && label == cls) ++m.fn;
    }
    m.precision = ratio(m.tp, m.tp + m.fp, r.undefined);
    m.recall = ratio(m.tp, m.tp + m.fn, r.undefined);
    m.f1 = harmonic(m.precision, m.recall);
    r.tp += m.tp;
    r.fp += m.fp;
    r.fn += m.fn;
    if (m.support > 0 || m.tp + m.fp > 0) {
      sum_p += m.precision;
      sum_r += m.recall;
      sum_f += m.f1;
      ++classes;
    }
    r.per_class[std::string(td_answer_name(cls ? TdAnswer::True : TdAnswer::False))] = m;
  }
  if (classes == 0) {
    r.undefined = true;
    return;
  }
  r.precision = sum_p / static_cast<double>(classes);
  r.recall = sum_r / static_cast<double>(classes);
  r.f1 = sum_f / static_cast<double>(classes);
}

std::optional<bool> valid_answer(const Prediction* p) {
  if (!p || p->status != PredictionStatus::ok || p->answer == TdAnswer::Invalid) return std::nullopt;
  return p->answer == TdAnswer::True;
}

}  // namespace

json MetricsReport::to_json() const {
  json classes = json::object();
  for (const auto& [name, m] : per_class) {
    classes[name] = {{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}, {"tp", m.tp},
                     {"fp", m.fp},               {"fn", m.fn},         {"support", m.support}};
  }
  json per_concept = json::array();
  for (const auto& c : concepts) {
    per_concept.push_back({{"key", c.key},
                           {"precision", c.precision},
                           {"recall", c.recall},
                           {"en_triples", c.en_triples},
                           {"gib_triples", c.gib_triples},
                           {"shared", c.shared}});
  }
  json j = {{"setting", setting_name(setting)},
            {"task", task_name(task)},
            {"precision", precision},
            {"recall", recall},
            {"f1", f1},
            {"tp", tp},
            {"fp", fp},
            {"fn", fn},
            {"ignored", ignored},
            {"evaluated", evaluated},
            {"undefined", undefined}};
  if (!per_class.empty()) j["per_class"] = classes;
  if (!concepts.empty()) j["concepts"] = per_concept;
  return j;
}

MetricsReport score_relation_extraction(const std::vector<Prediction>& predictions,
                                        const std::vector<TaskInstance>& instances, const ParallelCorpus& corpus,
                                        Variant variant) {
  MetricsReport r;
  r.setting = variant == Variant::en ? Setting::gt_en : Setting::gt_gib;
  r.task = TaskKind::relation_extraction;

  std::map<std::string, const TaskInstance*> by_id;
  for (const auto& inst : instances) by_id[inst.id] = &inst;
  for (const auto& p : predictions) {
    auto it = by_id.find(p.instance_id);
    if (it == by_id.end()) continue;
    if (it->second->variant != variant || it->second->kind != TaskKind::relation_extraction) {
      throw ConfigError("prediction " + p.instance_id + " does not belong to the " + std::string(variant_name(variant)) +
                        " relation extraction instances");
    }
  }
  auto preds = index_predictions(predictions);

  std::map<std::string, std::vector<ConceptId>> by_form;
  for (const auto& e : corpus.entries) {
    for (const auto& f : variant == Variant::en ? e.forms_en : e.forms_gib) by_form[text::fold(f)].push_back(e.id);
  }
  for (auto& [_, ids] : by_form) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  }
  auto resolve = [&](const std::string& term) -> const std::vector<ConceptId>* {
    auto it = by_form.find(text::fold(text::trim(term)));
    return it == by_form.end() ? nullptr : &it->second;
  };

  for (const auto& inst : instances) {
    if (inst.variant != variant || inst.kind != TaskKind::relation_extraction) continue;
    std::set<Pair> gold;
    for (const auto& g : inst.gold_triples) {
      if (g.relation == Relation::subclass_of) gold.emplace(g.subject_id, g.object_id);
    }
    auto pit = preds.find(inst.id);
    const Prediction* p = pit == preds.end() ? nullptr : pit->second;
    if (!p || p->status != PredictionStatus::ok) ++r.ignored;
    ++r.evaluated;

    std::set<Pair> resolved;
    std::size_t unresolved = 0;
    if (p && p->status == PredictionStatus::ok) {
      std::set<std::pair<std::string, std::string>> bad;
      for (const auto& t : p->triples) {
        if (t.relation != Relation::subclass_of) continue;
        const auto* subs = resolve(t.subject);
        const auto* objs = resolve(t.object);
        auto key = std::pair{text::fold(text::trim(t.subject)), text::fold(text::trim(t.object))};
        if (!subs || !objs) {
          bad.insert(key);
          continue;
        }
        std::vector<Pair> hits;
        std::optional<Pair> fallback;
        for (const auto& s : *subs) {
          for (const auto& o : *objs) {
            if (s == o) continue;
            if (gold.contains({s, o})) hits.emplace_back(s, o);
            if (!fallback) fallback = Pair{s, o};
          }
        }
        if (!hits.empty()) {
          resolved.insert(hits.begin(), hits.end());
        } else if (fallback) {
          resolved.insert(*fallback);
        } else {
          bad.insert(key);
        }
      }
      unresolved = bad.size();
    }

    std::set<Pair> closed = close(resolved);
    std::size_t tp = 0;
    for (const auto& g : gold) tp += closed.contains(g) ? 1 : 0;
    std::size_t fp = unresolved;
    for (const auto& pr : resolved) fp += gold.contains(pr) ? 0 : 1;
    r.tp += tp;
    r.fp += fp;
    r.fn += gold.size() - tp;
  }
  r.precision = ratio(r.tp, r.tp + r.fp, r.undefined);
  r.recall = ratio(r.tp, r.tp + r.fn, r.undefined);
  r.f1 = harmonic(r.precision, r.recall);
  return r;
}

MetricsReport score_taxonomy(const std::vector<Prediction>& predictions, const std::vector<TaskInstance>& instances) {
  MetricsReport r;
  r.task = TaskKind::taxonomy_discovery;
  auto preds = index_predictions(predictions);
  std::vector<std::pair<bool, bool>> pairs;
  bool any_gib = false, any_en = false;
  for (const auto& inst : instances) {
    if (inst.kind != TaskKind::taxonomy_discovery) continue;
    (inst.variant == Variant::en ? any_en : any_gib) = true;
    auto it = preds.find(inst.id);
    auto ans = valid_answer(it == preds.end() ? nullptr : it->second);
    if (!ans) {
      ++r.ignored;
      continue;
    }
    pairs.emplace_back(inst.gold_label, *ans);
  }
  r.setting = any_gib && !any_en ? Setting::gt_gib : Setting::gt_en;
  fill_classes(r, pairs);
  return r;
}

std::string invert_term(std::string_view term, const FormMap& form_map) {
  std::string folded = text::fold(text::trim(term));
  try {
    return form_map.invert(folded);
  } catch (const LookupError&) {
  }
  std::vector<char> seps;
  auto words = text::split_words(folded, &seps);
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i > 0) out += seps[i - 1];
    auto w = form_map.word_from(words[i]);
    out += w ? *w : std::string(words[i]);
  }
  return out;
}

MetricsReport score_alignment(const std::vector<Prediction>& pred_en, const std::vector<Prediction>& pred_gib,
                              const std::vector<TaskInstance>& inst_en, const std::vector<TaskInstance>& inst_gib,
                              const FormMap& form_map, TaskKind task) {
  std::map<std::string, const TaskInstance*> en_keys, gib_keys;
  for (const auto& i : inst_en) {
    if (i.kind == task) en_keys[i.alignment_key] = &i;
  }
  for (const auto& i : inst_gib) {
    if (i.kind == task) gib_keys[i.alignment_key] = &i;
  }
  std::vector<std::string> unmatched;
  for (const auto& [k, _] : en_keys) {
    if (!gib_keys.contains(k)) unmatched.push_back(k);
  }
  for (const auto& [k, _] : gib_keys) {
    if (!en_keys.contains(k)) unmatched.push_back(k);
  }
  if (!unmatched.empty()) throw AlignmentError(unmatched);

  auto en_preds = index_predictions(pred_en);
  auto gib_preds = index_predictions(pred_gib);
  auto find = [](const auto& idx, const std::string& id) -> const Prediction* {
    auto it = idx.find(id);
    return it == idx.end() ? nullptr : it->second;
  };

  MetricsReport r;
  r.setting = Setting::en_vs_gib;
  r.task = task;

  if (task == TaskKind::taxonomy_discovery) {
    std::vector<std::pair<bool, bool>> pairs;
    for (const auto& [key, en] : en_keys) {
      auto label = valid_answer(find(en_preds, en->id));
      auto guess = valid_answer(find(gib_preds, gib_keys.at(key)->id));
      if (!label || !guess) {
        ++r.ignored;
        continue;
      }
      pairs.emplace_back(*label, *guess);
    }
    fill_classes(r, pairs);
    return r;
  }

  using Triple = std::tuple<std::string, Relation, std::string>;
  auto triples_of = [](const Prediction* p, auto&& term) {
    std::set<Triple> out;
    if (!p || p->status != PredictionStatus::ok) return out;
    for (const auto& t : p->triples) out.emplace(term(t.subject), t.relation, term(t.object));
    return out;
  };
  double sum_p = 0.0, sum_r = 0.0;
  for (const auto& [key, en] : en_keys) {
    const Prediction* pe = find(en_preds, en->id);
    const Prediction* pg = find(gib_preds, gib_keys.at(key)->id);
    if (!pe || pe->status != PredictionStatus::ok || !pg || pg->status != PredictionStatus::ok) ++r.ignored;
    auto e = triples_of(pe, [](const std::string& s) { return text::fold(text::trim(s)); });
    auto g = triples_of(pg, [&](const std::string& s) { return invert_term(s, form_map); });
    if (e.empty() && g.empty()) continue;
    ConceptAlignment c;
    c.key = key;
    c.en_triples = e.size();
    c.gib_triples = g.size();
    for (const auto& t : g) c.shared += e.contains(t) ? 1 : 0;
    c.precision = ratio(c.shared, g.size(), r.undefined);
    c.recall = ratio(c.shared, e.size(), r.undefined);
    r.tp += c.shared;
    r.fp += g.size() - c.shared;
    r.fn += e.size() - c.shared;
    sum_p += c.precision;
    sum_r += c.recall;
    r.concepts.push_back(std::move(c));
  }
  r.evaluated = r.concepts.size();
  if (r.concepts.empty()) {
    r.undefined = true;
    return r;
  }
  r.precision = sum_p / static_cast<double>(r.concepts.size());
  r.recall = sum_r / static_cast<double>(r.concepts.size());
  r.f1 = harmonic(r.precision, r.recall);
  return r;
}

std::string render_table(const std::vector<MetricsReport>& reports) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof line, "%-10s %-20s %7s %7s %7s %6s %6s %6s %7s\n", "setting", "task", "P", "R", "F1",
                "tp", "fp", "fn", "ignored");
  out << line;
  for (const auto& r : reports) {
    std::snprintf(line, sizeof line, "%-10s %-20s %7.3f %7.3f %7.3f %6zu %6zu %6zu %7zu\n",
                  std::string(setting_name(r.setting)).c_str(), std::string(task_name(r.task)).c_str(), r.precision,
                  r.recall, r.f1, r.tp, r.fp, r.fn, r.ignored);
    out << line;
  }
  return out.str();
}

}  // namespace synthcorp
