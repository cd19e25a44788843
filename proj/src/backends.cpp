#include "synthcorp/errors.hpp"
#include "synthcorp/runner.hpp"
#include "synthcorp/text.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>

namespace synthcorp {

using nlohmann::json;

namespace {

std::string gold_answer(const TaskInstance& inst) {
  if (inst.kind == TaskKind::taxonomy_discovery) return inst.gold_label ? "True" : "False";
  json arr = json::array();
  for (const auto& g : inst.gold_triples) {
    arr.push_back({{"subject", g.subject}, {"relation", std::string(relation_phrase(g.relation))}, {"object", g.object}});
  }
  return arr.dump();
}

}  // namespace

Answer GoldOracle::answer(const TaskInstance& instance) { return {gold_answer(instance)}; }

Answer EnglishOnlyOracle::answer(const TaskInstance& instance) {
  if (instance.variant == Variant::en) return {gold_answer(instance)};
  return {instance.kind == TaskKind::taxonomy_discovery ? "False" : "[]"};
}

ReplayCache::ReplayCache(std::string path, std::unique_ptr<Backend> inner)
    : path_(std::move(path)), inner_(std::move(inner)) {
  std::ifstream in(path_);
  if (!in) return;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (text::trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      Record r{j.at("backend").get<std::string>(),
               {j.at("raw").get<std::string>(), j.at("input_tokens").get<std::size_t>(),
                j.at("output_tokens").get<std::size_t>(), j.at("cost").get<double>()}};
      if (recorded_backend_.empty()) recorded_backend_ = r.backend;
      records_.emplace(j.at("key").get<std::string>(), std::move(r));
    } catch (const json::exception& e) {
      throw ParseError(n, std::string("malformed cache record: ") + e.what());
    }
  }
}

std::string ReplayCache::id() const {
  if (inner_) return inner_->id();
  return recorded_backend_.empty() ? "replay" : recorded_backend_;
}

std::string ReplayCache::key_for(std::string_view prompt) { return text::hex64(text::fnv1a64(prompt)); }

bool ReplayCache::metered(const TaskInstance& instance) const {
  {
    std::lock_guard lock(mu_);
    if (records_.contains(key_for(instance.prompt))) return false;
  }
  return inner_ && inner_->metered(instance);
}

Answer ReplayCache::answer(const TaskInstance& instance) {
  const std::string key = key_for(instance.prompt);
  {
    std::lock_guard lock(mu_);
    if (auto it = records_.find(key); it != records_.end()) {
      ++hits_;
      return it->second.answer;
    }
    ++misses_;
  }
  if (!inner_) throw LookupError("replay cache miss for " + instance.id);
  Answer a = inner_->answer(instance);
  std::lock_guard lock(mu_);
  records_.emplace(key, Record{inner_->id(), a});
  return a;
}

void ReplayCache::save() const {
  std::lock_guard lock(mu_);
  if (auto parent = std::filesystem::path(path_).parent_path(); !parent.empty()) {
    std::filesystem::create_directories(parent);
  }
  std::ofstream out(path_, std::ios::trunc);
  if (!out) throw Error("cannot write cache file '" + path_ + "'");
  for (const auto& [key, r] : records_) {
    json j = {{"key", key},
              {"backend", r.backend},
              {"raw", r.answer.raw},
              {"input_tokens", r.answer.input_tokens},
              {"output_tokens", r.answer.output_tokens},
              {"cost", r.answer.cost}};
    out << j.dump() << '\n';
  }
}

std::size_t ReplayCache::hits() const {
  std::lock_guard lock(mu_);
  return hits_;
}

std::size_t ReplayCache::misses() const {
  std::lock_guard lock(mu_);
  return misses_;
}

}  // namespace synthcorp
