#include "synthcorp/runner.hpp"

#include "synthcorp/errors.hpp"
#include "synthcorp/text.hpp"

#include <algorithm>
#include <atomic>
#include <istream>
#include <ostream>
#include <thread>

namespace synthcorp {

using nlohmann::json;

std::string_view status_name(PredictionStatus s) {
  switch (s) {
    case PredictionStatus::ok: return "ok";
    case PredictionStatus::failed: return "failed";
    case PredictionStatus::skipped: return "skipped";
  }
  return "ok";
}

namespace {

PredictionStatus parse_status(std::string_view s) {
  if (s == "ok") return PredictionStatus::ok;
  if (s == "failed") return PredictionStatus::failed;
  if (s == "skipped") return PredictionStatus::skipped;
  throw ConfigError("unknown prediction status '" + std::string(s) + "'");
}

TdAnswer parse_answer_name(std::string_view s) {
  if (s == "True") return TdAnswer::True;
  if (s == "False") return TdAnswer::False;
  if (s == "Invalid") return TdAnswer::Invalid;
  throw ConfigError("unknown answer '" + std::string(s) + "'");
}

Relation relation_from_key(std::string_view s) {
  if (s == "subclass_of") return Relation::subclass_of;
  if (s == "part_of") return Relation::part_of;
  throw ConfigError("unknown relation '" + std::string(s) + "'");
}

void fill_parsed(Prediction& p) {
  if (p.kind == TaskKind::relation_extraction) {
    auto parsed = parse_re_response(p.raw);
    p.triples = std::move(parsed.triples);
    p.parse_warning = parsed.warning;
  } else {
    p.answer = parse_td_response(p.raw);
    p.parse_warning = p.answer == TdAnswer::Invalid;
  }
}

}  // namespace

json Prediction::to_json() const {
  json parsed;
  if (kind == TaskKind::relation_extraction) {
    parsed = json::array();
    for (const auto& t : triples) parsed.push_back({t.subject, relation_key(t.relation), t.object});
  } else {
    parsed = std::string(td_answer_name(answer));
  }
  return {{"instance_id", instance_id},
          {"kind", task_name(kind)},
          {"backend_id", backend_id},
          {"raw", raw},
          {"parsed", parsed},
          {"parse_warning", parse_warning},
          {"status", status_name(status)},
          {"error", error},
          {"input_tokens", input_tokens},
          {"output_tokens", output_tokens},
          {"cost", cost}};
}

Prediction Prediction::from_json(const json& j) {
  Prediction p;
  p.instance_id = j.at("instance_id").get<std::string>();
  p.kind = parse_task(j.at("kind").get<std::string>());
  p.backend_id = j.at("backend_id").get<std::string>();
  p.raw = j.at("raw").get<std::string>();
  const json& parsed = j.at("parsed");
  if (p.kind == TaskKind::relation_extraction) {
    for (const auto& t : parsed) {
      p.triples.insert({t.at(0).get<std::string>(), relation_from_key(t.at(1).get<std::string>()),
                        t.at(2).get<std::string>()});
    }
  } else {
    p.answer = parse_answer_name(parsed.get<std::string>());
  }
  p.parse_warning = j.value("parse_warning", false);
  p.status = parse_status(j.at("status").get<std::string>());
  p.error = j.value("error", std::string());
  p.input_tokens = j.value("input_tokens", std::size_t{0});
  p.output_tokens = j.value("output_tokens", std::size_t{0});
  p.cost = j.value("cost", 0.0);
  return p;
}

std::vector<Prediction> run(const std::vector<TaskInstance>& instances, Backend& backend, const RunOptions& options) {
  if (instances.empty()) throw ConfigError("no instances to run");
  if (options.max_in_flight < 1) throw ConfigError("max_in_flight must be at least 1");

  std::vector<Prediction> out(instances.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  double spent = 0.0;

  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const TaskInstance& inst = instances[i];
      Prediction p;
      p.instance_id = inst.id;
      p.kind = inst.kind;
      p.backend_id = backend.id();
      bool metered = backend.metered(inst);
      if (metered && options.budget) {
        std::lock_guard lock(mu);
        if (spent >= *options.budget) {
          p.status = PredictionStatus::skipped;
          p.error = "budget exhausted";
          if (p.kind == TaskKind::relation_extraction) p.parse_warning = true;
          out[i] = std::move(p);
          continue;
        }
      }

      auto start = std::chrono::steady_clock::now();
      auto delay = options.backoff;
      for (int attempt = 0;; ++attempt) {
        try {
          Answer a = backend.answer(inst);
          p.raw = std::move(a.raw);
          p.input_tokens = a.input_tokens;
          p.output_tokens = a.output_tokens;
          p.cost = a.cost;
          p.status = PredictionStatus::ok;
          p.error.clear();
          break;
        } catch (const TransportError& e) {
          p.status = PredictionStatus::failed;
          p.error = e.what();
          if (attempt >= options.max_retries) break;
          std::this_thread::sleep_for(delay);
          delay *= 2;
        } catch (const std::exception& e) {
          p.status = PredictionStatus::failed;
          p.error = e.what();
          break;
        }
      }
      p.latency_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (p.status == PredictionStatus::ok) {
        fill_parsed(p);
      } else if (p.kind == TaskKind::relation_extraction) {
        p.parse_warning = true;
      }

      std::lock_guard lock(mu);
      spent += p.cost;
      out[i] = std::move(p);
    }
  };

  std::size_t workers = std::min(options.max_in_flight, instances.size());
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  pool.clear();

  std::sort(out.begin(), out.end(),
            [](const Prediction& a, const Prediction& b) { return a.instance_id < b.instance_id; });
  return out;
}

void write_predictions(std::ostream& out, const std::vector<Prediction>& predictions) {
  for (const auto& p : predictions) out << p.to_json().dump() << '\n';
}

std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (text::trim(line).empty()) continue;
    try {
      out.push_back(Prediction::from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw ParseError(n, std::string("malformed prediction: ") + e.what());
    } catch (const ConfigError& e) {
      throw ParseError(n, e.what());
    }
  }
  return out;
}

}  // namespace synthcorp
