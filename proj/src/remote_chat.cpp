#include <httplib.h>

#include "synthcorp/errors.hpp"
#include "synthcorp/runner.hpp"

#include <json.hpp>

namespace synthcorp {

using nlohmann::json;

RemoteChat::RemoteChat(RemoteChatConfig config) : config_(std::move(config)) {
  const std::string& url = config_.endpoint;
  std::size_t scheme = url.find("://");
  if (scheme == std::string::npos) throw ConfigError("endpoint must be an http(s) URL: '" + url + "'");
  std::size_t path_start = url.find('/', scheme + 3);
  base_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  if (config_.model.empty()) throw ConfigError("remote backend needs a model name");
}

Answer RemoteChat::answer(const TaskInstance& instance) {
  httplib::Client client(base_);
  client.set_connection_timeout(config_.timeout_seconds);
  client.set_read_timeout(config_.timeout_seconds);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  json body = {{"model", config_.model},
               {"temperature", 0},
               {"messages", json::array({{{"role", "user"}, {"content", instance.prompt}}})}};
  auto res = client.Post(path_ + "/chat/completions", headers, body.dump(), "application/json");
  if (!res) throw TransportError("request failed: " + httplib::to_string(res.error()));
  if (res->status != 200) {
    throw TransportError("endpoint returned HTTP " + std::to_string(res->status));
  }

  Answer a;
  try {
    json reply = json::parse(res->body);
    const auto& content = reply.at("choices").at(0).at("message").at("content");
    a.raw = content.is_string() ? content.get<std::string>() : std::string();
    if (auto usage = reply.find("usage"); usage != reply.end() && usage->is_object()) {
      a.input_tokens = usage->value("prompt_tokens", std::size_t{0});
      a.output_tokens = usage->value("completion_tokens", std::size_t{0});
    } else {
      a.input_tokens = estimate_tokens(instance.prompt);
      a.output_tokens = estimate_tokens(a.raw);
    }
  } catch (const json::exception& e) {
    throw TransportError(std::string("unreadable completion payload: ") + e.what());
  }
  a.cost = static_cast<double>(a.input_tokens) / 1000.0 * config_.price_in_per_1k +
           static_cast<double>(a.output_tokens) / 1000.0 * config_.price_out_per_1k;
  return a;
}

}  // namespace synthcorp
