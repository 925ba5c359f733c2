#include "cama/script_backend.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {

namespace {

using nlohmann::json;

ScriptRule parse_rule(const json& j, int line_no) {
  auto fail = [&](const std::string& why) -> ScriptRule {
    throw InvalidConfig("script line " + std::to_string(line_no) + ": " + why);
  };
  if (!j.is_object()) return fail("not a JSON object");

  ScriptRule rule;
  if (j.contains("tag")) {
    if (!j["tag"].is_string()) return fail("\"tag\" must be a string");
    try {
      rule.tag = prompt_tag_from_string(j["tag"].get<std::string>());
    } catch (const InvalidConfig&) {
      return fail("unknown tag \"" + j["tag"].get<std::string>() + "\"");
    }
  }
  if (j.contains("match")) {
    const json& m = j["match"];
    if (!m.is_object() || !m.contains("kind") || !m["kind"].is_string()) {
      return fail("\"match\" must be an object with a \"kind\" string");
    }
    const std::string kind = m["kind"].get<std::string>();
    if (kind == "substring") {
      rule.kind = ScriptRule::Kind::SUBSTRING;
      if (!m.contains("value") || !m["value"].is_string()) {
        return fail("substring match needs a string \"value\"");
      }
      rule.substring = m["value"].get<std::string>();
    } else if (kind == "step") {
      rule.kind = ScriptRule::Kind::STEP;
      if (!m.contains("value") || !m["value"].is_number_integer()) {
        return fail("step match needs an integer \"value\"");
      }
      rule.step = m["value"].get<int>();
      if (rule.step < 0) return fail("step index must be >= 0");
    } else if (kind == "always") {
      rule.kind = ScriptRule::Kind::ALWAYS;
    } else {
      return fail("unknown match kind \"" + kind + "\"");
    }
  }
  if (!j.contains("response") || !j["response"].is_string()) {
    return fail("missing string \"response\"");
  }
  rule.response = j["response"].get<std::string>();
  if (j.contains("times")) {
    if (!j["times"].is_number_integer() || j["times"].get<int>() < 0) {
      return fail("\"times\" must be an integer >= 0");
    }
    rule.times = j["times"].get<int>();
  }
  return rule;
}

}  // namespace

Script parse_script(const std::string& text, const std::string& source) {
  Script script;
  script.source = source;
  int line_no = 0;
  for (const std::string& line : split_lines(text)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    json j;
    try {
      j = json::parse(body);
    } catch (const json::exception& e) {
      throw InvalidConfig("script line " + std::to_string(line_no) + ": " +
                          e.what());
    }
    script.rules.push_back(parse_rule(j, line_no));
  }
  return script;
}

Script load_script(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TraceIoError("cannot open script file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_script(buf.str(), path);
}

ScriptSession::ScriptSession(std::shared_ptr<const Script> script)
    : script_(std::move(script)) {
  if (!script_) throw InvalidConfig("ScriptSession: null script");
  remaining_.reserve(script_->rules.size());
  for (const ScriptRule& r : script_->rules) {
    remaining_.push_back(r.times == 0 ? -1 : r.times);
  }
  calls_by_tag_.assign(4, 0);
}

std::string ScriptSession::complete(const ChatRequest& req) {
  std::lock_guard<std::mutex> lock(mu_);
  const int tag_index = calls_by_tag_.at(static_cast<std::size_t>(req.tag))++;
  const std::string joined = req.joined_text();

  for (std::size_t i = 0; i < script_->rules.size(); ++i) {
    const ScriptRule& rule = script_->rules[i];
    if (remaining_[i] == 0) continue;
    if (rule.tag.has_value() && *rule.tag != req.tag) continue;
    bool hit = false;
    switch (rule.kind) {
      case ScriptRule::Kind::SUBSTRING:
        hit = joined.find(rule.substring) != std::string::npos;
        break;
      case ScriptRule::Kind::STEP:
        hit = rule.step == tag_index;
        break;
      case ScriptRule::Kind::ALWAYS:
        hit = true;
        break;
    }
    if (!hit) continue;
    if (remaining_[i] > 0) --remaining_[i];
    return rule.response;
  }
  throw BackendExhausted("script \"" + script_->source +
                         "\" has no rule for tag " + to_string(req.tag) +
                         " (call #" + std::to_string(tag_index) + " of that tag)");
}

std::string ScriptSession::id() const {
  return "script:" + script_->source;
}

}  // namespace cama
