#include "cama/chat.hpp"

#include "cama/errors.hpp"

namespace cama {

const char* to_string(PromptTag t) {
  switch (t) {
    case PromptTag::CONTROLLER_EXECUTOR: return "controller_executor";
    case PromptTag::MEM_ADAPT: return "mem_adapt";
    case PromptTag::MEM_GEN_ENV: return "mem_gen_env";
    case PromptTag::MEM_GEN_TASK: return "mem_gen_task";
  }
  return "controller_executor";
}

PromptTag prompt_tag_from_string(const std::string& s) {
  if (s == "controller_executor") return PromptTag::CONTROLLER_EXECUTOR;
  if (s == "mem_adapt") return PromptTag::MEM_ADAPT;
  if (s == "mem_gen_env") return PromptTag::MEM_GEN_ENV;
  if (s == "mem_gen_task") return PromptTag::MEM_GEN_TASK;
  throw InvalidConfig("unknown prompt tag: " + s);
}

std::string ChatRequest::joined_text() const {
  std::string out;
  for (const ChatMessage& m : messages) {
    if (!out.empty()) out += "\n";
    out += m.content;
  }
  return out;
}

int approx_tokens(const std::string& text) {
  return static_cast<int>((text.size() + 3) / 4);
}

}  // namespace cama
