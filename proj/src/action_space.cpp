#include "cama/action_space.hpp"

#include <functional>
#include <unordered_set>

#include "cama/grounding.hpp"

namespace cama {

namespace {

// Spelled-out slot positions of "OBJ" in a template (whole-word matches).
std::vector<std::size_t> slot_positions(const std::string& tmpl) {
  std::vector<std::size_t> slots;
  for (std::size_t at = tmpl.find("OBJ"); at != std::string::npos;
       at = tmpl.find("OBJ", at + 3)) {
    const bool left_ok = at == 0 || tmpl[at - 1] == ' ';
    const std::size_t end = at + 3;
    const bool right_ok = end == tmpl.size() || tmpl[end] == ' ';
    if (left_ok && right_ok) slots.push_back(at);
  }
  return slots;
}

std::string instantiate(const std::string& tmpl,
                        const std::vector<std::size_t>& slots,
                        const std::vector<std::string>& fillers) {
  std::string out;
  std::size_t from = 0;
  for (std::size_t k = 0; k < slots.size(); ++k) {
    out += tmpl.substr(from, slots[k] - from);
    out += fillers[k];
    from = slots[k] + 3;
  }
  out += tmpl.substr(from);
  return out;
}

}  // namespace

bool for_each_action(const ActionSpace& space,
                     const std::function<bool(const std::string&)>& fn) {
  std::unordered_set<std::string> seen;
  auto emit = [&](const std::string& action) {
    if (!seen.insert(action).second) return true;  // duplicate, keep going
    return fn(action);
  };

  for (const std::string& tmpl : space.templates) {
    const std::vector<std::size_t> slots = slot_positions(tmpl);
    if (slots.empty()) {
      if (!emit(tmpl)) return false;
    } else if (slots.size() == 1) {
      for (const std::string& obj : space.objects) {
        if (!emit(instantiate(tmpl, slots, {obj}))) return false;
      }
    } else if (slots.size() == 2) {
      for (std::size_t i = 0; i < space.objects.size(); ++i) {
        for (std::size_t j = 0; j < space.objects.size(); ++j) {
          if (i == j) continue;
          if (!emit(instantiate(tmpl, slots,
                                {space.objects[i], space.objects[j]}))) {
            return false;
          }
        }
      }
    }
    // Templates with 3+ slots do not occur in this world; ignore them.
  }
  return true;
}

std::vector<std::string> enumerate_actions(const ActionSpace& space) {
  std::vector<std::string> out;
  for_each_action(space, [&](const std::string& action) {
    out.push_back(action);
    return true;
  });
  return out;
}

}  // namespace cama
