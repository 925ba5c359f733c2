#include "cama/world.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "cama/errors.hpp"
#include "cama/text_util.hpp"

namespace cama {
namespace {

constexpr const char* kUnknownAction = "No known action matches that input.";
constexpr const char* kTaskOver = "The task is over.";
constexpr const char* kAmbiguousHeader =
    "Ambiguous request. Respond with the number of the action you mean:";

struct TemplateShape {
  const char* name;
  int arity;
  const char* prefix;
  const char* middle;  // two-slot separator, "" otherwise
};

const TemplateShape kShapes[] = {
    {"go to OBJ", 1, "go to ", ""},
    {"open OBJ", 1, "open ", ""},
    {"close OBJ", 1, "close ", ""},
    {"pick up OBJ", 1, "pick up ", ""},
    {"move OBJ to OBJ", 2, "move ", " to "},
    {"activate OBJ", 1, "activate ", ""},
    {"deactivate OBJ", 1, "deactivate ", ""},
    {"use OBJ on OBJ", 2, "use ", " on "},
    {"look around", 0, "", ""},
    {"wait", 0, "", ""},
    {"focus on OBJ", 1, "focus on ", ""},
    {"read OBJ", 1, "read ", ""},
};
constexpr std::size_t kShapeCount = sizeof(kShapes) / sizeof(kShapes[0]);

std::vector<std::string> tokens_of(std::string_view s) {
  std::string norm = collapse_ws(to_lower(s));
  std::vector<std::string> out;
  std::istringstream in(norm);
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

bool token_subset(const std::vector<std::string>& small,
                  const std::vector<std::string>& big) {
  for (const std::string& t : small)
    if (std::find(big.begin(), big.end(), t) == big.end()) return false;
  return true;
}

std::string fill_template(const TemplateShape& shape, const std::string& a,
                          const std::string& b) {
  if (shape.arity == 0) return shape.name;
  if (shape.arity == 1) return shape.prefix + a;
  return shape.prefix + a + shape.middle + b;
}

const char* growth_word(int stage) {
  switch (stage) {
    case 0: return "seed";
    case 1: return "seedling";
    case 2: return "young plant";
    default: return "adult plant";
  }
}

constexpr const char* kDoorPrefix = "door to ";

bool is_door_name(const std::string& name) {
  return name.rfind(kDoorPrefix, 0) == 0;
}

}  // namespace

std::string WorldState::key() const {
  std::ostringstream out;
  const char sep = '\x1f';
  out << agent_room << sep;
  for (bool b : door_open) out << (b ? '1' : '0');
  out << sep;
  for (const Obj& o : objects)
    out << o.location << sep << o.open << o.on << sep << o.temperature << sep
        << o.growth_stage << sep;
  out << focus_used << sep;
  auto bits = [&](const std::vector<bool>& v) {
    for (bool b : v) out << (b ? '1' : '0');
    out << sep;
  };
  bits(focused);
  bits(measured);
  bits(read_done);
  bits(tested);
  bits(visited_rooms);
  bits(subgoal_done);
  out << score << sep << done << static_cast<int>(terminal) << sep
      << ambiguity_pending << sep;
  for (const std::string& o : ambiguity_options) out << o << sep;
  return out.str();
}

const std::vector<std::string>& World::action_templates() {
  static const std::vector<std::string> kTemplates = [] {
    std::vector<std::string> v;
    for (const TemplateShape& s : kShapes) v.push_back(s.name);
    return v;
  }();
  return kTemplates;
}

World::World(Bundle bundle) : bundle_(std::move(bundle)) {
  validate_bundle(bundle_);
  const WorldConfig& w = bundle_.world;
  room_index_ = w.rooms;

  state_.agent_room = w.start_room;
  state_.door_open.reserve(w.doors.size());
  for (const DoorSpec& d : w.doors) state_.door_open.push_back(d.open);
  state_.objects.reserve(w.objects.size());
  for (const ObjectSpec& o : w.objects) {
    WorldState::Obj s;
    s.location = o.location;
    s.open = o.open;
    s.on = o.on;
    s.temperature = o.temperature;
    s.growth_stage = o.growth_stage;
    state_.objects.push_back(std::move(s));
  }
  state_.focused.assign(w.objects.size(), false);
  state_.measured.assign(w.objects.size(), false);
  state_.read_done.assign(w.objects.size(), false);
  state_.tested.assign(w.objects.size(), false);
  state_.visited_rooms.assign(w.rooms.size(), false);
  for (std::size_t i = 0; i < w.rooms.size(); ++i)
    if (w.rooms[i] == w.start_room) state_.visited_rooms[i] = true;
  state_.subgoal_done.assign(bundle_.task.subgoals.size(), false);

  initial_observation_ = look_text();
}

int World::object_index(const std::string& name) const {
  const auto& objs = bundle_.world.objects;
  for (std::size_t i = 0; i < objs.size(); ++i)
    if (objs[i].name == name) return static_cast<int>(i);
  return -1;
}

bool World::is_room(const std::string& name) const {
  return std::find(room_index_.begin(), room_index_.end(), name) !=
         room_index_.end();
}

std::string World::door_name(const std::string& room) const {
  return kDoorPrefix + room;
}

const DoorSpec* World::door_between(const std::string& a, const std::string& b,
                                    std::size_t* index) const {
  const auto& doors = bundle_.world.doors;
  for (std::size_t i = 0; i < doors.size(); ++i) {
    if ((doors[i].a == a && doors[i].b == b) ||
        (doors[i].a == b && doors[i].b == a)) {
      if (index) *index = i;
      return &doors[i];
    }
  }
  return nullptr;
}

std::string World::holder_of(int idx) const {
  return state_.objects[static_cast<std::size_t>(idx)].location;
}

std::string World::room_of(int idx) const {
  std::string loc = holder_of(idx);
  for (std::size_t guard = 0; guard <= bundle_.world.objects.size(); ++guard) {
    if (loc == "inventory") return "";
    if (is_room(loc)) return loc;
    int h = object_index(loc);
    if (h < 0) return "";
    loc = holder_of(h);
  }
  return "";
}

bool World::reachable(int idx) const {
  std::string loc = holder_of(idx);
  for (std::size_t guard = 0; guard <= bundle_.world.objects.size(); ++guard) {
    if (loc == "inventory") return true;
    if (is_room(loc)) return loc == state_.agent_room;
    int h = object_index(loc);
    if (h < 0) return false;
    const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(h)];
    const WorldState::Obj& st = state_.objects[static_cast<std::size_t>(h)];
    if (spec.container && spec.openable && !st.open) return false;
    loc = holder_of(h);
  }
  return false;
}

std::vector<std::string> World::known_objects() const {
  std::vector<std::string> out;
  const WorldConfig& w = bundle_.world;
  // A room is known once visited or once seen through a door of a
  // visited room.
  auto visited = [&](const std::string& room) {
    for (std::size_t i = 0; i < w.rooms.size(); ++i)
      if (w.rooms[i] == room) return static_cast<bool>(state_.visited_rooms[i]);
    return false;
  };
  for (std::size_t i = 0; i < w.rooms.size(); ++i) {
    bool known = state_.visited_rooms[i];
    for (const DoorSpec& d : w.doors) {
      if (known) break;
      known = (d.a == w.rooms[i] && visited(d.b)) ||
              (d.b == w.rooms[i] && visited(d.a));
    }
    if (known) out.push_back(w.rooms[i]);
  }
  for (const DoorSpec& d : w.doors) {
    if (d.a == state_.agent_room) out.push_back(door_name(d.b));
    else if (d.b == state_.agent_room) out.push_back(door_name(d.a));
  }
  for (std::size_t i = 0; i < w.objects.size(); ++i)
    if (reachable(static_cast<int>(i))) out.push_back(w.objects[i].name);
  return out;
}

ActionSpace World::admissible() const {
  return ActionSpace{action_templates(), known_objects()};
}

const ObjectSpec& World::object(const std::string& name) const {
  int idx = object_index(name);
  if (idx < 0) throw InvalidConfig("unknown object '" + name + "'");
  return bundle_.world.objects[static_cast<std::size_t>(idx)];
}

int World::object_temperature(const std::string& name) const {
  int idx = object_index(name);
  if (idx < 0) throw InvalidConfig("unknown object '" + name + "'");
  return state_.objects[static_cast<std::size_t>(idx)].temperature;
}

int World::object_growth(const std::string& name) const {
  int idx = object_index(name);
  if (idx < 0) throw InvalidConfig("unknown object '" + name + "'");
  return state_.objects[static_cast<std::size_t>(idx)].growth_stage;
}

bool World::carrying(const std::string& name) const {
  int idx = object_index(name);
  return idx >= 0 && holder_of(idx) == "inventory";
}

std::string World::room_of_object(const std::string& name) const {
  int idx = object_index(name);
  return idx < 0 ? "" : room_of(idx);
}

bool World::object_visible(const std::string& name) const {
  int idx = object_index(name);
  return idx >= 0 && reachable(idx);
}

void World::restore_state(const WorldState& s) {
  state_ = s;
  skip_goal_eval_ = false;
}

std::string World::contents_phrase(const std::string& holder) const {
  std::vector<std::string> parts;
  const auto& objs = bundle_.world.objects;
  for (std::size_t i = 0; i < objs.size(); ++i)
    if (state_.objects[i].location == holder) parts.push_back("a " + objs[i].name);
  return parts.empty() ? "nothing" : join(parts, ", ");
}

std::string World::describe_object(int idx) const {
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  const WorldState::Obj& st = state_.objects[static_cast<std::size_t>(idx)];
  std::string out = "a " + spec.name;
  if (spec.container) {
    if (spec.openable && !st.open) out += " (closed)";
    else out += " (containing " + contents_phrase(spec.name) + ")";
  } else if (spec.device) {
    out += st.on ? " (activated)" : " (deactivated)";
  } else if (spec.grows) {
    out += std::string(" (") + growth_word(st.growth_stage) + ")";
  }
  return out;
}

std::string World::look_text() const {
  const WorldConfig& w = bundle_.world;
  std::string out = "This room is called the " + state_.agent_room +
                    ". In it, you see: ";
  std::vector<std::string> items;
  for (std::size_t i = 0; i < w.objects.size(); ++i)
    if (state_.objects[i].location == state_.agent_room)
      items.push_back(describe_object(static_cast<int>(i)));
  out += items.empty() ? "nothing" : join(items, ", ");
  out += ".";

  std::vector<std::string> doors;
  for (std::size_t i = 0; i < w.doors.size(); ++i) {
    const DoorSpec& d = w.doors[i];
    std::string other;
    if (d.a == state_.agent_room) other = d.b;
    else if (d.b == state_.agent_room) other = d.a;
    else continue;
    doors.push_back("a door to the " + other +
                    (state_.door_open[i] ? " (open)" : " (closed)"));
  }
  if (!doors.empty()) out += " You also see: " + join(doors, ", ") + ".";

  std::vector<std::string> carried;
  for (std::size_t i = 0; i < w.objects.size(); ++i)
    if (state_.objects[i].location == "inventory")
      carried.push_back("a " + w.objects[i].name);
  if (!carried.empty()) out += " You are carrying: " + join(carried, ", ") + ".";
  return out;
}

std::vector<World::Resolved> World::resolve(const std::string& input) const {
  std::string norm = collapse_ws(to_lower(input));
  std::vector<std::string> known = known_objects();

  auto resolve_slot = [&](const std::string& slot) {
    std::vector<std::string> hits;
    if (slot.empty()) return hits;
    for (const std::string& name : known)
      if (equal_normalized(slot, name)) {
        hits.push_back(name);
        return hits;
      }
    std::vector<std::string> want = tokens_of(slot);
    for (const std::string& name : known)
      if (token_subset(want, tokens_of(name))) hits.push_back(name);
    return hits;
  };

  std::vector<Resolved> out;
  std::unordered_set<std::string> seen;
  auto add = [&](std::size_t t, const std::string& a, const std::string& b) {
    Resolved r{t, a, b, fill_template(kShapes[t], a, b)};
    if (seen.insert(r.action).second) out.push_back(std::move(r));
  };

  for (std::size_t t = 0; t < kShapeCount; ++t) {
    const TemplateShape& shape = kShapes[t];
    if (shape.arity == 0) {
      if (norm == shape.name) add(t, "", "");
      continue;
    }
    const std::string prefix = shape.prefix;
    if (norm.size() <= prefix.size() || norm.compare(0, prefix.size(), prefix) != 0)
      continue;
    const std::string rest = norm.substr(prefix.size());
    if (shape.arity == 1) {
      for (const std::string& name : resolve_slot(rest)) add(t, name, "");
      continue;
    }
    const std::string middle = shape.middle;
    for (std::size_t pos = rest.find(middle); pos != std::string::npos;
         pos = rest.find(middle, pos + 1)) {
      const std::string sa = rest.substr(0, pos);
      const std::string sb = rest.substr(pos + middle.size());
      if (sa.empty() || sb.empty()) continue;
      for (const std::string& a : resolve_slot(sa))
        for (const std::string& b : resolve_slot(sb))
          if (a != b) add(t, a, b);
    }
  }
  return out;
}

StepResult World::step(const std::string& action) {
  if (state_.done)
    return StepResult{kTaskOver, state_.score, true, state_.terminal};
  ++steps_taken_;

  if (state_.ambiguity_pending) {
    std::vector<std::string> options = state_.ambiguity_options;
    state_.ambiguity_pending = false;
    state_.ambiguity_options.clear();
    std::string choice = trim(action);
    if (is_bare_integer(choice)) {
      std::size_t n = static_cast<std::size_t>(std::stol(choice));
      if (n >= options.size())
        return finish("That is not one of the options.", false);
      std::vector<Resolved> matches = resolve(options[n]);
      for (const Resolved& r : matches)
        if (equal_normalized(options[n], r.action))
          return finish(execute(r), true);
      return finish(kUnknownAction, false);
    }
    // Any non-integer input abandons the pending question and is handled
    // as a fresh action below.
  }

  std::vector<Resolved> matches = resolve(action);
  for (const Resolved& r : matches)
    if (equal_normalized(action, r.action)) return finish(execute(r), true);
  if (matches.empty()) return finish(kUnknownAction, false);
  if (matches.size() == 1) return finish(execute(matches[0]), true);

  std::string obs = kAmbiguousHeader;
  state_.ambiguity_pending = true;
  for (std::size_t i = 0; i < matches.size(); ++i) {
    obs += "\n" + std::to_string(i) + ": " + matches[i].action;
    state_.ambiguity_options.push_back(matches[i].action);
  }
  return finish(std::move(obs), false);
}

StepResult World::step_unknown() {
  if (state_.done)
    return StepResult{kTaskOver, state_.score, true, state_.terminal};
  ++steps_taken_;
  return finish(kUnknownAction, false);
}

std::string World::execute(const Resolved& r) {
  switch (r.template_index) {
    case 0: return do_go(r.a);
    case 1: return do_open(r.a);
    case 2: return do_close(r.a);
    case 3: return do_pick_up(r.a);
    case 4: return do_move(r.a, r.b);
    case 5: return do_activate(r.a);
    case 6: return do_deactivate(r.a);
    case 7: return do_use(r.a, r.b);
    case 8: return look_text();
    case 9: return do_wait();
    case 10: return do_focus(r.a);
    default: return do_read(r.a);
  }
}

std::string World::do_go(const std::string& target) {
  if (!is_room(target)) return "You can't go to the " + target + ".";
  if (target == state_.agent_room)
    return "You are already in the " + target + ".";
  std::size_t di = 0;
  const DoorSpec* d = door_between(state_.agent_room, target, &di);
  if (!d) return "You can't get to the " + target + " from here.";
  if (!state_.door_open[di]) return "The door to the " + target + " is closed.";
  state_.agent_room = target;
  for (std::size_t i = 0; i < room_index_.size(); ++i)
    if (room_index_[i] == target) state_.visited_rooms[i] = true;
  return look_text();
}

std::string World::do_open(const std::string& target) {
  if (is_door_name(target)) {
    std::string other = target.substr(std::string(kDoorPrefix).size());
    std::size_t di = 0;
    if (!door_between(state_.agent_room, other, &di))
      return "You don't see that here.";
    if (state_.door_open[di])
      return "The door to the " + other + " is already open.";
    state_.door_open[di] = true;
    return "You open the door to the " + other + ".";
  }
  int idx = object_index(target);
  if (idx < 0) return "The " + target + " can't be opened.";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  WorldState::Obj& st = state_.objects[static_cast<std::size_t>(idx)];
  if (!spec.openable) return "The " + target + " can't be opened.";
  if (st.open) return "The " + target + " is already open.";
  st.open = true;
  if (spec.container)
    return "You open the " + target + ". Inside you see " +
           contents_phrase(spec.name) + ".";
  return "You open the " + target + ".";
}

std::string World::do_close(const std::string& target) {
  if (is_door_name(target)) {
    std::string other = target.substr(std::string(kDoorPrefix).size());
    std::size_t di = 0;
    if (!door_between(state_.agent_room, other, &di))
      return "You don't see that here.";
    if (!state_.door_open[di])
      return "The door to the " + other + " is already closed.";
    state_.door_open[di] = false;
    return "You close the door to the " + other + ".";
  }
  int idx = object_index(target);
  if (idx < 0) return "The " + target + " can't be closed.";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  WorldState::Obj& st = state_.objects[static_cast<std::size_t>(idx)];
  if (!spec.openable) return "The " + target + " can't be closed.";
  if (!st.open) return "The " + target + " is already closed.";
  st.open = false;
  return "You close the " + target + ".";
}

std::string World::do_pick_up(const std::string& target) {
  int idx = object_index(target);
  if (idx < 0) return "You can't pick that up.";
  if (holder_of(idx) == "inventory")
    return "You are already carrying the " + target + ".";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  if (!spec.portable) return "The " + target + " is fixed in place.";
  state_.objects[static_cast<std::size_t>(idx)].location = "inventory";
  return "You pick up the " + target + ".";
}

std::string World::do_move(const std::string& what, const std::string& to) {
  int idx = object_index(what);
  if (idx < 0) return "You can't move that.";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  if (!spec.portable) return "The " + what + " is fixed in place.";

  if (is_room(to)) {
    if (to != state_.agent_room)
      return "You can't reach the " + to + " from here.";
    state_.objects[static_cast<std::size_t>(idx)].location = to;
    return "You move the " + what + " to the " + to + ".";
  }
  int tidx = object_index(to);
  if (tidx < 0) return "You can't put things there.";
  if (!reachable(tidx)) return "You don't see that here.";
  const ObjectSpec& tspec = bundle_.world.objects[static_cast<std::size_t>(tidx)];
  if (!tspec.container && !tspec.surface && !tspec.heat_source && !tspec.soil)
    return "You can't put things there.";
  if (tspec.container && tspec.openable &&
      !state_.objects[static_cast<std::size_t>(tidx)].open)
    return "The " + to + " is closed.";
  // Refuse moves that would create a containment cycle.
  std::string loc = to;
  for (std::size_t guard = 0; guard <= bundle_.world.objects.size(); ++guard) {
    if (loc == what) return "You can't put things there.";
    int h = object_index(loc);
    if (h < 0) break;
    loc = holder_of(h);
  }
  state_.objects[static_cast<std::size_t>(idx)].location = to;
  return "You move the " + what + " to the " + to + ".";
}

std::string World::do_activate(const std::string& target) {
  int idx = object_index(target);
  if (idx < 0) return "You can't activate that.";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  if (!spec.device) return "You can't activate that.";
  if (spec.broken) return "The " + target + " appears to be broken.";
  WorldState::Obj& st = state_.objects[static_cast<std::size_t>(idx)];
  if (st.on) return "The " + target + " is already activated.";
  st.on = true;
  return "The " + target + " is now activated.";
}

std::string World::do_deactivate(const std::string& target) {
  int idx = object_index(target);
  if (idx < 0) return "You can't deactivate that.";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  if (!spec.device) return "You can't deactivate that.";
  WorldState::Obj& st = state_.objects[static_cast<std::size_t>(idx)];
  if (!st.on) return "The " + target + " is already deactivated.";
  st.on = false;
  return "The " + target + " is now deactivated.";
}

std::string World::do_use(const std::string& what, const std::string& on) {
  int idx = object_index(what);
  if (idx < 0) return "Nothing happens.";
  if (!reachable(idx)) return "You don't see that here.";
  int tidx = object_index(on);
  if (tidx < 0) return "Nothing happens.";
  if (!reachable(tidx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  const ObjectSpec& tspec = bundle_.world.objects[static_cast<std::size_t>(tidx)];
  WorldState::Obj& tst = state_.objects[static_cast<std::size_t>(tidx)];

  if (spec.tool == "thermometer") {
    state_.measured[static_cast<std::size_t>(tidx)] = true;
    return "The thermometer measures a temperature of " +
           std::to_string(tst.temperature) + " degrees celsius.";
  }
  if (spec.tool == "lighter") {
    if (spec.broken) return "The " + what + " appears to be broken.";
    if (!tspec.substance) return "Nothing happens.";
    int before = tst.temperature;
    tst.temperature = std::min(tst.temperature + 25, tspec.boil_point);
    std::string obs = "You heat the " + on + " with the " + what + ".";
    if (before < tspec.boil_point && tst.temperature >= tspec.boil_point)
      obs += " The " + on + " is boiling.";
    return obs;
  }
  if (tspec.surface) {
    state_.tested[static_cast<std::size_t>(tidx)] = true;
    return "You slide the " + what + " down the " + on + ". It takes " +
           std::to_string(tspec.slide_ticks) + " ticks to stop.";
  }
  return "Nothing happens.";
}

std::string World::do_wait() {
  const WorldConfig& w = bundle_.world;
  std::string obs = "You decide to wait for one iteration.";
  for (std::size_t i = 0; i < w.objects.size(); ++i) {
    const ObjectSpec& spec = w.objects[i];
    WorldState::Obj& st = state_.objects[i];
    if (spec.substance) {
      bool heated = false;
      std::string loc = st.location;
      for (std::size_t guard = 0; guard <= w.objects.size(); ++guard) {
        int h = object_index(loc);
        if (h < 0) break;
        const ObjectSpec& hs = w.objects[static_cast<std::size_t>(h)];
        if (hs.heat_source && !hs.broken &&
            state_.objects[static_cast<std::size_t>(h)].on) {
          heated = true;
          break;
        }
        loc = holder_of(h);
      }
      if (heated) {
        int before = st.temperature;
        st.temperature = std::min(st.temperature + 25, spec.boil_point);
        if (before < spec.boil_point && st.temperature >= spec.boil_point &&
            reachable(static_cast<int>(i)))
          obs += " The " + spec.name + " is boiling.";
      }
    }
    if (spec.grows) {
      int h = object_index(st.location);
      if (h >= 0 && w.objects[static_cast<std::size_t>(h)].soil)
        st.growth_stage = std::min(st.growth_stage + 1, 3);
    }
  }
  return obs;
}

std::string World::do_focus(const std::string& target) {
  const TaskSpec& t = bundle_.task;
  bool allowed =
      std::find(t.focus_targets.begin(), t.focus_targets.end(), target) !=
          t.focus_targets.end() &&
      state_.focus_used < t.focus_budget;
  if (!allowed) {
    state_.done = true;
    state_.terminal = TerminalReason::FAILED_FOCUS;
    skip_goal_eval_ = true;
    return "You focus on the " + target +
           ". That is not something this task needs. The session is over.";
  }
  ++state_.focus_used;
  int idx = object_index(target);
  if (idx >= 0) state_.focused[static_cast<std::size_t>(idx)] = true;
  return "You focus on the " + target + ".";
}

std::string World::do_read(const std::string& target) {
  int idx = object_index(target);
  if (idx < 0) return "You don't see that here.";
  if (!reachable(idx)) return "You don't see that here.";
  const ObjectSpec& spec = bundle_.world.objects[static_cast<std::size_t>(idx)];
  if (spec.readable.empty())
    return "There is nothing written on the " + target + ".";
  state_.read_done[static_cast<std::size_t>(idx)] = true;
  return "You read the " + target + ". It says: " + spec.readable;
}

void World::evaluate_subgoals() {
  const std::vector<Subgoal>& goals = bundle_.task.subgoals;
  bool all = true;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    if (!state_.subgoal_done[i]) {
      const Subgoal& g = goals[i];
      bool met = false;
      int idx = object_index(g.object);
      std::size_t u = static_cast<std::size_t>(idx);
      if (g.kind == "agent_in_room") met = state_.agent_room == g.object;
      else if (idx >= 0) {
        if (g.kind == "carrying") met = holder_of(idx) == "inventory";
        else if (g.kind == "object_at")
          met = holder_of(idx) == g.target || room_of(idx) == g.target;
        else if (g.kind == "container_open") met = state_.objects[u].open;
        else if (g.kind == "device_on") met = state_.objects[u].on;
        else if (g.kind == "temperature_at_least")
          met = state_.objects[u].temperature >= g.threshold;
        else if (g.kind == "growth_adult") met = state_.objects[u].growth_stage >= 3;
        else if (g.kind == "measured") met = state_.measured[u];
        else if (g.kind == "read_obj") met = state_.read_done[u];
        else if (g.kind == "tested") met = state_.tested[u];
        else if (g.kind == "focused") met = state_.focused[u];
      }
      if (met) {
        state_.subgoal_done[i] = true;
        state_.score += goals[i].weight;
        if (goals[i].terminal) {
          state_.done = true;
          state_.terminal = TerminalReason::COMPLETE;
        }
      }
    }
    all = all && state_.subgoal_done[i];
  }
  if (all && !goals.empty()) {
    state_.done = true;
    state_.terminal = TerminalReason::COMPLETE;
  }
}

StepResult World::finish(std::string observation, bool evaluate) {
  if (evaluate && !skip_goal_eval_) evaluate_subgoals();
  skip_goal_eval_ = false;
  if (!state_.done && steps_taken_ >= bundle_.task.max_steps) {
    state_.done = true;
    state_.terminal = TerminalReason::TIMEOUT;
  }
  return StepResult{std::move(observation), state_.score, state_.done,
                    state_.terminal};
}

}  // namespace cama
