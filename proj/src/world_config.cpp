#include "cama/world_config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "cama/errors.hpp"

namespace cama {

using nlohmann::json;

void to_json(json& j, const DoorSpec& d) {
  j = json{{"a", d.a}, {"b", d.b}, {"open", d.open}};
}

void from_json(const json& j, DoorSpec& d) {
  d.a = j.at("a").get<std::string>();
  d.b = j.at("b").get<std::string>();
  d.open = j.value("open", true);
}

void to_json(json& j, const ObjectSpec& o) {
  j = json{{"name", o.name}, {"location", o.location}};
  if (o.portable) j["portable"] = true;
  if (o.container) j["container"] = true;
  if (o.openable) j["openable"] = true;
  if (!o.open) j["open"] = false;
  if (o.device) j["device"] = true;
  if (o.on) j["on"] = true;
  if (o.broken) j["broken"] = true;
  if (o.heat_source) j["heat_source"] = true;
  if (!o.tool.empty()) j["tool"] = o.tool;
  if (o.surface) j["surface"] = true;
  if (o.slide_ticks != 0) j["slide_ticks"] = o.slide_ticks;
  if (!o.readable.empty()) j["readable"] = o.readable;
  if (o.substance) j["substance"] = true;
  if (o.temperature != 20) j["temperature"] = o.temperature;
  if (o.boil_point != 100) j["boil_point"] = o.boil_point;
  if (o.grows) j["grows"] = true;
  if (o.growth_stage != 0) j["growth_stage"] = o.growth_stage;
  if (o.soil) j["soil"] = true;
}

void from_json(const json& j, ObjectSpec& o) {
  o.name = j.at("name").get<std::string>();
  o.location = j.at("location").get<std::string>();
  o.portable = j.value("portable", false);
  o.container = j.value("container", false);
  o.openable = j.value("openable", false);
  o.open = j.value("open", true);
  o.device = j.value("device", false);
  o.on = j.value("on", false);
  o.broken = j.value("broken", false);
  o.heat_source = j.value("heat_source", false);
  o.tool = j.value("tool", std::string());
  o.surface = j.value("surface", false);
  o.slide_ticks = j.value("slide_ticks", 0);
  o.readable = j.value("readable", std::string());
  o.substance = j.value("substance", false);
  o.temperature = j.value("temperature", 20);
  o.boil_point = j.value("boil_point", 100);
  o.grows = j.value("grows", false);
  o.growth_stage = j.value("growth_stage", 0);
  o.soil = j.value("soil", false);
}

void to_json(json& j, const Subgoal& s) {
  j = json{{"kind", s.kind}, {"weight", s.weight}};
  if (!s.object.empty()) j["object"] = s.object;
  if (!s.target.empty()) j["target"] = s.target;
  if (s.threshold != 0) j["threshold"] = s.threshold;
  if (s.terminal) j["terminal"] = true;
}

void from_json(const json& j, Subgoal& s) {
  s.kind = j.at("kind").get<std::string>();
  s.object = j.value("object", std::string());
  s.target = j.value("target", std::string());
  s.threshold = j.value("threshold", 0);
  s.weight = j.at("weight").get<int>();
  s.terminal = j.value("terminal", false);
}

void to_json(json& j, const TaskSpec& t) {
  j = json{{"task_id", t.task_id},
           {"family", t.family},
           {"length", t.length},
           {"description", t.description},
           {"max_steps", t.max_steps},
           {"focus_targets", t.focus_targets},
           {"focus_budget", t.focus_budget},
           {"subgoals", t.subgoals}};
}

void from_json(const json& j, TaskSpec& t) {
  t.task_id = j.at("task_id").get<std::string>();
  t.family = j.value("family", std::string());
  t.length = j.value("length", std::string("S"));
  t.description = j.at("description").get<std::string>();
  t.max_steps = j.value("max_steps", 30);
  t.focus_targets = j.value("focus_targets", std::vector<std::string>());
  t.focus_budget = j.value("focus_budget", 0);
  t.subgoals = j.at("subgoals").get<std::vector<Subgoal>>();
}

void to_json(json& j, const VariantRecipe& v) {
  j = json{{"start_rooms", v.start_rooms},
           {"shuffle_objects", v.shuffle_objects},
           {"alternative_tools", v.alternative_tools}};
}

void from_json(const json& j, VariantRecipe& v) {
  v.start_rooms = j.value("start_rooms", std::vector<std::string>());
  v.shuffle_objects = j.value("shuffle_objects", std::vector<std::string>());
  v.alternative_tools =
      j.value("alternative_tools", std::vector<std::vector<std::string>>());
}

void to_json(json& j, const WorldConfig& w) {
  j = json{{"rooms", w.rooms},
           {"doors", w.doors},
           {"start_room", w.start_room},
           {"objects", w.objects},
           {"variant_id", w.variant_id},
           {"rng_seed", w.rng_seed},
           {"recipe", w.recipe}};
}

void from_json(const json& j, WorldConfig& w) {
  w.rooms = j.at("rooms").get<std::vector<std::string>>();
  w.doors = j.value("doors", std::vector<DoorSpec>());
  w.start_room = j.at("start_room").get<std::string>();
  w.objects = j.value("objects", std::vector<ObjectSpec>());
  w.variant_id = j.value("variant_id", 0);
  w.rng_seed = j.value("rng_seed", std::uint64_t{0});
  w.recipe = j.value("recipe", VariantRecipe{});
}

void to_json(json& j, const Bundle& b) {
  j = json{{"world", b.world}, {"task", b.task}};
}

void from_json(const json& j, Bundle& b) {
  b.world = j.at("world").get<WorldConfig>();
  b.task = j.at("task").get<TaskSpec>();
}

namespace {

void fail(const std::string& field, const std::string& why) {
  throw InvalidConfig(field + ": " + why);
}

}  // namespace

void validate_bundle(const Bundle& b) {
  const WorldConfig& w = b.world;
  if (w.rooms.empty()) fail("world.rooms", "must not be empty");
  std::set<std::string> rooms(w.rooms.begin(), w.rooms.end());
  if (rooms.size() != w.rooms.size()) fail("world.rooms", "duplicate room name");
  if (!rooms.count(w.start_room)) {
    fail("world.start_room", "unknown room '" + w.start_room + "'");
  }

  std::set<std::string> names;
  for (std::size_t i = 0; i < w.objects.size(); ++i) {
    const ObjectSpec& o = w.objects[i];
    std::string field = "world.objects[" + std::to_string(i) + "]";
    if (o.name.empty()) fail(field + ".name", "must not be empty");
    if (!names.insert(o.name).second) {
      fail(field + ".name", "duplicate object name '" + o.name + "'");
    }
    if (rooms.count(o.name)) {
      fail(field + ".name", "object name collides with room '" + o.name + "'");
    }
  }
  for (std::size_t i = 0; i < w.objects.size(); ++i) {
    const ObjectSpec& o = w.objects[i];
    std::string field = "world.objects[" + std::to_string(i) + "]";
    if (!rooms.count(o.location) && !names.count(o.location)) {
      fail(field + ".location", "unknown location '" + o.location + "'");
    }
    if (names.count(o.location)) {
      auto it = std::find_if(w.objects.begin(), w.objects.end(),
                             [&](const ObjectSpec& h) { return h.name == o.location; });
      if (!it->container && !it->surface && !it->heat_source) {
        fail(field + ".location",
             "'" + o.location + "' is not a container, surface, or heat source");
      }
    }
    if (o.growth_stage < 0 || o.growth_stage > 3) {
      fail(field + ".growth_stage", "must be in 0..3");
    }
  }

  for (std::size_t i = 0; i < w.doors.size(); ++i) {
    const DoorSpec& d = w.doors[i];
    std::string field = "world.doors[" + std::to_string(i) + "]";
    if (!rooms.count(d.a)) fail(field + ".a", "unknown room '" + d.a + "'");
    if (!rooms.count(d.b)) fail(field + ".b", "unknown room '" + d.b + "'");
    if (d.a == d.b) fail(field, "door connects a room to itself");
  }

  // Connectivity with every door open.
  if (w.rooms.size() > 1) {
    std::set<std::string> seen{w.rooms.front()};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const DoorSpec& d : w.doors) {
        if (seen.count(d.a) != seen.count(d.b)) {
          seen.insert(d.a);
          seen.insert(d.b);
          grew = true;
        }
      }
    }
    if (seen.size() != rooms.size()) {
      fail("world.doors", "room graph is not connected when all doors are open");
    }
  }

  const TaskSpec& t = b.task;
  if (t.task_id.empty()) fail("task.task_id", "must not be empty");
  if (t.description.empty()) fail("task.description", "must not be empty");
  if (t.length != "S" && t.length != "L") fail("task.length", "must be 'S' or 'L'");
  if (t.max_steps <= 0) fail("task.max_steps", "must be positive");
  if (t.focus_budget < 0) fail("task.focus_budget", "must be >= 0");
  for (const std::string& f : t.focus_targets) {
    if (!names.count(f)) fail("task.focus_targets", "unknown object '" + f + "'");
  }
  if (t.subgoals.empty()) fail("task.subgoals", "must not be empty");

  int total = 0;
  bool terminal = false;
  static const std::set<std::string> kKinds = {
      "agent_in_room",        "carrying",   "object_at", "container_open",
      "device_on",            "growth_adult", "measured", "read_obj",
      "temperature_at_least", "tested",     "focused"};
  for (std::size_t i = 0; i < t.subgoals.size(); ++i) {
    const Subgoal& s = t.subgoals[i];
    std::string field = "task.subgoals[" + std::to_string(i) + "]";
    if (!kKinds.count(s.kind)) fail(field + ".kind", "unknown kind '" + s.kind + "'");
    if (s.weight <= 0) fail(field + ".weight", "must be positive");
    total += s.weight;
    terminal = terminal || s.terminal;
    if (s.kind == "agent_in_room") {
      if (!rooms.count(s.object)) fail(field + ".object", "unknown room '" + s.object + "'");
    } else if (!names.count(s.object)) {
      fail(field + ".object", "unknown object '" + s.object + "'");
    }
    if (s.kind == "object_at" && !rooms.count(s.target) && !names.count(s.target)) {
      fail(field + ".target", "unknown location '" + s.target + "'");
    }
    if (s.kind == "focused" &&
        std::find(t.focus_targets.begin(), t.focus_targets.end(), s.object) ==
            t.focus_targets.end()) {
      fail(field + ".object", "focused subgoal object must be a focus target");
    }
  }
  if (total != 100) {
    fail("task.subgoals", "weights sum to " + std::to_string(total) + ", expected 100");
  }
  if (!terminal) fail("task.subgoals", "at least one subgoal must be terminal");
}

Bundle parse_bundle(const json& j) {
  Bundle b;
  try {
    b = j.get<Bundle>();
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bundle: ") + e.what());
  }
  validate_bundle(b);
  return b;
}

Bundle load_bundle(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    // Accept a bare bundle name: "worlds/pickplace_a" → "worlds/pickplace_a.json".
    in = std::ifstream(path + ".json");
    if (!in) throw InvalidConfig("cannot open bundle file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InvalidConfig("cannot parse bundle file " + path + ": " + e.what());
  }
  return parse_bundle(j);
}

}  // namespace cama
