#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace cama {

struct DoorSpec {
  std::string a;
  std::string b;
  bool open = true;
};

// Declarative object description. Flags compose: a pot is a container with
// soil; a stove is a device that is a heat source; an inclined plane is a
// surface with a slide time.
struct ObjectSpec {
  std::string name;
  std::string location;  // room name or container object name
  bool portable = false;

  bool container = false;
  bool openable = false;
  bool open = true;

  bool device = false;
  bool on = false;
  bool broken = false;
  bool heat_source = false;

  std::string tool;  // "" | "thermometer" | "lighter"

  bool surface = false;
  int slide_ticks = 0;  // ticks to slide down; larger = more friction

  std::string readable;  // non-empty: text revealed by "read <name>"

  bool substance = false;  // can be heated
  int temperature = 20;    // degrees celsius
  int boil_point = 100;    // heating cap

  bool grows = false;     // advances growth stages while planted in soil
  int growth_stage = 0;   // 0 seed .. 3 adult plant
  bool soil = false;      // container that supports growth
};

struct Subgoal {
  // agent_in_room | carrying | object_at | container_open | device_on |
  // temperature_at_least | growth_adult | measured | read_obj | tested |
  // focused
  std::string kind;
  std::string object;
  std::string target;     // object_at: destination room/holder
  int threshold = 0;      // temperature_at_least
  int weight = 0;
  bool terminal = false;
};

struct TaskSpec {
  std::string task_id;
  std::string family;
  std::string length = "S";  // "S" | "L"
  std::string description;
  int max_steps = 30;
  std::vector<std::string> focus_targets;
  int focus_budget = 0;
  std::vector<Subgoal> subgoals;
};

// Recipe for deriving environment variants from a base world.
struct VariantRecipe {
  std::vector<std::string> start_rooms;       // candidate starting rooms
  std::vector<std::string> shuffle_objects;   // objects relocated per variant
  std::vector<std::vector<std::string>> alternative_tools;  // one functional per group
};

struct WorldConfig {
  std::vector<std::string> rooms;
  std::vector<DoorSpec> doors;
  std::string start_room;
  std::vector<ObjectSpec> objects;
  int variant_id = 0;
  std::uint64_t rng_seed = 0;
  VariantRecipe recipe;
};

// One world/task pair as stored in a bundle file.
struct Bundle {
  WorldConfig world;
  TaskSpec task;
};

void to_json(nlohmann::json& j, const DoorSpec& d);
void from_json(const nlohmann::json& j, DoorSpec& d);
void to_json(nlohmann::json& j, const ObjectSpec& o);
void from_json(const nlohmann::json& j, ObjectSpec& o);
void to_json(nlohmann::json& j, const Subgoal& s);
void from_json(const nlohmann::json& j, Subgoal& s);
void to_json(nlohmann::json& j, const TaskSpec& t);
void from_json(const nlohmann::json& j, TaskSpec& t);
void to_json(nlohmann::json& j, const VariantRecipe& v);
void from_json(const nlohmann::json& j, VariantRecipe& v);
void to_json(nlohmann::json& j, const WorldConfig& w);
void from_json(const nlohmann::json& j, WorldConfig& w);
void to_json(nlohmann::json& j, const Bundle& b);
void from_json(const nlohmann::json& j, Bundle& b);

// Loads and validates a bundle file. Throws InvalidConfig with a
// field-path message on any problem.
Bundle load_bundle(const std::string& path);
Bundle parse_bundle(const nlohmann::json& j);

// Structural validation: rooms/doors/locations resolve, object names are
// unique, subgoal weights sum to 100 with at least one terminal subgoal,
// the room graph is connected when all doors are open.
void validate_bundle(const Bundle& b);

}  // namespace cama
