#pragma once

#include <string>

#include "cama/world_config.hpp"

namespace testworld {

inline cama::ObjectSpec make_object(const std::string& name,
                                    const std::string& location) {
  cama::ObjectSpec o;
  o.name = name;
  o.location = location;
  return o;
}

// Three-room world: hallway (start, lighter + note), kitchen behind a
// closed door (stove, pot of water, cupboard with thermometer), greenhouse
// behind an open door (seed, flower pot with soil, ramp, block).
inline cama::Bundle boil_bundle() {
  using namespace cama;
  Bundle b;
  b.world.rooms = {"hallway", "kitchen", "greenhouse"};
  b.world.doors = {DoorSpec{"hallway", "kitchen", false},
                   DoorSpec{"hallway", "greenhouse", true}};
  b.world.start_room = "hallway";

  ObjectSpec stove = make_object("stove", "kitchen");
  stove.device = true;
  stove.heat_source = true;
  b.world.objects.push_back(stove);

  ObjectSpec pot = make_object("metal pot", "kitchen");
  pot.portable = true;
  pot.container = true;
  b.world.objects.push_back(pot);

  ObjectSpec water = make_object("water", "metal pot");
  water.substance = true;
  b.world.objects.push_back(water);

  ObjectSpec cupboard = make_object("cupboard", "kitchen");
  cupboard.container = true;
  cupboard.openable = true;
  cupboard.open = false;
  b.world.objects.push_back(cupboard);

  ObjectSpec thermometer = make_object("thermometer", "cupboard");
  thermometer.portable = true;
  thermometer.tool = "thermometer";
  b.world.objects.push_back(thermometer);

  ObjectSpec lighter = make_object("lighter", "hallway");
  lighter.portable = true;
  lighter.tool = "lighter";
  b.world.objects.push_back(lighter);

  ObjectSpec note = make_object("note", "hallway");
  note.portable = true;
  note.readable = "Water boils at 100 degrees celsius.";
  b.world.objects.push_back(note);

  ObjectSpec seed = make_object("seed", "greenhouse");
  seed.portable = true;
  seed.grows = true;
  b.world.objects.push_back(seed);

  ObjectSpec flower_pot = make_object("flower pot", "greenhouse");
  flower_pot.container = true;
  flower_pot.soil = true;
  b.world.objects.push_back(flower_pot);

  ObjectSpec ramp = make_object("ramp", "greenhouse");
  ramp.surface = true;
  ramp.slide_ticks = 7;
  b.world.objects.push_back(ramp);

  ObjectSpec block = make_object("block", "greenhouse");
  block.portable = true;
  b.world.objects.push_back(block);

  b.task.task_id = "boil_test";
  b.task.family = "heat";
  b.task.length = "S";
  b.task.description = "Your task is to boil water.";
  b.task.max_steps = 30;
  b.task.focus_targets = {"water"};
  b.task.focus_budget = 1;
  b.task.subgoals = {
      Subgoal{"agent_in_room", "kitchen", "", 0, 10, false},
      Subgoal{"object_at", "metal pot", "stove", 0, 10, false},
      Subgoal{"device_on", "stove", "", 0, 15, false},
      Subgoal{"temperature_at_least", "water", "", 100, 35, false},
      Subgoal{"focused", "water", "", 0, 30, true},
  };
  return b;
}

// Lab with a key and a table; picking up the key scores half, placing it
// on the table finishes the task.
inline cama::Bundle learn_bundle() {
  using namespace cama;
  Bundle b;
  b.world.rooms = {"lab"};
  b.world.start_room = "lab";
  ObjectSpec key = make_object("key", "lab");
  key.portable = true;
  b.world.objects.push_back(key);
  ObjectSpec table = make_object("table", "lab");
  table.surface = true;
  b.world.objects.push_back(table);
  b.task.task_id = "learn2";
  b.task.family = "pickplace";
  b.task.length = "S";
  b.task.description = "Your task is to put the key on the table.";
  b.task.max_steps = 30;
  b.task.subgoals = {Subgoal{"carrying", "key", "", 0, 50, false},
                     Subgoal{"object_at", "key", "table", 0, 50, true}};
  return b;
}

// Scripted two-trial scenario over learn_bundle(): the first trial stops
// half way, its learnings steer the second trial to the full score.
inline const char* learn_script() {
  return R"(
{"tag": "controller_executor", "match": {"kind": "step", "value": 0}, "response": "$$$ Try picking up the key. ### pick up key"}
{"tag": "controller_executor", "match": {"kind": "step", "value": 1}, "response": "### TASK_COMPLETE"}
{"tag": "controller_executor", "match": {"kind": "step", "value": 2}, "response": "I used learning id(s): 1 $$$ Put the key on the table. ### pick up key"}
{"tag": "controller_executor", "match": {"kind": "step", "value": 3}, "response": "### move key to table"}
{"tag": "mem_adapt", "match": {"kind": "step", "value": 0}, "response": "1. Moving the key to the table MAY BE NECESSARY to put the key on the table.\n2. Picking up the key SHOULD BE NECESSARY to put the key on the table."}
{"tag": "mem_adapt", "match": {"kind": "step", "value": 1}, "response": "1. Moving the key to the table SHOULD BE NECESSARY to put the key on the table."}
)";
}

// Single room, single portable object, one-step task.
inline cama::Bundle tiny_bundle() {
  using namespace cama;
  Bundle b;
  b.world.rooms = {"lab"};
  b.world.start_room = "lab";
  ObjectSpec key = make_object("key", "lab");
  key.portable = true;
  b.world.objects.push_back(key);
  b.task.task_id = "tiny";
  b.task.family = "pickplace";
  b.task.length = "S";
  b.task.description = "Your task is to pick up the key.";
  b.task.max_steps = 30;
  b.task.subgoals = {Subgoal{"carrying", "key", "", 0, 100, true}};
  return b;
}

}  // namespace testworld
