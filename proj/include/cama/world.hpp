#pragma once

#include <string>
#include <vector>

#include "cama/action_space.hpp"
#include "cama/trial.hpp"
#include "cama/world_config.hpp"

namespace cama {

struct StepResult {
  std::string observation;
  int score = 0;  // cumulative, monotone (subgoals latch)
  bool done = false;
  TerminalReason terminal_reason = TerminalReason::RUNNING;
};

// Compact mutable world state, used by the solver for backtracking and
// visited-set deduplication. Step count is deliberately excluded: search
// depth is the solver's own bookkeeping.
struct WorldState {
  std::string agent_room;
  std::vector<bool> door_open;
  struct Obj {
    std::string location;
    bool open = true;
    bool on = false;
    int temperature = 20;
    int growth_stage = 0;
  };
  std::vector<Obj> objects;
  int focus_used = 0;
  std::vector<bool> focused, measured, read_done, tested;
  std::vector<bool> visited_rooms;
  std::vector<bool> subgoal_done;
  int score = 0;
  bool done = false;
  TerminalReason terminal = TerminalReason::RUNNING;
  bool ambiguity_pending = false;
  std::vector<std::string> ambiguity_options;

  // Canonical string form, usable as a visited-set key.
  std::string key() const;
};

// Deterministic text micro-world: rooms joined by doors, containers,
// devices, heat sources, growing plants, readable notes and slide
// surfaces, with a latching subgoal score and FOCUS semantics.
//
// All errors raised by actions are in-world observations, never
// exceptions. Free-text input is resolved against the currently known
// objects: an exact (case/whitespace-insensitive) instantiation executes
// directly, a unique fuzzy match executes, several matches produce an
// "Ambiguous request" observation with a numbered option list that the
// next step answers with a bare integer, and no match produces
// "No known action matches that input.".
class World {
 public:
  static const std::vector<std::string>& action_templates();

  explicit World(Bundle bundle);  // validates the bundle

  const std::string& initial_observation() const { return initial_observation_; }
  const TaskSpec& task() const { return bundle_.task; }
  const WorldConfig& config() const { return bundle_.world; }

  // Current templates + known object names (rooms reachable or visited,
  // doors of the current room, visible objects, inventory).
  ActionSpace admissible() const;

  StepResult step(const std::string& action);
  // Records the refine-failure no-op: same step accounting, observation
  // "No known action matches that input.", no state change.
  StepResult step_unknown();

  int score() const { return state_.score; }
  bool done() const { return state_.done; }
  TerminalReason terminal() const { return state_.terminal; }
  int steps_taken() const { return steps_taken_; }
  // The solver probes many states through one World instance and tracks
  // search depth itself, so it zeroes the step counter between probes to
  // keep the timeout rule out of the search.
  void set_steps_taken(int n) { steps_taken_ = n; }
  bool ambiguity_pending() const { return state_.ambiguity_pending; }
  const std::string& agent_room() const { return state_.agent_room; }

  // Read access for tests and the solver.
  const ObjectSpec& object(const std::string& name) const;
  int object_temperature(const std::string& name) const;
  int object_growth(const std::string& name) const;
  bool carrying(const std::string& name) const;
  std::string room_of_object(const std::string& name) const;
  bool object_visible(const std::string& name) const;

  WorldState save_state() const { return state_; }
  void restore_state(const WorldState& s);

 private:
  struct Resolved {
    std::size_t template_index = 0;
    std::string a;  // first slot (empty for zero-slot templates)
    std::string b;  // second slot
    std::string action;  // canonical instantiation
  };

  int object_index(const std::string& name) const;  // -1 when absent
  bool is_room(const std::string& name) const;
  std::string door_name(const std::string& room) const;
  const DoorSpec* door_between(const std::string& a, const std::string& b,
                               std::size_t* index = nullptr) const;

  std::string holder_of(int idx) const;  // current location
  std::string room_of(int idx) const;
  bool reachable(int idx) const;  // visible here or carried
  std::vector<std::string> known_objects() const;

  std::string describe_object(int idx) const;
  std::string contents_phrase(const std::string& holder) const;
  std::string look_text() const;

  std::vector<Resolved> resolve(const std::string& input) const;
  std::string execute(const Resolved& r);  // returns the observation

  std::string do_go(const std::string& target);
  std::string do_open(const std::string& target);
  std::string do_close(const std::string& target);
  std::string do_pick_up(const std::string& target);
  std::string do_move(const std::string& what, const std::string& to);
  std::string do_activate(const std::string& target);
  std::string do_deactivate(const std::string& target);
  std::string do_use(const std::string& what, const std::string& on);
  std::string do_wait();
  std::string do_focus(const std::string& target);
  std::string do_read(const std::string& target);

  void evaluate_subgoals();
  StepResult finish(std::string observation, bool evaluate);

  Bundle bundle_;
  std::vector<std::string> room_index_;
  std::string initial_observation_;
  WorldState state_;
  int steps_taken_ = 0;
  bool skip_goal_eval_ = false;  // set on FAILED_FOCUS: score frozen
};

}  // namespace cama
