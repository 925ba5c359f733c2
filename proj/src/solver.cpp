#include "cama/solver.hpp"

#include <algorithm>
#include <deque>
#include <random>
#include <set>
#include <unordered_map>

#include "cama/errors.hpp"
#include "cama/world.hpp"

namespace cama {
namespace {

constexpr std::size_t kStateBudget = 500000;

// Actions worth probing from the world's current state: everything that
// can open up the map plus moves/uses restricted to objects the task's
// subgoals mention, to keep the branching factor small.
std::vector<std::string> candidate_actions(World& w) {
  const WorldConfig& cfg = w.config();
  const TaskSpec& task = w.task();
  const WorldState state = w.save_state();

  std::set<std::string> relevant;
  bool wants_wait = false;
  std::vector<std::string> measured_targets, tested_surfaces;
  for (const Subgoal& g : task.subgoals) {
    relevant.insert(g.object);
    if (!g.target.empty()) relevant.insert(g.target);
    if (g.kind == "temperature_at_least" || g.kind == "growth_adult")
      wants_wait = true;
    if (g.kind == "measured") measured_targets.push_back(g.object);
    if (g.kind == "tested") tested_surfaces.push_back(g.object);
  }
  for (const std::string& f : task.focus_targets) relevant.insert(f);

  // Objects that transitively hold something relevant are worth moving
  // too (a pot of water moves the water with it).
  std::set<std::string> carriers;
  for (const std::string& name : relevant) {
    std::string loc;
    for (const ObjectSpec& o : cfg.objects)
      if (o.name == name) loc = o.name;
    if (loc.empty()) continue;
    for (std::size_t guard = 0; guard <= cfg.objects.size(); ++guard) {
      const ObjectSpec* holder = nullptr;
      for (std::size_t i = 0; i < cfg.objects.size(); ++i)
        if (cfg.objects[i].name == loc) holder = &cfg.objects[i];
      if (!holder) break;
      loc = state.objects[static_cast<std::size_t>(holder - cfg.objects.data())]
                .location;
      if (std::none_of(cfg.objects.begin(), cfg.objects.end(),
                       [&](const ObjectSpec& o) { return o.name == loc; }))
        break;
      carriers.insert(loc);
    }
  }

  std::vector<std::string> out;
  for (std::size_t i = 0; i < cfg.doors.size(); ++i) {
    const DoorSpec& d = cfg.doors[i];
    std::string other;
    if (d.a == w.agent_room()) other = d.b;
    else if (d.b == w.agent_room()) other = d.a;
    else continue;
    if (!state.door_open[i]) out.push_back("open door to " + other);
    else out.push_back("go to " + other);
  }

  for (std::size_t i = 0; i < cfg.objects.size(); ++i) {
    const ObjectSpec& o = cfg.objects[i];
    if (!w.object_visible(o.name)) continue;
    const WorldState::Obj& st = state.objects[i];
    if (o.portable && st.location != "inventory")
      out.push_back("pick up " + o.name);
    if (o.openable && !st.open) out.push_back("open " + o.name);
    if (o.device && !o.broken && !st.on) out.push_back("activate " + o.name);
    if (!o.readable.empty()) out.push_back("read " + o.name);
  }

  for (std::size_t i = 0; i < cfg.objects.size(); ++i) {
    const ObjectSpec& o = cfg.objects[i];
    if (!o.portable || !w.object_visible(o.name)) continue;
    if (!relevant.count(o.name) && !carriers.count(o.name)) continue;
    for (const ObjectSpec& h : cfg.objects) {
      if (h.name == o.name || !w.object_visible(h.name)) continue;
      if (!h.container && !h.surface && !h.heat_source && !h.soil) continue;
      if (!relevant.count(h.name) && !h.heat_source && !h.soil) continue;
      out.push_back("move " + o.name + " to " + h.name);
    }
    if (relevant.count(w.agent_room()))
      out.push_back("move " + o.name + " to " + w.agent_room());
  }

  for (const ObjectSpec& t : cfg.objects) {
    if (t.tool == "thermometer" && w.object_visible(t.name))
      for (const std::string& m : measured_targets)
        if (w.object_visible(m)) out.push_back("use " + t.name + " on " + m);
    if (t.tool == "lighter" && !t.broken && w.object_visible(t.name) &&
        wants_wait)
      for (const ObjectSpec& s : cfg.objects)
        if (s.substance && w.object_visible(s.name))
          out.push_back("use " + t.name + " on " + s.name);
  }
  for (const std::string& surface : tested_surfaces)
    if (w.object_visible(surface))
      for (const ObjectSpec& o : cfg.objects)
        if (o.portable && o.name != surface && w.object_visible(o.name))
          out.push_back("use " + o.name + " on " + surface);

  if (wants_wait) out.push_back("wait");
  if (state.focus_used < task.focus_budget)
    for (const std::string& f : task.focus_targets)
      out.push_back("focus on " + f);
  return out;
}

}  // namespace

std::optional<std::vector<std::string>> solve(const Bundle& bundle,
                                              int max_depth) {
  World w(bundle);
  const int depth_limit = max_depth > 0 ? max_depth : bundle.task.max_steps;

  const WorldState start = w.save_state();
  const std::string start_key = start.key();
  std::unordered_map<std::string, WorldState> states{{start_key, start}};
  std::unordered_map<std::string, std::pair<std::string, std::string>> parent;
  std::deque<std::pair<std::string, int>> queue{{start_key, 0}};

  auto reconstruct = [&](std::string key) {
    std::vector<std::string> path;
    while (key != start_key) {
      const auto& [prev, action] = parent.at(key);
      path.push_back(action);
      key = prev;
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  while (!queue.empty()) {
    auto [key, depth] = queue.front();
    queue.pop_front();
    if (depth >= depth_limit) continue;
    const WorldState node = states.at(key);

    w.restore_state(node);
    std::vector<std::string> actions = candidate_actions(w);
    for (const std::string& action : actions) {
      w.restore_state(node);
      w.set_steps_taken(0);
      StepResult r = w.step(action);
      if (r.done && r.score != 100) continue;
      WorldState next = w.save_state();
      std::string next_key = next.key();
      if (states.count(next_key)) continue;
      if (states.size() >= kStateBudget) return std::nullopt;
      states.emplace(next_key, std::move(next));
      parent.emplace(next_key, std::make_pair(key, action));
      if (r.done && r.score == 100) return reconstruct(next_key);
      queue.emplace_back(std::move(next_key), depth + 1);
    }
  }
  return std::nullopt;
}

std::vector<Bundle> make_variants(const Bundle& base, int n,
                                  std::uint64_t seed) {
  if (n < 1) throw InvalidConfig("make_variants: n must be >= 1");
  validate_bundle(base);

  std::vector<Bundle> out;
  out.push_back(base);
  out.back().world.variant_id = 0;

  std::mt19937_64 g(seed);
  auto draw = [&](std::size_t bound) {
    return static_cast<std::size_t>(g() % bound);
  };
  const VariantRecipe& recipe = base.world.recipe;

  for (int i = 1; i < n; ++i) {
    bool solved = false;
    for (int attempt = 0; attempt < 64 && !solved; ++attempt) {
      Bundle v = base;
      v.world.variant_id = i;
      v.world.rng_seed = seed;
      if (!recipe.start_rooms.empty())
        v.world.start_room = recipe.start_rooms[draw(recipe.start_rooms.size())];
      for (const std::string& name : recipe.shuffle_objects)
        for (ObjectSpec& o : v.world.objects)
          if (o.name == name)
            o.location = v.world.rooms[draw(v.world.rooms.size())];
      for (const std::vector<std::string>& group : recipe.alternative_tools) {
        std::size_t keep = draw(group.size());
        for (std::size_t k = 0; k < group.size(); ++k)
          for (ObjectSpec& o : v.world.objects)
            if (o.name == group[k]) o.broken = (k != keep);
      }
      validate_bundle(v);
      if (solve(v)) {
        out.push_back(std::move(v));
        solved = true;
      }
    }
    if (!solved)
      throw InvalidConfig(
          "make_variants: no solvable variant found for variant " +
          std::to_string(i));
  }
  return out;
}

}  // namespace cama
