// Copyright 2026 The MAPPER Lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mapper/evaluate.hpp"

#include <cmath>
#include <sstream>

#include "mapper/a2c.hpp"
#include "mapper/errors.hpp"
#include "mapper/trace.hpp"

namespace mapper {

namespace {

EpisodeRecord RunLra(Simulation& sim, Trace* trace) {
  const std::size_t n = sim.world().agents.size();
  EpisodeRecord rec;
  rec.success.assign(n, 0);
  while (!sim.Finished()) {
    const Simulation::Transition tr = sim.Advance(sim.LraActions());
    for (const StepOutcome& o : tr.outcomes) rec.collisions += o.active && o.collided;
    if (trace) trace->Record(sim.world());
  }
  for (std::size_t i = 0; i < n; ++i) rec.success[i] = sim.world().agents[i].done;
  rec.steps = sim.steps();
  return rec;
}

EpisodeRecord RunPolicy(Simulation& sim, const nn::ParamSet& policy, Trace* trace) {
  const std::size_t n = sim.world().agents.size();
  std::vector<const nn::ParamSet*> policies(n, &policy);
  std::mt19937_64 unused(0);
  std::function<void(const Simulation&)> hook;
  if (trace) hook = [trace](const Simulation& s) { trace->Record(s.world()); };
  const rl::EpisodeResult r = rl::RunEpisode(sim, policies, 1.0, unused,
                                             rl::ActionSelection::kGreedy, false, hook);
  EpisodeRecord rec;
  rec.success = r.success;
  rec.steps = r.steps;
  rec.collisions = r.collisions;
  return rec;
}

}  // namespace

EvalReport Evaluate(const EvalSuite& suite, const EvalOptions& opts) {
  if (suite.episodes < 0) throw ContractViolation("episode count must be >= 0");
  if (opts.mode == Mode::kMapper && !opts.policy) {
    throw ContractViolation("mapper evaluation needs a policy");
  }
  EvalReport report;
  report.suite = suite.name;
  report.mode = ModeName(opts.mode);
  report.seed = suite.seed;
  report.episodes = suite.episodes;
  if (suite.episodes == 0) return report;

  if (!opts.record_dir.empty()) std::filesystem::create_directories(opts.record_dir);
  const WorldFactory factory(suite.map, suite.scenario, suite.seed);
  std::vector<double> fractions;
  std::int64_t steps_total = 0;
  int all_ok = 0;
  for (int e = 0; e < suite.episodes; ++e) {
    const std::uint64_t seed = DeriveSeed(suite.seed, e);
    SimulationConfig sc = opts.sim;
    sc.horizon = suite.scenario.horizon ? suite.scenario.horizon : opts.sim.horizon;
    Simulation sim(factory.Make(seed), sc);

    std::optional<Trace> trace;
    const bool record = !opts.record_dir.empty() && (opts.record_limit < 0 || e < opts.record_limit);
    if (record) {
      std::vector<std::vector<Cell>> paths;
      for (std::size_t i = 0; i < sim.world().agents.size(); ++i) {
        paths.push_back(sim.ref_path(static_cast<int>(i)).cells);
      }
      trace = StartTrace(sim.world(), paths);
    }
    EpisodeRecord rec = opts.mode == Mode::kLraStar
                            ? RunLra(sim, trace ? &*trace : nullptr)
                            : RunPolicy(sim, *opts.policy, trace ? &*trace : nullptr);
    if (trace) {
      WriteTrace(*trace, opts.record_dir / ("episode_" + std::to_string(e) + ".trace.json"));
    }
    rec.index = e;
    rec.seed = seed;

    int ok = 0;
    for (auto s : rec.success) ok += s;
    const int n = static_cast<int>(rec.success.size());
    report.agent_episodes += n;
    report.successes += ok;
    report.collisions += rec.collisions;
    steps_total += rec.steps;
    all_ok += ok == n;
    fractions.push_back(n ? double(ok) / n : 1.0);
    report.per_episode.push_back(std::move(rec));
  }
  const double episodes = suite.episodes;
  report.success_rate =
      report.agent_episodes ? double(report.successes) / double(report.agent_episodes) : 1.0;
  double mean = 0.0;
  for (double f : fractions) mean += f;
  mean /= episodes;
  double var = 0.0;
  for (double f : fractions) var += (f - mean) * (f - mean);
  report.success_rate_std = std::sqrt(var / episodes);
  report.all_success_rate = all_ok / episodes;
  report.mean_steps = double(steps_total) / episodes;
  report.mean_collisions = double(report.collisions) / episodes;
  return report;
}

nlohmann::json EvalReport::ToJson() const {
  nlohmann::json eps = nlohmann::json::array();
  for (const EpisodeRecord& r : per_episode) {
    eps.push_back({{"index", r.index},
                   {"seed", r.seed},
                   {"success", r.success},
                   {"steps", r.steps},
                   {"collisions", r.collisions}});
  }
  return {{"suite", suite},
          {"mode", mode},
          {"seed", seed},
          {"episodes", episodes},
          {"agent_episodes", agent_episodes},
          {"successes", successes},
          {"success_rate", success_rate},
          {"success_rate_std", success_rate_std},
          {"all_success_rate", all_success_rate},
          {"mean_steps", mean_steps},
          {"collisions", collisions},
          {"mean_collisions", mean_collisions},
          {"per_episode", eps}};
}

std::string EvalReport::ToCsv() const {
  std::ostringstream out;
  out << "episode,seed,agent,success,steps,collisions\n";
  for (const EpisodeRecord& r : per_episode) {
    for (std::size_t i = 0; i < r.success.size(); ++i) {
      out << r.index << ',' << r.seed << ',' << i << ',' << int(r.success[i]) << ',' << r.steps
          << ',' << r.collisions << '\n';
    }
  }
  return out.str();
}

}  // namespace mapper
