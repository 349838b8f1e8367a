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

#include "mapper/a2c.hpp"

#include <cmath>
#include <numeric>

#include "mapper/errors.hpp"

namespace mapper::rl {

void RolloutBuffer::Validate() const {
  const std::size_t n = actions.size();
  if (obs.size() != n || waypoints.size() != n || rewards.size() != n || log_probs.size() != n ||
      values.size() != n || terminal.size() != n) {
    throw ContractViolation("rollout buffer fields have different lengths");
  }
}

ReturnsAdvantages ComputeReturnsAndAdvantages(const RolloutBuffer& buffer, double gamma) {
  buffer.Validate();
  const std::size_t n = buffer.size();
  ReturnsAdvantages ra;
  ra.returns.resize(n);
  ra.advantages.resize(n);
  double next = buffer.truncated ? buffer.bootstrap_value : 0.0;
  for (std::size_t k = n; k-- > 0;) {
    if (buffer.terminal[k]) next = 0.0;
    next = buffer.rewards[k] + gamma * next;
    ra.returns[k] = next;
    ra.advantages[k] = next - buffer.values[k];
  }
  return ra;
}

std::vector<double> Standardize(std::span<const double> values) {
  std::vector<double> out(values.begin(), values.end());
  if (out.empty()) return out;
  const double mean = std::accumulate(out.begin(), out.end(), 0.0) / out.size();
  double var = 0.0;
  for (double v : out) var += (v - mean) * (v - mean);
  var /= out.size();
  const double sd = std::sqrt(var);
  if (sd < 1e-8) {
    std::fill(out.begin(), out.end(), 0.0);
    return out;
  }
  for (double& v : out) v = (v - mean) / sd;
  return out;
}

UpdateStats A2CUpdate(nn::ParamSet& params, nn::OptimizerState& opt, const RolloutBuffer& buffer,
                      const ReturnsAdvantages& ra, const A2CConfig& cfg) {
  buffer.Validate();
  if (ra.returns.size() != buffer.size() || ra.advantages.size() != buffer.size()) {
    throw ContractViolation("returns/advantages not aligned with the buffer");
  }
  if (buffer.empty()) return {};
  const std::vector<double> adv = cfg.standardize_advantages
                                      ? Standardize(ra.advantages)
                                      : ra.advantages;
  nn::LossResult res = nn::LossAndGrads(params, buffer.obs, buffer.waypoints, buffer.actions, adv,
                                        ra.returns, cfg.loss);
  UpdateStats stats{res.loss, res.policy_loss, res.value_loss, res.entropy, 0.0};
  stats.grad_norm = nn::ClipGradNorm(res.grads, cfg.max_grad_norm);
  nn::OptimizerStep(params, res.grads, opt);
  if (!params.AllFinite()) throw NumericError("optimizer", "non-finite parameter after update");
  return stats;
}

Action SampleAction(std::span<const double> probs, std::mt19937_64& rng) {
  const double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  double acc = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    acc += probs[k];
    if (u < acc) return static_cast<Action>(k);
  }
  // Rounding left u above the cumulative sum: take the last positive entry.
  for (std::size_t k = probs.size(); k-- > 0;) {
    if (probs[k] > 0) return static_cast<Action>(k);
  }
  return Action::kWait;
}

Action GreedyAction(std::span<const double> probs) {
  std::size_t best = 0;
  for (std::size_t k = 1; k < probs.size(); ++k) {
    if (probs[k] > probs[best]) best = k;
  }
  return static_cast<Action>(best);
}

EpisodeResult RunEpisode(Simulation& sim, std::span<const nn::ParamSet* const> policies,
                         double gamma, std::mt19937_64& rng, ActionSelection selection,
                         bool record, const std::function<void(const Simulation&)>& on_step) {
  const std::size_t n = sim.world().agents.size();
  if (policies.size() != n) throw ContractViolation("need one policy per agent");
  EpisodeResult result;
  result.buffers.resize(n);
  result.returns.assign(n, 0.0);
  result.success.assign(n, 0);
  result.goal_step.assign(n, -1);
  std::vector<double> discount(n, 1.0);

  std::vector<Action> actions(n, Action::kWait);
  std::vector<ObservationTensor> obs(n);
  std::vector<WaypointFeature> wp(n);
  std::vector<nn::NetworkOutput> out(n);
  while (!sim.Finished()) {
    for (std::size_t i = 0; i < n; ++i) {
      actions[i] = Action::kWait;
      if (sim.world().agents[i].done) continue;
      obs[i] = sim.Observe(static_cast<int>(i));
      wp[i] = sim.Waypoint(static_cast<int>(i));
      out[i] = nn::Forward(*policies[i], obs[i], wp[i]);
      actions[i] = selection == ActionSelection::kSample ? SampleAction(out[i].action_probs, rng)
                                                         : GreedyAction(out[i].action_probs);
    }
    const Simulation::Transition tr = sim.Advance(actions);
    if (on_step) on_step(sim);
    for (std::size_t i = 0; i < n; ++i) {
      const StepOutcome& o = tr.outcomes[i];
      if (!o.active) continue;
      if (o.collided) ++result.collisions;
      result.returns[i] += discount[i] * tr.rewards[i];
      discount[i] *= gamma;
      if (o.reached_goal) {
        result.success[i] = 1;
        result.goal_step[i] = sim.steps();
      }
      if (!record) continue;
      RolloutBuffer& b = result.buffers[i];
      b.obs.push_back(obs[i]);
      b.waypoints.push_back(wp[i]);
      b.actions.push_back(actions[i]);
      b.rewards.push_back(tr.rewards[i]);
      b.log_probs.push_back(out[i].log_probs[static_cast<int>(actions[i])]);
      b.values.push_back(out[i].value);
      b.terminal.push_back(o.reached_goal ? 1 : 0);
    }
  }
  result.steps = sim.steps();
  if (record) {
    for (std::size_t i = 0; i < n; ++i) {
      RolloutBuffer& b = result.buffers[i];
      if (sim.world().agents[i].done || b.empty()) continue;
      b.truncated = true;
      b.bootstrap_value =
          nn::Forward(*policies[i], sim.Observe(static_cast<int>(i)), sim.Waypoint(static_cast<int>(i)))
              .value;
    }
  }
  return result;
}

}  // namespace mapper::rl
