#pragma once

#include "lae/policy/observation.hpp"

namespace lae::policy {

// Potential-field controller used as the behavior-cloning teacher. It acts
// on the same observation the policy network sees, so the mapping it
// demonstrates is fully determined by the observation. Obstacle repulsion is
// deliberately weak (k_obst) so the controller collides now and then in
// clutter while still reaching goals.
struct ExpertGains {
  double k_goal = 4.0;
  double k_damp = 3.0;
  double k_neigh = 1.2;
  double neigh_range = 2.5;   // center-distance cutoff, meters
  double k_obst = 0.06;       // weakened on purpose; calibrated once
  double a_max = 4.0;
};

Vec2 expert_action(const Observation& obs, const ExpertGains& gains);

}  // namespace lae::policy
