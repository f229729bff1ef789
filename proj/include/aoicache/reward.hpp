#pragma once

#include "aoicache/aoi_dynamics.hpp"

namespace aoicache {

struct RewardBreakdown {
  double aoi_utility = 0.0;
  double mbs_cost = 0.0;
  double total = 0.0;
};

// Sum over covered copies of p * A^max / AoI, evaluated on an already-advanced state.
inline double aoi_utility_of(const CacheState& post, const SystemConfig& cfg) {
  double sum = 0.0;
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      sum += static_cast<double>(cfg.max_aoi[h]) / static_cast<double>(post.rsu_aoi(k, h)) *
             post.popularity(k, h);
    }
  }
  return sum;
}

// AoI utility of taking `action` in `state`; AoIs are read after the action is applied.
inline double aoi_utility(const CacheState& state, const UpdateAction& action,
                          const SystemConfig& cfg) {
  check_action(action, cfg);
  double sum = 0.0;
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      sum += static_cast<double>(cfg.max_aoi[h]) /
             static_cast<double>(post_action_aoi(state, action, k, h)) * state.popularity(k, h);
    }
  }
  return sum;
}

inline double mbs_cost(const UpdateAction& action, const SystemConfig& cfg) {
  check_action(action, cfg);
  double sum = 0.0;
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    for (std::size_t h = 0; h < cfg.num_regions; ++h) {
      if (action.refreshes(k, h)) sum += cfg.update_cost(k, h);
    }
  }
  return sum;
}

inline RewardBreakdown stage_reward(const CacheState& state, const UpdateAction& action,
                                    const SystemConfig& cfg) {
  RewardBreakdown r;
  r.aoi_utility = aoi_utility(state, action, cfg);
  r.mbs_cost = mbs_cost(action, cfg);
  r.total = r.aoi_utility * cfg.aoi_weight - r.mbs_cost;
  return r;
}

// Contribution of RSU k's row to the stage reward if it refreshes `refreshed`
// (or nothing when refreshed == num_regions).
inline double row_reward(const CacheState& state, std::size_t k, std::size_t refreshed,
                         const SystemConfig& cfg) {
  const auto cov = coverage_of(k, cfg);
  double utility = 0.0;
  for (std::size_t h = cov.first; h < cov.last; ++h) {
    const Slots a = h == refreshed ? state.mbs_aoi[h] : state.rsu_aoi(k, h) + 1;
    utility += static_cast<double>(cfg.max_aoi[h]) / static_cast<double>(a) * state.popularity(k, h);
  }
  const double cost = cov.contains(refreshed) ? cfg.update_cost(k, refreshed) : 0.0;
  return utility * cfg.aoi_weight - cost;
}

}  // namespace aoicache
