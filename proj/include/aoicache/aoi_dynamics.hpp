#pragma once

#include <span>
#include <vector>

#include "aoicache/state.hpp"

namespace aoicache {

// A freshly generated master has AoI 1; every other master ages by one slot.
inline std::vector<Slots> advance_mbs_aoi(std::span<const Slots> mbs_aoi,
                                          const std::vector<bool>& generation_events) {
  if (mbs_aoi.size() != generation_events.size()) {
    throw Error(ErrorKind::LengthMismatch, "generation_events length differs from mbs_aoi");
  }
  std::vector<Slots> out(mbs_aoi.size());
  for (std::size_t h = 0; h < mbs_aoi.size(); ++h) {
    out[h] = generation_events[h] ? 1 : mbs_aoi[h] + 1;
  }
  return out;
}

// Applies one slot of refreshes. `state.mbs_aoi` must already reflect this slot's
// generation step: a refreshed copy takes the master's current age, every other
// covered copy ages by one.
inline CacheState advance_rsu_aoi(const CacheState& state, const UpdateAction& action,
                                  const SystemConfig& cfg) {
  check_action(action, cfg);
  CacheState next = state;
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      next.rsu_aoi(k, h) = action.refreshes(k, h) ? state.mbs_aoi[h] : state.rsu_aoi(k, h) + 1;
    }
  }
  return next;
}

// Post-action AoI of a single covered copy, without materialising the next state.
inline Slots post_action_aoi(const CacheState& state, const UpdateAction& action, std::size_t k,
                             std::size_t h) {
  return action.refreshes(k, h) ? state.mbs_aoi[h] : state.rsu_aoi(k, h) + 1;
}

}  // namespace aoicache
