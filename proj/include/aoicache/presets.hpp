#pragma once

#include <map>
#include <string>

#include "aoicache/config.hpp"

namespace aoicache {

// Per-region AoI limits shared by the presets; regions differ in how fast their
// road conditions go stale.
inline std::vector<Slots> preset_limits(std::size_t regions) {
  static constexpr Slots kLimits[] = {10, 12, 8, 14, 9, 11, 15, 10, 13, 8,
                                      12, 9, 16, 10, 11, 14, 8, 13, 9, 12};
  std::vector<Slots> out(regions);
  for (std::size_t h = 0; h < regions; ++h) out[h] = kLimits[h % std::size(kLimits)];
  return out;
}

// Cache-refresh scenario: 4 RSUs with 5 cached contents each, 1000 slots.
inline SystemConfig fig1_preset() {
  SystemConfig cfg;
  cfg.num_uvs = 1000;
  cfg.num_rsus = 4;
  cfg.regions_per_rsu = 5;
  cfg.num_regions = 20;
  cfg.max_aoi = preset_limits(cfg.num_regions);
  cfg.aoi_weight = 1.0;
  cfg.update_cost = Matrix<double>(cfg.num_rsus, cfg.num_regions, 1.0);
  cfg.service_cost = 1.0;
  cfg.service_rate = 1.0;
  cfg.lyapunov_v = 10.0;
  cfg.mbs_generation_prob = 1.0;
  cfg.uv_arrival_rate = 0.25;
  cfg.uv_speed = 2.5;
  cfg.popularity_mode = StaticZipf{0.0};
  cfg.horizon_slots = 1000;
  cfg.seed = 1;
  cfg.policy = RefreshPolicyKind::MdpIndex;
  cfg.service_policy = LyapunovService{};
  return cfg;
}

// Service scenario: the road covered by 5 RSUs with 4 regions each.
inline SystemConfig fig2_preset() {
  SystemConfig cfg = fig1_preset();
  cfg.num_rsus = 5;
  cfg.regions_per_rsu = 4;
  cfg.num_regions = 20;
  cfg.max_aoi = preset_limits(cfg.num_regions);
  cfg.update_cost = Matrix<double>(cfg.num_rsus, cfg.num_regions, 1.0);
  cfg.uv_arrival_rate = 0.25;
  cfg.uv_speed = 2.0;
  cfg.service_rate = 1.0;
  cfg.service_cost = 1.0;
  cfg.lyapunov_v = 10.0;
  return cfg;
}

inline std::map<std::string, SystemConfig> presets() {
  return {{"fig1", fig1_preset()}, {"fig2", fig2_preset()}};
}

}  // namespace aoicache
