#pragma once

#include <algorithm>
#include <vector>

#include "aoicache/config_json.hpp"
#include "aoicache/state.hpp"

namespace aoicache {

struct RunSummary {
  std::int64_t slots = 0;
  std::vector<double> mean_backlog;  // per RSU
  std::vector<double> max_backlog;   // per RSU
  double mean_mbs_cost = 0.0;
  double mean_service_cost = 0.0;
  double mean_cost = 0.0;  // MBS refresh cost + RSU service cost, per slot
  double mean_reward = 0.0;
  std::vector<double> mean_aoi;  // per covered copy, trace column order
  std::vector<Slots> max_aoi;    // per covered copy, trace column order
  std::int64_t served_count = 0;
  std::int64_t drop_count = 0;
  std::int64_t violation_count = 0;  // (slot, copy) samples above their limit
  std::string config_digest;
  std::uint64_t seed = 0;
};

inline RunSummary summarize(const std::vector<SlotTrace>& traces, const SystemConfig& cfg) {
  if (traces.empty()) throw Error(ErrorKind::EmptyTraces, "cannot summarize an empty trace list");
  RunSummary s;
  s.slots = static_cast<std::int64_t>(traces.size());
  s.mean_backlog.assign(cfg.num_rsus, 0.0);
  s.max_backlog.assign(cfg.num_rsus, 0.0);
  const std::size_t samples = cfg.num_rsus * cfg.regions_per_rsu;
  s.mean_aoi.assign(samples, 0.0);
  s.max_aoi.assign(samples, 0);
  for (const auto& tr : traces) {
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      s.mean_backlog[k] += tr.backlog[k];
      s.max_backlog[k] = std::max(s.max_backlog[k], tr.backlog[k]);
    }
    for (std::size_t i = 0; i < samples; ++i) {
      const Slots a = tr.rsu_aoi_samples[i];
      s.mean_aoi[i] += static_cast<double>(a);
      s.max_aoi[i] = std::max(s.max_aoi[i], a);
      // Sample i is content i for the tiled layout.
      if (a > cfg.max_aoi[i]) ++s.violation_count;
    }
    s.mean_mbs_cost += tr.mbs_cost;
    s.mean_service_cost += tr.service_cost;
    s.mean_reward += tr.reward;
    s.served_count += tr.served_count;
    s.drop_count += tr.dropped;
  }
  const auto n = static_cast<double>(traces.size());
  for (auto& v : s.mean_backlog) v /= n;
  for (auto& v : s.mean_aoi) v /= n;
  s.mean_mbs_cost /= n;
  s.mean_service_cost /= n;
  s.mean_reward /= n;
  s.mean_cost = s.mean_mbs_cost + s.mean_service_cost;
  s.config_digest = config_digest(cfg);
  s.seed = cfg.seed;
  return s;
}

inline Json to_json(const RunSummary& s) {
  return {
      {"slots", s.slots},
      {"mean_backlog", s.mean_backlog},
      {"max_backlog", s.max_backlog},
      {"mean_mbs_cost", s.mean_mbs_cost},
      {"mean_service_cost", s.mean_service_cost},
      {"mean_cost", s.mean_cost},
      {"mean_reward", s.mean_reward},
      {"mean_aoi", s.mean_aoi},
      {"max_aoi", s.max_aoi},
      {"served_count", s.served_count},
      {"drop_count", s.drop_count},
      {"violation_count", s.violation_count},
      {"config_digest", s.config_digest},
      {"seed", s.seed},
  };
}

}  // namespace aoicache
