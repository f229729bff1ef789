#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "aoicache/lyapunov.hpp"
#include "aoicache/popularity.hpp"
#include "aoicache/refresh_policy.hpp"

namespace aoicache {

struct WorldState {
  std::int64_t slot = 0;
  CacheState cache;
  std::vector<ServiceQueue> queues;
  std::vector<Uv> uvs;  // vehicles on the road, served or not
  RngStreams rng{0};
  double cumulative_reward = 0.0;
  std::int64_t next_uv_id = 0;

  // Request accounting since slot 0.
  std::int64_t requests_issued = 0;
  std::int64_t requests_served = 0;
  std::int64_t requests_dropped = 0;

  std::int64_t pending_requests() const {
    return std::count_if(uvs.begin(), uvs.end(), [](const Uv& uv) { return !uv.served; });
  }
};

// Attempts at drawing a random initial cache state whose limits are all still meetable.
inline constexpr int kInitialStateAttempts = 1000;

// Random initial AoIs: each covered copy uniform in {1..A^max_h}, its master uniform
// in {1..copy AoI}. A draw is kept once every RSU can still refresh all of its copies
// before they exceed their limits; a bounded number of redraws is attempted.
inline CacheState random_initial_cache(const SystemConfig& cfg, CounterRng& rng) {
  auto state = CacheState::uniform(cfg, 1);
  state.popularity = initial_popularity(cfg);
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    for (int attempt = 0; attempt < kInitialStateAttempts; ++attempt) {
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        std::uniform_int_distribution<Slots> copy_age(1, cfg.max_aoi[h]);
        state.rsu_aoi(k, h) = copy_age(rng);
        std::uniform_int_distribution<Slots> master_age(1, state.rsu_aoi(k, h));
        state.mbs_aoi[h] = master_age(rng);
      }
      if (deadlines_feasible(state, k, cfg, 0)) break;
    }
  }
  return state;
}

class Simulator {
 public:
  // Random initial state drawn from the config seed.
  explicit Simulator(const SystemConfig& cfg) : Simulator(cfg, std::nullopt) {}

  // Explicit initial cache state; popularity in `initial` is kept as given.
  Simulator(const SystemConfig& cfg, const CacheState& initial) : Simulator(cfg, std::optional(initial)) {}

  const WorldState& world() const noexcept { return world_; }
  const SystemConfig& config() const noexcept { return cfg_; }
  const PolicyTable& policies() const noexcept { return table_; }

  SlotTrace step() {
    const std::int64_t t = world_.slot + 1;
    SlotTrace trace;
    trace.slot = t;

    // (1) content generation at the MBS.
    std::vector<bool> events(cfg_.num_regions);
    for (std::size_t h = 0; h < events.size(); ++h) {
      events[h] = world_.rng.content_generation.uniform01() < cfg_.mbs_generation_prob;
    }
    world_.cache.mbs_aoi = advance_mbs_aoi(world_.cache.mbs_aoi, events);

    // (2) cache refresh.
    const UpdateAction action = refresh_action();
    const RewardBreakdown reward = stage_reward(world_.cache, action, cfg_);
    world_.cache = advance_rsu_aoi(world_.cache, action, cfg_);
    trace.updates_issued = action.updates_issued();
    trace.aoi_sum.assign(cfg_.num_rsus, 0);
    for (std::size_t k = 0; k < cfg_.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg_);
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        const Slots a = world_.cache.rsu_aoi(k, h);
        trace.rsu_aoi_samples.push_back(a);
        trace.aoi_sum[k] += a;
        if (a > cfg_.max_aoi[h]) ++trace.aoi_violations;
      }
    }

    // (3) vehicle arrivals at the road entrance.
    std::poisson_distribution<std::int64_t> arrivals(cfg_.uv_arrival_rate);
    const std::int64_t arriving = cfg_.uv_arrival_rate > 0.0 ? arrivals(world_.rng.uv_arrivals) : 0;
    const std::size_t previously_on_road = world_.uvs.size();
    for (std::int64_t i = 0; i < arriving; ++i) {
      if (static_cast<std::int64_t>(world_.uvs.size()) >= cfg_.num_uvs) {
        ++trace.blocked_arrivals;
        continue;
      }
      Uv uv;
      uv.id = world_.next_uv_id++;
      uv.position = 0.0;
      uv.requested_content = sample_discrete(request_probs_, world_.rng.requests);
      uv.issued_slot = t;
      uv.current_rsu = 0;
      world_.uvs.push_back(uv);
      ++trace.new_requests;
      ++world_.requests_issued;
    }

    // (4) mobility; the request counts feed the empirical popularity estimate.
    Matrix<std::int64_t> request_counts(cfg_.num_rsus, cfg_.num_regions, 0);
    const double road_end = static_cast<double>(cfg_.num_regions);
    std::vector<Uv> on_road;
    on_road.reserve(world_.uvs.size());
    for (std::size_t i = 0; i < world_.uvs.size(); ++i) {
      Uv uv = world_.uvs[i];
      const bool is_new = i >= previously_on_road;
      uv.position += cfg_.uv_speed;
      if (uv.position >= road_end) {
        if (!uv.served) {
          ++trace.dropped;
          ++world_.requests_dropped;
        }
        continue;
      }
      const std::size_t rsu = static_cast<std::size_t>(uv.position) / cfg_.regions_per_rsu;
      const bool entered = is_new || rsu != uv.current_rsu;
      if (!is_new && rsu != uv.current_rsu && !uv.served) ++trace.handoffs;
      uv.current_rsu = rsu;
      if (entered && coverage_of(rsu, cfg_).contains(uv.requested_content)) {
        ++request_counts(rsu, uv.requested_content);
      }
      on_road.push_back(uv);
    }
    world_.uvs = std::move(on_road);

    // (5) + (6) per-RSU queue arrivals and service.
    trace.backlog.assign(cfg_.num_rsus, 0.0);
    trace.served.assign(cfg_.num_rsus, 0);
    const auto batch = static_cast<std::int64_t>(std::ceil(cfg_.service_rate));
    for (std::size_t k = 0; k < cfg_.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg_);
      std::vector<Uv*> pending;
      for (auto& uv : world_.uvs) {
        if (!uv.served && uv.current_rsu == k) pending.push_back(&uv);
      }
      const auto queue_arrivals = static_cast<double>(pending.size());

      auto& queue = world_.queues[k];
      const ServiceDecision decision = decide(cfg_.service_policy, queue, t, cfg_);
      if (decision.serves()) {
        ++trace.service_actions;
        trace.service_cost += cfg_.service_cost;
        std::stable_sort(pending.begin(), pending.end(), [](const Uv* a, const Uv* b) {
          return a->issued_slot != b->issued_slot ? a->issued_slot < b->issued_slot : a->id < b->id;
        });
        std::int64_t served = 0;
        for (Uv* uv : pending) {
          if (served >= batch) break;
          if (!cov.contains(uv->requested_content)) continue;
          if (!aoi_admissible(k, uv->requested_content, world_.cache, cfg_)) continue;
          uv->served = true;
          ++served;
        }
        trace.served[k] = served;
        trace.served_count += served;
        world_.requests_served += served;
      }
      for (Uv* uv : pending) {
        if (uv->served) continue;
        ++uv->wait_slots;
        if (!cov.contains(uv->requested_content)) ++trace.misses;
      }
      queue = queue_step(queue, queue_arrivals, decision, cfg_);
      trace.backlog[k] = queue.backlog;
    }
    trace.queued = world_.pending_requests();

    // (7) popularity update.
    if (empirical_) {
      empirical_->push_slot(std::move(request_counts));
      world_.cache.popularity = empirical_->popularity(cfg_);
      if (cfg_.policy == RefreshPolicyKind::MdpIndex) table_.resolve_drifted(world_.cache.popularity, cfg_);
    }

    // (8) accounting.
    trace.aoi_utility = reward.aoi_utility;
    trace.mbs_cost = reward.mbs_cost;
    trace.reward = reward.total;
    world_.cumulative_reward += reward.total;
    trace.cumulative_reward = world_.cumulative_reward;
    world_.slot = t;
    return trace;
  }

 private:
  Simulator(const SystemConfig& cfg, std::optional<CacheState> initial)
      : cfg_(validate_config(cfg)) {
    world_.rng = RngStreams(cfg_.seed);
    world_.cache = initial ? *initial : random_initial_cache(cfg_, world_.rng.initial_aoi);
    check_state(world_.cache, cfg_);
    for (std::size_t k = 0; k < cfg_.num_rsus; ++k) world_.queues.push_back({0.0, k});
    request_probs_ = request_distribution(cfg_);
    if (const auto* emp = std::get_if<Empirical>(&cfg_.popularity_mode)) {
      empirical_.emplace(cfg_, emp->window_slots);
    }
    if (cfg_.policy == RefreshPolicyKind::MdpIndex) {
      table_ = PolicyTable::solve_all(world_.cache.popularity, cfg_);
    }
  }

  UpdateAction refresh_action() const {
    if (cfg_.policy == RefreshPolicyKind::MdpIndex) return select_updates(world_.cache, table_, cfg_);
    return baseline_policy(cfg_.policy, world_.cache, cfg_);
  }

  SystemConfig cfg_;
  WorldState world_;
  PolicyTable table_;
  std::vector<double> request_probs_;
  std::optional<EmpiricalPopularity> empirical_;
};

inline std::vector<SlotTrace> run(const SystemConfig& cfg) {
  Simulator sim(cfg);
  std::vector<SlotTrace> traces;
  traces.reserve(static_cast<std::size_t>(cfg.horizon_slots));
  for (std::int64_t t = 0; t < cfg.horizon_slots; ++t) traces.push_back(sim.step());
  return traces;
}

}  // namespace aoicache
