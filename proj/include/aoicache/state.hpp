#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "aoicache/config.hpp"
#include "aoicache/matrix.hpp"

namespace aoicache {

// The MDP state: AoI of every cached copy, of every MBS master, and request popularity.
// Entries of rsu_aoi/popularity outside an RSU's coverage are unused and held at 0.
struct CacheState {
  Matrix<Slots> rsu_aoi;
  std::vector<Slots> mbs_aoi;
  Matrix<double> popularity;

  // All AoIs at `aoi`, popularity uniform over each coverage window.
  static CacheState uniform(const SystemConfig& cfg, Slots aoi = 1) {
    CacheState s{Matrix<Slots>(cfg.num_rsus, cfg.num_regions, 0),
                 std::vector<Slots>(cfg.num_regions, aoi),
                 Matrix<double>(cfg.num_rsus, cfg.num_regions, 0.0)};
    for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
      const auto cov = coverage_of(k, cfg);
      for (std::size_t h = cov.first; h < cov.last; ++h) {
        s.rsu_aoi(k, h) = aoi;
        s.popularity(k, h) = 1.0 / static_cast<double>(cov.size());
      }
    }
    return s;
  }

  friend bool operator==(const CacheState&, const CacheState&) = default;
};

// Throws ConstraintViolation when a CacheState invariant is broken.
inline void check_state(const CacheState& s, const SystemConfig& cfg) {
  if (s.rsu_aoi.rows() != cfg.num_rsus || s.rsu_aoi.cols() != cfg.num_regions ||
      s.popularity.rows() != cfg.num_rsus || s.popularity.cols() != cfg.num_regions ||
      s.mbs_aoi.size() != cfg.num_regions) {
    throw Error(ErrorKind::LengthMismatch, "cache state shape does not match config");
  }
  for (Slots a : s.mbs_aoi) {
    if (a < 1) throw Error(ErrorKind::ConstraintViolation, "MBS AoI below 1");
  }
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    double total = 0.0;
    for (std::size_t h = cov.first; h < cov.last; ++h) {
      if (s.rsu_aoi(k, h) < s.mbs_aoi[h]) {
        throw Error(ErrorKind::ConstraintViolation, "RSU copy fresher than MBS master");
      }
      if (s.popularity(k, h) < 0.0) throw Error(ErrorKind::ConstraintViolation, "negative popularity");
      total += s.popularity(k, h);
    }
    if (std::abs(total - 1.0) > 1e-9) {
      throw Error(ErrorKind::ConstraintViolation, "popularity row does not sum to 1");
    }
  }
}

// x^k_h(t): which (RSU, content) copies are refreshed this slot.
struct UpdateAction {
  Matrix<std::uint8_t> x;

  static UpdateAction none(const SystemConfig& cfg) {
    return {Matrix<std::uint8_t>(cfg.num_rsus, cfg.num_regions, 0)};
  }

  bool refreshes(std::size_t k, std::size_t h) const { return x(k, h) != 0; }

  std::int64_t updates_issued() const {
    std::int64_t n = 0;
    for (std::size_t k = 0; k < x.rows(); ++k) {
      for (auto v : x.row(k)) n += v != 0;
    }
    return n;
  }

  friend bool operator==(const UpdateAction&, const UpdateAction&) = default;
};

// At most one refresh per RSU, and only inside that RSU's coverage.
inline void check_action(const UpdateAction& action, const SystemConfig& cfg) {
  if (action.x.rows() != cfg.num_rsus || action.x.cols() != cfg.num_regions) {
    throw Error(ErrorKind::LengthMismatch, "action shape does not match config");
  }
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    const auto cov = coverage_of(k, cfg);
    int row_sum = 0;
    for (std::size_t h = 0; h < cfg.num_regions; ++h) {
      if (action.x(k, h) == 0) continue;
      if (!cov.contains(h)) {
        throw Error(ErrorKind::ConstraintViolation,
                    "RSU " + std::to_string(k) + " refreshes uncovered content " + std::to_string(h));
      }
      ++row_sum;
    }
    if (row_sum > 1) {
      throw Error(ErrorKind::ConstraintViolation,
                  "RSU " + std::to_string(k) + " refreshes more than one content in a slot");
    }
  }
}

// Q[t] for one RSU, in request-slots.
struct ServiceQueue {
  double backlog = 0.0;
  std::size_t rsu_id = 0;
  friend bool operator==(const ServiceQueue&, const ServiceQueue&) = default;
};

struct Uv {
  std::int64_t id = 0;
  double position = 0.0;
  std::size_t requested_content = 0;
  std::int64_t wait_slots = 0;
  std::int64_t issued_slot = 0;
  bool served = false;
  std::size_t current_rsu = 0;
  friend bool operator==(const Uv&, const Uv&) = default;
};

// One slot of simulator output. The first block maps onto the trace CSV columns;
// the rest is bookkeeping used by summaries and invariant checks.
struct SlotTrace {
  std::int64_t slot = 0;
  double reward = 0.0;
  double aoi_utility = 0.0;
  double mbs_cost = 0.0;
  double cumulative_reward = 0.0;
  std::int64_t updates_issued = 0;
  std::vector<Slots> rsu_aoi_samples;  // every covered copy, RSU-major, coverage order
  std::vector<double> backlog;          // per RSU, after the slot's queue step
  std::vector<std::int64_t> served;     // requests served per RSU this slot

  std::int64_t served_count = 0;
  std::int64_t service_actions = 0;  // RSUs that executed a serve decision
  double service_cost = 0.0;
  std::int64_t new_requests = 0;
  std::int64_t blocked_arrivals = 0;
  std::int64_t dropped = 0;  // unserved vehicles that left the road this slot
  std::int64_t queued = 0;   // unserved vehicles still on the road after the slot
  std::int64_t misses = 0;   // queued requests whose content the covering RSU does not cache
  std::int64_t handoffs = 0;
  std::int64_t aoi_violations = 0;
  std::vector<Slots> aoi_sum;  // per RSU sum of covered AoIs, after refresh

  friend bool operator==(const SlotTrace&, const SlotTrace&) = default;
};

}  // namespace aoicache
