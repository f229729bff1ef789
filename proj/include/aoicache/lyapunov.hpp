#pragma once

#include <algorithm>

#include "aoicache/state.hpp"

namespace aoicache {

enum class ServiceAction { Idle, Serve };

struct ServiceDecision {
  ServiceAction alpha = ServiceAction::Idle;
  double objective_serve = 0.0;  // V * C(serve) - Q * b(serve)
  double objective_idle = 0.0;   // V * C(idle) - Q * b(idle), always 0

  bool serves() const noexcept { return alpha == ServiceAction::Serve; }
};

inline double departure(ServiceAction alpha, const SystemConfig& cfg) noexcept {
  return alpha == ServiceAction::Serve ? cfg.service_rate : 0.0;
}

inline double service_cost_of(ServiceAction alpha, const SystemConfig& cfg) noexcept {
  return alpha == ServiceAction::Serve ? cfg.service_cost : 0.0;
}

// Drift-plus-penalty: pick the action minimising V * C(alpha) - Q * b(alpha).
// Idle wins ties, so this serves iff Q > V * service_cost / service_rate.
inline ServiceDecision decide_service(const ServiceQueue& q, const SystemConfig& cfg) {
  ServiceDecision d;
  d.objective_idle = cfg.lyapunov_v * service_cost_of(ServiceAction::Idle, cfg) -
                     q.backlog * departure(ServiceAction::Idle, cfg);
  d.objective_serve = cfg.lyapunov_v * service_cost_of(ServiceAction::Serve, cfg) -
                      q.backlog * departure(ServiceAction::Serve, cfg);
  d.alpha = d.objective_serve < d.objective_idle ? ServiceAction::Serve : ServiceAction::Idle;
  return d;
}

// Lindley recursion: Q' = max(Q - b(alpha), 0) + arrivals.
inline ServiceQueue queue_step(const ServiceQueue& q, double arrivals, const ServiceDecision& decision,
                               const SystemConfig& cfg) {
  if (!(arrivals >= 0.0)) throw Error(ErrorKind::NegativeArrivals, "arrivals must be >= 0");
  return {std::max(q.backlog - departure(decision.alpha, cfg), 0.0) + arrivals, q.rsu_id};
}

// Per-content AoI gate: a request may be served only from a copy within its limit.
inline bool aoi_admissible(std::size_t rsu_id, std::size_t content, const CacheState& state,
                           const SystemConfig& cfg) {
  if (!coverage_of(rsu_id, cfg).contains(content)) {
    throw Error(ErrorKind::OutOfCoverage, "content " + std::to_string(content) +
                                              " is not cached by RSU " + std::to_string(rsu_id));
  }
  return state.rsu_aoi(rsu_id, content) <= cfg.max_aoi[content];
}

inline ServiceDecision service_baseline(const ServicePolicy& kind, const ServiceQueue& q,
                                        std::int64_t slot, const SystemConfig& cfg) {
  ServiceDecision d;
  d.objective_serve = cfg.lyapunov_v * cfg.service_cost - q.backlog * cfg.service_rate;
  bool serve = false;
  if (std::holds_alternative<AlwaysServe>(kind)) {
    serve = q.backlog > 0.0;
  } else if (const auto* periodic = std::get_if<PeriodicService>(&kind)) {
    if (periodic->period < 1) throw Error(ErrorKind::BadPeriod, "period must be >= 1");
    serve = slot % periodic->period == 0 && q.backlog > 0.0;
  } else {
    throw Error(ErrorKind::UnknownKind, "lyapunov is not a baseline service policy");
  }
  d.alpha = serve ? ServiceAction::Serve : ServiceAction::Idle;
  return d;
}

inline ServiceDecision decide(const ServicePolicy& policy, const ServiceQueue& q, std::int64_t slot,
                              const SystemConfig& cfg) {
  if (std::holds_alternative<LyapunovService>(policy)) return decide_service(q, cfg);
  return service_baseline(policy, q, slot, cfg);
}

}  // namespace aoicache
