#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "aoicache/error.hpp"
#include "aoicache/matrix.hpp"

namespace aoicache {

using Slots = std::int64_t;

struct StaticZipf {
  double exponent = 0.0;
  friend bool operator==(const StaticZipf&, const StaticZipf&) = default;
};

struct Empirical {
  std::int64_t window_slots = 100;
  friend bool operator==(const Empirical&, const Empirical&) = default;
};

using PopularityMode = std::variant<StaticZipf, Empirical>;

enum class RefreshPolicyKind { MdpIndex, MyopicGreedy, Threshold, AlwaysUpdate, NeverUpdate };

struct LyapunovService {
  friend bool operator==(const LyapunovService&, const LyapunovService&) = default;
};
struct AlwaysServe {
  friend bool operator==(const AlwaysServe&, const AlwaysServe&) = default;
};
struct PeriodicService {
  std::int64_t period = 1;
  friend bool operator==(const PeriodicService&, const PeriodicService&) = default;
};

using ServicePolicy = std::variant<LyapunovService, AlwaysServe, PeriodicService>;

constexpr std::string_view to_string(RefreshPolicyKind kind) noexcept {
  switch (kind) {
    case RefreshPolicyKind::MdpIndex: return "mdp_index";
    case RefreshPolicyKind::MyopicGreedy: return "myopic_greedy";
    case RefreshPolicyKind::Threshold: return "threshold";
    case RefreshPolicyKind::AlwaysUpdate: return "always_update";
    case RefreshPolicyKind::NeverUpdate: return "never_update";
  }
  return "unknown";
}

inline RefreshPolicyKind parse_refresh_policy(std::string_view name) {
  for (auto kind : {RefreshPolicyKind::MdpIndex, RefreshPolicyKind::MyopicGreedy,
                    RefreshPolicyKind::Threshold, RefreshPolicyKind::AlwaysUpdate,
                    RefreshPolicyKind::NeverUpdate}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorKind::UnknownKind, "unknown refresh policy '" + std::string(name) + "'");
}

inline std::string service_policy_name(const ServicePolicy& policy) {
  if (std::holds_alternative<LyapunovService>(policy)) return "lyapunov";
  if (std::holds_alternative<AlwaysServe>(policy)) return "always_serve";
  return "periodic(" + std::to_string(std::get<PeriodicService>(policy).period) + ")";
}

// Accepts "lyapunov", "always_serve", "periodic" (period 1) or "periodic(N)".
inline ServicePolicy parse_service_policy(std::string_view name) {
  if (name == "lyapunov") return LyapunovService{};
  if (name == "always_serve") return AlwaysServe{};
  if (name == "periodic") return PeriodicService{1};
  if (name.starts_with("periodic(") && name.ends_with(")")) {
    auto digits = name.substr(9, name.size() - 10);
    try {
      std::size_t used = 0;
      auto period = std::stoll(std::string(digits), &used);
      if (used == digits.size()) return PeriodicService{period};
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorKind::UnknownKind, "unknown service policy '" + std::string(name) + "'");
}

// Full experiment description. Field names mirror the JSON config keys.
struct SystemConfig {
  std::int64_t num_uvs = 1000;  // cap on simultaneously active vehicles
  std::size_t num_rsus = 1;
  std::size_t num_regions = 1;
  std::size_t regions_per_rsu = 1;
  std::vector<Slots> max_aoi{10};
  double aoi_weight = 1.0;
  Matrix<double> update_cost{1, 1, 0.0};
  double service_cost = 1.0;
  double service_rate = 1.0;
  double lyapunov_v = 1.0;
  double mbs_generation_prob = 1.0;
  double uv_arrival_rate = 0.0;
  double uv_speed = 1.0;
  PopularityMode popularity_mode = StaticZipf{0.0};
  std::int64_t horizon_slots = 1000;
  std::uint64_t seed = 0;
  RefreshPolicyKind policy = RefreshPolicyKind::MdpIndex;
  ServicePolicy service_policy = LyapunovService{};
  // Per-content MDP solver settings.
  double mdp_discount = 0.9;
  double mdp_epsilon = 1e-6;

  friend bool operator==(const SystemConfig&, const SystemConfig&) = default;
};

struct CoverageRange {
  std::size_t first = 0;  // inclusive
  std::size_t last = 0;   // exclusive

  std::size_t size() const noexcept { return last - first; }
  bool contains(std::size_t content) const noexcept { return content >= first && content < last; }
  friend bool operator==(const CoverageRange&, const CoverageRange&) = default;
};

inline const SystemConfig& validate_config(const SystemConfig& cfg) {
  if (cfg.num_rsus == 0 || cfg.regions_per_rsu == 0 ||
      cfg.num_regions != cfg.num_rsus * cfg.regions_per_rsu) {
    throw Error(ErrorKind::InvalidTopology,
                "num_regions (" + std::to_string(cfg.num_regions) + ") must equal num_rsus (" +
                    std::to_string(cfg.num_rsus) + ") x regions_per_rsu (" +
                    std::to_string(cfg.regions_per_rsu) + ")");
  }
  if (cfg.max_aoi.size() != cfg.num_regions) {
    throw Error(ErrorKind::LengthMismatch, "max_aoi must have num_regions entries");
  }
  for (std::size_t h = 0; h < cfg.max_aoi.size(); ++h) {
    if (cfg.max_aoi[h] < 1) {
      throw Error(ErrorKind::NonPositiveLimit, "max_aoi[" + std::to_string(h) + "] < 1");
    }
  }
  if (!(cfg.service_rate > 0.0) || !std::isfinite(cfg.service_rate)) {
    throw Error(ErrorKind::NonPositiveLimit, "service_rate must be > 0");
  }
  if (!(cfg.uv_speed > 0.0) || !std::isfinite(cfg.uv_speed)) {
    throw Error(ErrorKind::NonPositiveLimit, "uv_speed must be > 0");
  }
  auto nonneg = [](double v) { return v >= 0.0 && std::isfinite(v); };
  if (!nonneg(cfg.aoi_weight)) throw Error(ErrorKind::NegativeParameter, "aoi_weight < 0");
  if (!nonneg(cfg.lyapunov_v)) throw Error(ErrorKind::NegativeParameter, "lyapunov_v < 0");
  if (!nonneg(cfg.service_cost)) throw Error(ErrorKind::NegativeParameter, "service_cost < 0");
  if (!nonneg(cfg.uv_arrival_rate)) throw Error(ErrorKind::NegativeParameter, "uv_arrival_rate < 0");
  if (cfg.num_uvs < 0) throw Error(ErrorKind::NegativeParameter, "num_uvs < 0");
  if (cfg.horizon_slots < 0) throw Error(ErrorKind::NegativeParameter, "horizon_slots < 0");
  if (cfg.update_cost.rows() != cfg.num_rsus || cfg.update_cost.cols() != cfg.num_regions) {
    throw Error(ErrorKind::LengthMismatch, "update_cost must be num_rsus x num_regions");
  }
  for (std::size_t k = 0; k < cfg.num_rsus; ++k) {
    for (double c : cfg.update_cost.row(k)) {
      if (!nonneg(c)) throw Error(ErrorKind::NegativeParameter, "update_cost entry < 0");
    }
  }
  if (!(cfg.mbs_generation_prob >= 0.0 && cfg.mbs_generation_prob <= 1.0)) {
    throw Error(ErrorKind::InvalidParameter, "mbs_generation_prob must lie in [0, 1]");
  }
  if (const auto* zipf = std::get_if<StaticZipf>(&cfg.popularity_mode)) {
    if (!(zipf->exponent >= 0.0) || !std::isfinite(zipf->exponent)) {
      throw Error(ErrorKind::BadPopularityMode, "Zipf exponent must be >= 0");
    }
  } else if (std::get<Empirical>(cfg.popularity_mode).window_slots < 1) {
    throw Error(ErrorKind::BadPopularityMode, "empirical window_slots must be >= 1");
  }
  if (const auto* periodic = std::get_if<PeriodicService>(&cfg.service_policy)) {
    if (periodic->period < 1) throw Error(ErrorKind::BadPeriod, "periodic service period < 1");
  }
  if (!(cfg.mdp_discount >= 0.0 && cfg.mdp_discount < 1.0)) {
    throw Error(ErrorKind::BadDiscount, "mdp_discount must lie in [0, 1)");
  }
  if (!(cfg.mdp_epsilon > 0.0) || !std::isfinite(cfg.mdp_epsilon)) {
    throw Error(ErrorKind::BadEpsilon, "mdp_epsilon must be > 0");
  }
  return cfg;
}

// RSU k covers regions [k * L', (k + 1) * L').
inline CoverageRange coverage_of(std::size_t rsu_id, const SystemConfig& cfg) {
  if (rsu_id >= cfg.num_rsus) {
    throw Error(ErrorKind::IndexOutOfRange, "rsu_id " + std::to_string(rsu_id) + " >= num_rsus " +
                                                std::to_string(cfg.num_rsus));
  }
  return {rsu_id * cfg.regions_per_rsu, (rsu_id + 1) * cfg.regions_per_rsu};
}

// The RSU whose coverage contains a content (region) index.
inline std::size_t rsu_covering(std::size_t content, const SystemConfig& cfg) {
  if (content >= cfg.num_regions) {
    throw Error(ErrorKind::IndexOutOfRange, "content index out of range");
  }
  return content / cfg.regions_per_rsu;
}

}  // namespace aoicache
