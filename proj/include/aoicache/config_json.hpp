#pragma once

#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "aoicache/config.hpp"

namespace aoicache {

using Json = nlohmann::json;

namespace detail {

inline void require_known_keys(const Json& j, const std::set<std::string>& known,
                               std::string_view where) {
  if (!j.is_object()) {
    throw Error(ErrorKind::ParseError, std::string(where) + " must be a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) {
      throw Error(ErrorKind::UnknownKey, "unknown key '" + key + "' in " + std::string(where));
    }
  }
}

template <typename T>
T get_field(const Json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("bad value for '") + key + "': " + e.what());
  }
}

}  // namespace detail

inline Json popularity_mode_to_json(const PopularityMode& mode) {
  if (const auto* zipf = std::get_if<StaticZipf>(&mode)) {
    return {{"kind", "static_zipf"}, {"exponent", zipf->exponent}};
  }
  return {{"kind", "empirical"}, {"window_slots", std::get<Empirical>(mode).window_slots}};
}

inline PopularityMode popularity_mode_from_json(const Json& j) {
  auto kind = detail::get_field<std::string>(j, "kind");
  if (kind == "static_zipf") {
    detail::require_known_keys(j, {"kind", "exponent"}, "popularity_mode");
    return StaticZipf{detail::get_field<double>(j, "exponent")};
  }
  if (kind == "empirical") {
    detail::require_known_keys(j, {"kind", "window_slots"}, "popularity_mode");
    return Empirical{detail::get_field<std::int64_t>(j, "window_slots")};
  }
  throw Error(ErrorKind::BadPopularityMode, "unknown popularity_mode kind '" + kind + "'");
}

inline Json service_policy_to_json(const ServicePolicy& policy) {
  if (const auto* periodic = std::get_if<PeriodicService>(&policy)) {
    return {{"kind", "periodic"}, {"period", periodic->period}};
  }
  return service_policy_name(policy);
}

inline ServicePolicy service_policy_from_json(const Json& j) {
  if (j.is_string()) return parse_service_policy(j.get<std::string>());
  auto kind = detail::get_field<std::string>(j, "kind");
  if (kind == "periodic") {
    detail::require_known_keys(j, {"kind", "period"}, "service_policy");
    return PeriodicService{detail::get_field<std::int64_t>(j, "period")};
  }
  detail::require_known_keys(j, {"kind"}, "service_policy");
  return parse_service_policy(kind);
}

inline Json to_json(const SystemConfig& cfg) {
  Json cost = Json::array();
  for (std::size_t k = 0; k < cfg.update_cost.rows(); ++k) {
    auto row = cfg.update_cost.row(k);
    cost.push_back(Json(std::vector<double>(row.begin(), row.end())));
  }
  return {
      {"num_uvs", cfg.num_uvs},
      {"num_rsus", cfg.num_rsus},
      {"num_regions", cfg.num_regions},
      {"regions_per_rsu", cfg.regions_per_rsu},
      {"max_aoi", cfg.max_aoi},
      {"aoi_weight", cfg.aoi_weight},
      {"update_cost", cost},
      {"service_cost", cfg.service_cost},
      {"service_rate", cfg.service_rate},
      {"lyapunov_v", cfg.lyapunov_v},
      {"mbs_generation_prob", cfg.mbs_generation_prob},
      {"uv_arrival_rate", cfg.uv_arrival_rate},
      {"uv_speed", cfg.uv_speed},
      {"popularity_mode", popularity_mode_to_json(cfg.popularity_mode)},
      {"horizon_slots", cfg.horizon_slots},
      {"seed", cfg.seed},
      {"policy", std::string(to_string(cfg.policy))},
      {"service_policy", service_policy_to_json(cfg.service_policy)},
      {"mdp_discount", cfg.mdp_discount},
      {"mdp_epsilon", cfg.mdp_epsilon},
  };
}

// Strict parse: every SystemConfig key is required except the solver settings, and unknown
// keys are rejected. The result is not validated; call validate_config.
inline SystemConfig config_from_json(const Json& j) {
  detail::require_known_keys(
      j,
      {"num_uvs", "num_rsus", "num_regions", "regions_per_rsu", "max_aoi", "aoi_weight",
       "update_cost", "service_cost", "service_rate", "lyapunov_v", "mbs_generation_prob",
       "uv_arrival_rate", "uv_speed", "popularity_mode", "horizon_slots", "seed", "policy",
       "service_policy", "mdp_discount", "mdp_epsilon"},
      "config");
  using detail::get_field;
  SystemConfig cfg;
  cfg.num_uvs = get_field<std::int64_t>(j, "num_uvs");
  cfg.num_rsus = get_field<std::size_t>(j, "num_rsus");
  cfg.num_regions = get_field<std::size_t>(j, "num_regions");
  cfg.regions_per_rsu = get_field<std::size_t>(j, "regions_per_rsu");
  cfg.max_aoi = get_field<std::vector<Slots>>(j, "max_aoi");
  cfg.aoi_weight = get_field<double>(j, "aoi_weight");

  auto rows = get_field<std::vector<std::vector<double>>>(j, "update_cost");
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  cfg.update_cost = Matrix<double>(rows.size(), cols);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].size() != cols) throw Error(ErrorKind::LengthMismatch, "ragged update_cost");
    for (std::size_t h = 0; h < cols; ++h) cfg.update_cost(k, h) = rows[k][h];
  }

  cfg.service_cost = get_field<double>(j, "service_cost");
  cfg.service_rate = get_field<double>(j, "service_rate");
  cfg.lyapunov_v = get_field<double>(j, "lyapunov_v");
  cfg.mbs_generation_prob = get_field<double>(j, "mbs_generation_prob");
  cfg.uv_arrival_rate = get_field<double>(j, "uv_arrival_rate");
  cfg.uv_speed = get_field<double>(j, "uv_speed");
  if (!j.contains("popularity_mode")) throw Error(ErrorKind::ParseError, "missing key 'popularity_mode'");
  cfg.popularity_mode = popularity_mode_from_json(j.at("popularity_mode"));
  cfg.horizon_slots = get_field<std::int64_t>(j, "horizon_slots");
  cfg.seed = get_field<std::uint64_t>(j, "seed");
  cfg.policy = parse_refresh_policy(get_field<std::string>(j, "policy"));
  if (!j.contains("service_policy")) throw Error(ErrorKind::ParseError, "missing key 'service_policy'");
  cfg.service_policy = service_policy_from_json(j.at("service_policy"));
  if (j.contains("mdp_discount")) cfg.mdp_discount = get_field<double>(j, "mdp_discount");
  if (j.contains("mdp_epsilon")) cfg.mdp_epsilon = get_field<double>(j, "mdp_epsilon");
  return cfg;
}

inline SystemConfig parse_config(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return config_from_json(j);
}

inline std::string serialize_config(const SystemConfig& cfg) { return to_json(cfg).dump(2) + "\n"; }

inline SystemConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoFailure, "cannot open config '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return validate_config(parse_config(buffer.str()));
}

// FNV-1a over the canonical compact JSON; identifies a config in summaries.
inline std::string config_digest(const SystemConfig& cfg) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_json(cfg).dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, hash >>= 4) out[static_cast<std::size_t>(i)] = kHex[hash & 0xF];
  return out;
}

}  // namespace aoicache
