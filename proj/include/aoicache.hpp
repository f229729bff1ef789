#pragma once

#include "aoicache/aoi_dynamics.hpp"
#include "aoicache/config.hpp"
#include "aoicache/config_json.hpp"
#include "aoicache/content_mdp.hpp"
#include "aoicache/error.hpp"
#include "aoicache/lyapunov.hpp"
#include "aoicache/matrix.hpp"
#include "aoicache/popularity.hpp"
#include "aoicache/presets.hpp"
#include "aoicache/refresh_policy.hpp"
#include "aoicache/reward.hpp"
#include "aoicache/rng.hpp"
#include "aoicache/simulator.hpp"
#include "aoicache/state.hpp"
#include "aoicache/summary.hpp"
#include "aoicache/trace_io.hpp"
