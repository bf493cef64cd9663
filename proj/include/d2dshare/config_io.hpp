#pragma once

// Scenario config file handling (JSON, versioned schema). Unknown keys are
// hard errors so a run can never silently ignore a typo.

#include <fstream>
#include <set>
#include <string>

#include <json.hpp>

#include "d2dshare/config.hpp"

namespace d2dshare {

inline constexpr int kConfigSchemaVersion = 1;

namespace detail {

inline const std::set<std::string>& known_config_keys() {
    static const std::set<std::string> keys = {
        "schema_version", "num_tenants",    "cell_radius_m",     "max_d2d_range_m",
        "num_cues",       "num_d2d_links",  "cue_split",         "rb_pool_sizes",
        "cue_utilization", "p_cue_dbm",     "p_due_dbm",         "d2d_initiator_tenant",
        "l_max",
        "gamma_th_db",    "gamma_tilde_th_db", "r_th_bps",       "shadowing_sigma_db",
        "noise_psd_dbm_hz", "rb_bandwidth_hz", "intercell_interference_w", "rng_seed",
    };
    return keys;
}

}  // namespace detail

inline nlohmann::json config_to_json(const ScenarioConfig& cfg) {
    nlohmann::json j;
    j["schema_version"] = kConfigSchemaVersion;
    j["num_tenants"] = cfg.num_tenants;
    j["cell_radius_m"] = cfg.cell_radius_m;
    j["max_d2d_range_m"] = cfg.max_d2d_range_m;
    j["num_cues"] = cfg.num_cues;
    j["num_d2d_links"] = cfg.num_d2d_links;
    j["cue_split"] = cfg.cue_split;
    j["rb_pool_sizes"] = cfg.rb_pool_sizes;
    j["cue_utilization"] = cfg.cue_utilization;
    j["p_cue_dbm"] = cfg.p_cue_dbm;
    j["p_due_dbm"] = cfg.p_due_dbm;
    j["d2d_initiator_tenant"] = cfg.d2d_initiator_tenant;
    j["l_max"] = cfg.l_max;
    j["gamma_th_db"] = cfg.gamma_th_db;
    j["gamma_tilde_th_db"] = cfg.gamma_tilde_th_db;
    j["r_th_bps"] = cfg.r_th_bps;
    j["shadowing_sigma_db"] = cfg.shadowing_sigma_db;
    j["noise_psd_dbm_hz"] = cfg.noise_psd_dbm_hz;
    j["rb_bandwidth_hz"] = cfg.rb_bandwidth_hz;
    j["intercell_interference_w"] = cfg.intercell_interference_w;
    j["rng_seed"] = cfg.rng_seed;
    return j;
}

inline ScenarioConfig config_from_json(const nlohmann::json& j) {
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!detail::known_config_keys().count(it.key()))
            throw ConfigError("unknown config key: " + it.key());
    if (!j.contains("schema_version"))
        throw ConfigError("missing required key: schema_version");
    if (j.at("schema_version").get<int>() != kConfigSchemaVersion)
        throw ConfigError("unsupported schema_version (expected " +
                          std::to_string(kConfigSchemaVersion) + ")");

    ScenarioConfig cfg;
    auto get = [&](const char* key, auto& field) {
        if (j.contains(key)) field = j.at(key).get<std::decay_t<decltype(field)>>();
    };
    get("num_tenants", cfg.num_tenants);
    get("cell_radius_m", cfg.cell_radius_m);
    get("max_d2d_range_m", cfg.max_d2d_range_m);
    get("num_cues", cfg.num_cues);
    get("num_d2d_links", cfg.num_d2d_links);
    get("cue_split", cfg.cue_split);
    get("rb_pool_sizes", cfg.rb_pool_sizes);
    get("cue_utilization", cfg.cue_utilization);
    get("p_cue_dbm", cfg.p_cue_dbm);
    get("p_due_dbm", cfg.p_due_dbm);
    get("d2d_initiator_tenant", cfg.d2d_initiator_tenant);
    get("l_max", cfg.l_max);
    get("gamma_th_db", cfg.gamma_th_db);
    get("gamma_tilde_th_db", cfg.gamma_tilde_th_db);
    get("r_th_bps", cfg.r_th_bps);
    get("shadowing_sigma_db", cfg.shadowing_sigma_db);
    get("noise_psd_dbm_hz", cfg.noise_psd_dbm_hz);
    get("rb_bandwidth_hz", cfg.rb_bandwidth_hz);
    get("intercell_interference_w", cfg.intercell_interference_w);
    get("rng_seed", cfg.rng_seed);
    cfg.validate();
    return cfg;
}

inline ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

/// Applies a `key=value` override (CLI `--set`) onto a config JSON object.
/// Scalars parse as JSON literals; lists use JSON array syntax.
inline void apply_override(nlohmann::json& j, const std::string& kv) {
    auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override must have the form key=value: " + kv);
    std::string key = kv.substr(0, eq);
    std::string value = kv.substr(eq + 1);
    if (!detail::known_config_keys().count(key)) throw ConfigError("unknown config key: " + key);
    try {
        j[key] = nlohmann::json::parse(value);
    } catch (const nlohmann::json::parse_error&) {
        j[key] = value;  // bare strings
    }
}

}  // namespace d2dshare
