#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"
#include "wsteiner/geometry.hpp"

namespace wsteiner {

struct SolverSettings {
    double tol = 1e-12;
    int max_iter = 10000;
    std::uint64_t seed = 0;
    int restarts = 8;
};

/// Settings given explicitly in the instance file; unset fields fall back to the CLI.
struct SettingsOverride {
    std::optional<double> tol;
    std::optional<int> max_iter;
    std::optional<std::uint64_t> seed;
    std::optional<int> restarts;

    SolverSettings apply_to(SolverSettings base) const;
};

struct InstanceFile {
    std::string id;
    TetInstance tet;
    SettingsOverride options;
};

/// Schema:
///   {"id": str?, "vertices": [[x,y,z] x4], "weights": {"B1".."B4","B12","B34"}?,
///    "pairing": "12-34"|"13-24"|"14-23"?, "options": {"tol","max_iter","seed","restarts"}?}
/// Throws SolverError(InvalidInput) with a message naming the offending field.
InstanceFile parse_instance(const nlohmann::json& j, const std::string& default_id = "instance");
InstanceFile parse_instance_text(const std::string& text, const std::string& default_id = "instance");
InstanceFile load_instance(const std::filesystem::path& path);

nlohmann::json instance_to_json(const InstanceFile& inst);

}  // namespace wsteiner
