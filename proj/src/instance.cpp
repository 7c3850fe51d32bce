#include "wsteiner/instance.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "wsteiner/errors.hpp"

namespace wsteiner {

using nlohmann::json;

SolverSettings SettingsOverride::apply_to(SolverSettings base) const {
    if (tol) base.tol = *tol;
    if (max_iter) base.max_iter = *max_iter;
    if (seed) base.seed = *seed;
    if (restarts) base.restarts = *restarts;
    return base;
}

namespace {

[[noreturn]] void bad(const std::string& what) { throw SolverError(ErrorCode::InvalidInput, what); }

double number(const json& j, const std::string& field) {
    if (!j.is_number()) bad(field + " must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) bad(field + " must be finite");
    return v;
}

}  // namespace

InstanceFile parse_instance(const json& j, const std::string& default_id) {
    if (!j.is_object()) bad("instance must be a JSON object");
    for (const auto& [key, _] : j.items()) {
        if (key != "id" && key != "vertices" && key != "weights" && key != "pairing" && key != "options") {
            bad("unknown field '" + key + "'");
        }
    }

    InstanceFile inst;
    inst.id = default_id;
    if (j.contains("id")) {
        if (!j["id"].is_string()) bad("id must be a string");
        inst.id = j["id"].get<std::string>();
    }

    if (!j.contains("vertices")) bad("missing field 'vertices'");
    const json& verts = j["vertices"];
    if (!verts.is_array() || verts.size() != 4) bad("vertices must be an array of exactly 4 points");
    for (std::size_t i = 0; i < 4; ++i) {
        const json& p = verts[i];
        const std::string name = "vertices[" + std::to_string(i) + "]";
        if (!p.is_array() || p.size() != 3) bad(name + " must be [x, y, z]");
        inst.tet.vertices[i] = Point3{number(p[0], name + "[0]"), number(p[1], name + "[1]"), number(p[2], name + "[2]")};
    }

    if (j.contains("weights")) {
        const json& w = j["weights"];
        if (!w.is_object()) bad("weights must be an object");
        for (const auto& [key, value] : w.items()) {
            const double v = number(value, "weights." + key);
            if (key == "B1") inst.tet.weights.b1 = v;
            else if (key == "B2") inst.tet.weights.b2 = v;
            else if (key == "B3") inst.tet.weights.b3 = v;
            else if (key == "B4") inst.tet.weights.b4 = v;
            else if (key == "B12") inst.tet.weights.b12 = v;
            else if (key == "B34") inst.tet.weights.b34 = v;
            else bad("unknown weight '" + key + "'");
        }
    }

    if (j.contains("pairing")) {
        if (!j["pairing"].is_string()) bad("pairing must be a string");
        inst.tet.pairing = parse_pairing(j["pairing"].get<std::string>());
    }

    if (j.contains("options")) {
        const json& o = j["options"];
        if (!o.is_object()) bad("options must be an object");
        for (const auto& [key, value] : o.items()) {
            if (key == "tol") {
                const double t = number(value, "options.tol");
                if (t < 0.0) bad("options.tol must be >= 0");
                inst.options.tol = t;
            } else if (key == "max_iter") {
                if (!value.is_number_integer() || value.get<long long>() < 1) bad("options.max_iter must be a positive integer");
                inst.options.max_iter = value.get<int>();
            } else if (key == "seed") {
                if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
                    bad("options.seed must be a non-negative integer");
                }
                inst.options.seed = value.get<std::uint64_t>();
            } else if (key == "restarts") {
                if (!value.is_number_integer() || value.get<long long>() < 1) bad("options.restarts must be a positive integer");
                inst.options.restarts = value.get<int>();
            } else {
                bad("unknown option '" + key + "'");
            }
        }
    }

    inst.tet.validate();
    return inst;
}

InstanceFile parse_instance_text(const std::string& text, const std::string& default_id) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        bad(std::string("malformed JSON: ") + e.what());
    }
    return parse_instance(j, default_id);
}

InstanceFile load_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) bad("cannot open instance file '" + path.string() + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_text(buf.str(), path.stem().string());
}

json instance_to_json(const InstanceFile& inst) {
    json j;
    j["id"] = inst.id;
    j["vertices"] = json::array();
    for (const auto& v : inst.tet.vertices) j["vertices"].push_back({v.x, v.y, v.z});
    const Weights& w = inst.tet.weights;
    j["weights"] = {{"B1", w.b1}, {"B2", w.b2}, {"B3", w.b3}, {"B4", w.b4}, {"B12", w.b12}, {"B34", w.b34}};
    j["pairing"] = std::string(to_string(inst.tet.pairing));
    json opts = json::object();
    if (inst.options.tol) opts["tol"] = *inst.options.tol;
    if (inst.options.max_iter) opts["max_iter"] = *inst.options.max_iter;
    if (inst.options.seed) opts["seed"] = *inst.options.seed;
    if (inst.options.restarts) opts["restarts"] = *inst.options.restarts;
    if (!opts.empty()) j["options"] = opts;
    return j;
}

}  // namespace wsteiner
