#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "wsteiner/degeneracy.hpp"
#include "wsteiner/instance.hpp"

namespace wsteiner {

struct FrameSummary {
    double H = 0.0;
    double phi_deg = 0.0;
    double k1 = 0.0;
    double k2 = 0.0;
    double m12 = 0.0;
    double m34 = 0.0;
    std::string config;
};

struct OracleSummary {
    double cost = 0.0;
    double cost_delta_rel = 0.0;  // (construction - oracle) / oracle
    double node_diff = 0.0;      // max node distance / scale
    Point3 o12{};
    Point3 o34{};
    double gradient_norm = 0.0;
    bool collapsed = false;
};

struct FtSummary {
    double t12 = 0.0;
    double t34 = 0.0;
    double gamma_deg = 0.0;
    Point3 F{};
    double cost = 0.0;
};

/// One solve of one instance under one pairing. Node names refer to the canonical
/// relabelling: O12 joins the first pair of the pairing, O34 the second.
/// Angles are stored in degrees, rounded to 6 decimals.
struct ResultRecord {
    std::string id;
    std::string pairing = "12-34";
    std::string status = "ok";  // ok, degenerate, or an error code name
    std::string message;

    std::optional<FrameSummary> frame;
    std::optional<bool> nondegenerate;
    std::vector<DegeneracyRecord> degeneracy;

    std::optional<double> t12;
    std::optional<double> t34;
    std::optional<Point3> T12;
    std::optional<Point3> T34;
    std::optional<Point3> O12;
    std::optional<Point3> O34;
    std::optional<double> cost;
    int iterations = 0;
    std::optional<double> stationarity;
    std::optional<double> omega_deg;

    std::optional<FtSummary> ft;
    std::optional<OracleSummary> oracle;
    std::vector<std::pair<double, double>> trace;

    bool ok() const { return status == "ok"; }
};

double round_deg(double radians);

nlohmann::json to_json(const ResultRecord& r);
ResultRecord record_from_json(const nlohmann::json& j);

std::string csv_header();
std::string to_csv_row(const ResultRecord& r);

struct PipelineOptions {
    SolverSettings settings;
    bool with_oracle = false;
    bool with_trace = false;
    bool with_ft = false;
};

/// check -> construct -> twist (-> oracle). Solver failures become the record status.
ResultRecord solve_record(const InstanceFile& inst, Pairing pairing, const PipelineOptions& opts);

}  // namespace wsteiner
