#include "wsteiner/record.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>

#include "wsteiner/errors.hpp"
#include "wsteiner/ft.hpp"
#include "wsteiner/oracle.hpp"
#include "wsteiner/steiner.hpp"
#include "wsteiner/twist.hpp"

namespace wsteiner {

using nlohmann::json;

double round_deg(double radians) {
    const double deg = radians * 180.0 / std::numbers::pi;
    const double r = std::round(deg * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;  // no "-0.0" in output
}

namespace {

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

Point3 point_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()}; }

template <class T>
void put(json& j, const char* key, const std::optional<T>& v) {
    if (v) j[key] = *v;
}

void put_point(json& j, const char* key, const std::optional<Point3>& v) {
    if (v) j[key] = point_json(*v);
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& v) {
    if (j.contains(key)) v = j[key].get<T>();
}

void get_point(const json& j, const char* key, std::optional<Point3>& v) {
    if (j.contains(key)) v = point_from(j[key]);
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string fmt(const std::optional<double>& v, const char* spec) {
    if (!v) return "";
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, *v);
    return buf;
}

}  // namespace

json to_json(const ResultRecord& r) {
    json j;
    j["id"] = r.id;
    j["pairing"] = r.pairing;
    j["status"] = r.status;
    if (!r.message.empty()) j["message"] = r.message;
    if (r.frame) {
        const FrameSummary& f = *r.frame;
        j["frame"] = {{"H", f.H}, {"phi_deg", f.phi_deg}, {"k1", f.k1}, {"k2", f.k2},
                      {"m12", f.m12}, {"m34", f.m34}, {"config", f.config}};
    }
    put(j, "nondegenerate", r.nondegenerate);
    if (!r.degeneracy.empty()) {
        json recs = json::array();
        for (const auto& d : r.degeneracy) {
            recs.push_back({{"label", d.label}, {"query", d.query}, {"point", point_json(d.query_point)},
                            {"lhs", d.lhs}, {"rhs", d.rhs}, {"satisfied", d.satisfied},
                            {"applicable", d.applicable}});
        }
        j["degeneracy"] = recs;
    }
    put(j, "t12", r.t12);
    put(j, "t34", r.t34);
    put_point(j, "T12", r.T12);
    put_point(j, "T34", r.T34);
    put_point(j, "O12", r.O12);
    put_point(j, "O34", r.O34);
    put(j, "cost", r.cost);
    if (r.iterations > 0) j["iterations"] = r.iterations;
    put(j, "stationarity", r.stationarity);
    put(j, "omega_deg", r.omega_deg);
    if (r.ft) {
        j["ft"] = {{"t12", r.ft->t12}, {"t34", r.ft->t34}, {"gamma_deg", r.ft->gamma_deg},
                   {"F", point_json(r.ft->F)}, {"cost", r.ft->cost}};
    }
    if (r.oracle) {
        const OracleSummary& o = *r.oracle;
        j["oracle"] = {{"cost", o.cost}, {"cost_delta_rel", o.cost_delta_rel}, {"node_diff", o.node_diff},
                       {"O12", point_json(o.o12)}, {"O34", point_json(o.o34)},
                       {"gradient_norm", o.gradient_norm}, {"collapsed", o.collapsed}};
    }
    if (!r.trace.empty()) {
        json t = json::array();
        for (const auto& [a, b] : r.trace) t.push_back({a, b});
        j["trace"] = t;
    }
    return j;
}

ResultRecord record_from_json(const json& j) {
    ResultRecord r;
    r.id = j.at("id").get<std::string>();
    r.pairing = j.at("pairing").get<std::string>();
    r.status = j.at("status").get<std::string>();
    if (j.contains("message")) r.message = j["message"].get<std::string>();
    if (j.contains("frame")) {
        const json& f = j["frame"];
        r.frame = FrameSummary{f.at("H").get<double>(),  f.at("phi_deg").get<double>(), f.at("k1").get<double>(),
                               f.at("k2").get<double>(), f.at("m12").get<double>(),     f.at("m34").get<double>(),
                               f.at("config").get<std::string>()};
    }
    get(j, "nondegenerate", r.nondegenerate);
    if (j.contains("degeneracy")) {
        for (const json& d : j["degeneracy"]) {
            r.degeneracy.push_back({d.at("label").get<std::string>(), d.at("query").get<std::string>(),
                                    point_from(d.at("point")), d.at("lhs").get<double>(), d.at("rhs").get<double>(),
                                    d.at("satisfied").get<bool>(), d.at("applicable").get<bool>()});
        }
    }
    get(j, "t12", r.t12);
    get(j, "t34", r.t34);
    get_point(j, "T12", r.T12);
    get_point(j, "T34", r.T34);
    get_point(j, "O12", r.O12);
    get_point(j, "O34", r.O34);
    get(j, "cost", r.cost);
    if (j.contains("iterations")) r.iterations = j["iterations"].get<int>();
    get(j, "stationarity", r.stationarity);
    get(j, "omega_deg", r.omega_deg);
    if (j.contains("ft")) {
        const json& f = j["ft"];
        r.ft = FtSummary{f.at("t12").get<double>(), f.at("t34").get<double>(), f.at("gamma_deg").get<double>(),
                         point_from(f.at("F")), f.at("cost").get<double>()};
    }
    if (j.contains("oracle")) {
        const json& o = j["oracle"];
        r.oracle = OracleSummary{o.at("cost").get<double>(),          o.at("cost_delta_rel").get<double>(),
                                 o.at("node_diff").get<double>(),     point_from(o.at("O12")),
                                 point_from(o.at("O34")),             o.at("gradient_norm").get<double>(),
                                 o.at("collapsed").get<bool>()};
    }
    if (j.contains("trace")) {
        for (const json& p : j["trace"]) r.trace.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    }
    return r;
}

std::string csv_header() { return "id,H,phi_deg,t12,t34,cost,omega_deg,status"; }

std::string to_csv_row(const ResultRecord& r) {
    std::optional<double> H, phi;
    if (r.frame) {
        H = r.frame->H;
        phi = r.frame->phi_deg;
    }
    return csv_escape(r.id) + ',' + fmt(H, "%.17g") + ',' + fmt(phi, "%.6f") + ',' + fmt(r.t12, "%.17g") + ',' +
           fmt(r.t34, "%.17g") + ',' + fmt(r.cost, "%.17g") + ',' + fmt(r.omega_deg, "%.6f") + ',' + r.status;
}

ResultRecord solve_record(const InstanceFile& inst, Pairing pairing, const PipelineOptions& opts) {
    ResultRecord rec;
    rec.id = inst.id;
    rec.pairing = std::string(to_string(pairing));

    TetInstance tet = inst.tet;
    tet.pairing = pairing;
    const TetInstance canon = tet.canonical();
    const WeightSystem w = WeightSystem::from(canon.weights);

    try {
        const SkewFrame frame = skew_frame(canon);
        rec.frame = FrameSummary{frame.H, round_deg(frame.phi), frame.k1, frame.k2, frame.m12, frame.m34,
                                 std::string(to_string(frame.config))};
        w.require_feasible();

        const DegeneracyReport report = check_nondegenerate(canon, w);
        rec.nondegenerate = report.overall;
        rec.degeneracy = report.records;

        SimpsonOptions so;
        so.tol = opts.settings.tol;
        so.max_iter = opts.settings.max_iter;
        so.record_trace = opts.with_trace;
        SimpsonSolution s = solve_simpson(frame, w, so);
        rec.t12 = s.t12;
        rec.t34 = s.t34;
        rec.T12 = s.T12;
        rec.T34 = s.T34;
        rec.iterations = s.iterations;
        rec.trace = s.trace;
        std::string recover_error;
        try {
            s = recover_nodes(canon, frame, w, std::move(s));
            rec.O12 = s.O12;
            rec.O34 = s.O34;
            rec.cost = s.cost;
            const Stationarity st = node_stationarity(canon, w, s.O12, s.O34);
            rec.stationarity = std::max(st.node12, st.node34);
        } catch (const SolverError& e) {
            if (e.code() != ErrorCode::NodeOffSegment) throw;
            recover_error = e.what();
        }
        if (!frame.intersecting) rec.omega_deg = round_deg(twist_angle(frame, s.t12, s.t34).omega);

        if (opts.with_ft) {
            // An FT failure leaves the block out; it does not invalidate the Steiner result.
            try {
                const FtSolution ft =
                    recover_F(frame, solve_ft_system(frame, {opts.settings.tol, opts.settings.max_iter}));
                rec.ft = FtSummary{ft.t12, ft.t34, round_deg(ft.gamma), ft.F, ft.cost};
            } catch (const SolverError&) {
            }
        }

        if (opts.with_oracle) {
            OracleOptions oo;
            oo.seed = opts.settings.seed;
            oo.restarts = opts.settings.restarts;
            const OracleResult o = minimize_two_nodes(canon, w, oo);
            OracleSummary sum{o.cost, 0.0, 0.0, o.o12, o.o34, o.gradient_norm, o.collapsed};
            if (rec.cost) {
                sum.cost_delta_rel = (*rec.cost - o.cost) / o.cost;
                sum.node_diff = std::max(distance(s.O12, o.o12), distance(s.O34, o.o34)) / frame.scale();
            }
            rec.oracle = sum;
        }

        // Cone/torus records are sufficient only; the split/absorb records decide the status.
        const bool exact_ok = std::all_of(report.records.begin(), report.records.end(), [](const DegeneracyRecord& d) {
            return d.label.starts_with("cone") || d.label.starts_with("torus") || d.satisfied;
        });
        if (!exact_ok) {
            rec.status = "degenerate";
            rec.message = "optimal tree collapses a node or absorbs it into a terminal";
        } else if (!s.nodes_recovered) {
            rec.status = std::string(to_string(ErrorCode::NodeOffSegment));
            rec.message = recover_error;
        }
    } catch (const SolverError& e) {
        rec.status = std::string(to_string(e.code()));
        rec.message = e.what();
        if (const auto* nc = dynamic_cast<const NoConvergenceError*>(&e)) {
            rec.iterations = nc->iterations();
            rec.trace = nc->trace();
        }
    }
    return rec;
}

}  // namespace wsteiner
