#include "wsteiner/cli.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "wsteiner/degeneracy.hpp"
#include "wsteiner/errors.hpp"
#include "wsteiner/export.hpp"
#include "wsteiner/ft.hpp"
#include "wsteiner/instance.hpp"
#include "wsteiner/oracle.hpp"
#include "wsteiner/record.hpp"
#include "wsteiner/steiner.hpp"
#include "wsteiner/twist.hpp"

namespace wsteiner {

using nlohmann::json;

int exit_code_for(const std::string& status) {
    if (status == "ok") return kExitOk;
    if (status == "degenerate") return kExitDegenerate;
    if (status == to_string(ErrorCode::NoConvergence)) return kExitNoConvergence;
    if (status == to_string(ErrorCode::InvalidInput) || status == to_string(ErrorCode::InfeasibleWeights)) {
        return kExitInvalidInput;
    }
    if (status == to_string(ErrorCode::UnsupportedFormat)) return kExitUsage;
    return kExitSolverFailure;
}

namespace {

struct Args {
    std::string input;
    double tol = 1e-12;
    int max_iter = 10000;
    std::uint64_t seed = 0;
    int restarts = 8;
    std::string format;
    bool oracle = false;
    bool ft = false;
    bool all_pairings = false;
    bool trace = false;
    std::string output;
    double t12 = 0.0;
    double t34 = 0.0;
    unsigned threads = 0;

    CLI::App* cmd = nullptr;
    bool given(const char* flag) const { return cmd->count(flag) > 0; }

    // Explicit flags win over the instance file, which wins over the defaults.
    SolverSettings settings(const SettingsOverride& file) const {
        SolverSettings s = file.apply_to({});
        if (given("--tol")) s.tol = tol;
        if (given("--max-iter")) s.max_iter = max_iter;
        if (given("--seed")) s.seed = seed;
        if (given("--restarts")) s.restarts = restarts;
        return s;
    }
};

json error_object(const std::string& code, const std::string& message, const json& context) {
    return {{"error", {{"code", code}, {"message", message}, {"context", context}}}};
}

json point_json(const Point3& p) { return json::array({p.x, p.y, p.z}); }

std::vector<Pairing> pairings_for(const InstanceFile& inst, const Args& a) {
    if (a.all_pairings) return {Pairing::P12_34, Pairing::P13_24, Pairing::P14_23};
    return {inst.tet.pairing};
}

json frame_json(const SkewFrame& f) {
    return {{"H", f.H}, {"phi_deg", round_deg(f.phi)}, {"k1", f.k1}, {"k2", f.k2},
            {"m12", f.m12}, {"m34", f.m34}, {"config", std::string(to_string(f.config))}};
}

void emit(const Args& a, std::ostream& out, const std::string& text) {
    if (a.output.empty()) {
        out << text;
        return;
    }
    std::ofstream f(a.output, std::ios::binary);
    if (!f) throw SolverError(ErrorCode::InvalidInput, "cannot write '" + a.output + "'");
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_solve(const Args& a, std::ostream& out) {
    const InstanceFile inst = load_instance(a.input);
    PipelineOptions po{a.settings(inst.options), a.oracle, a.trace, a.ft};
    std::vector<ResultRecord> recs;
    for (Pairing p : pairings_for(inst, a)) recs.push_back(solve_record(inst, p, po));

    if (a.format == "csv") {
        std::string text = csv_header() + "\n";
        for (const auto& r : recs) text += to_csv_row(r) + "\n";
        emit(a, out, text);
    } else if (a.format == "json") {
        if (recs.size() == 1) {
            emit(a, out, dump(to_json(recs[0])));
        } else {
            json arr = json::array();
            for (const auto& r : recs) arr.push_back(to_json(r));
            emit(a, out, dump(arr));
        }
    } else {
        throw SolverError(ErrorCode::UnsupportedFormat, "unsupported output format '" + a.format + "'");
    }

    // With all pairings, one usable pairing is a success.
    int code = exit_code_for(recs.front().status);
    for (const auto& r : recs) {
        if (r.ok()) return kExitOk;
    }
    return code;
}

int cmd_ft(const Args& a, std::ostream& out) {
    const InstanceFile inst = load_instance(a.input);
    const SolverSettings s = a.settings(inst.options);
    json arr = json::array();
    int code = kExitOk;
    for (Pairing p : pairings_for(inst, a)) {
        TetInstance tet = inst.tet;
        tet.pairing = p;
        const TetInstance canon = tet.canonical();
        json j{{"id", inst.id}, {"pairing", std::string(to_string(p))}};
        try {
            const SkewFrame frame = skew_frame(canon);
            j["frame"] = frame_json(frame);
            FtSolution ft = solve_ft_system(frame, {s.tol, s.max_iter});
            ft = recover_F(frame, ft);
            j["ft"] = {{"t12", ft.t12},
                       {"t34", ft.t34},
                       {"gamma_deg", round_deg(ft.gamma)},
                       {"T12", point_json(ft.T12)},
                       {"T34", point_json(ft.T34)},
                       {"F", point_json(ft.F)},
                       {"t12_to_f", ft.t12_to_f},
                       {"t34_to_f", ft.t34_to_f},
                       {"cost", ft.cost},
                       {"iterations", ft.iterations},
                       {"abs_variant", ft.abs_variant}};
            if (a.oracle) {
                const std::array<double, 4> ones{1.0, 1.0, 1.0, 1.0};
                const SingleNodeResult m = minimize_single_node(canon, ones);
                j["oracle"] = {{"cost", m.cost},
                               {"F", point_json(m.point)},
                               {"cost_delta_rel", (ft.cost - m.cost) / m.cost},
                               {"point_diff", distance(ft.F, m.point) / frame.scale()}};
            }
            j["status"] = "ok";
        } catch (const SolverError& e) {
            j["status"] = std::string(to_string(e.code()));
            j["message"] = e.what();
            if (code == kExitOk) code = exit_code_for(j["status"]);
        }
        arr.push_back(j);
    }
    emit(a, out, dump(arr.size() == 1 ? arr[0] : arr));
    return code;
}

int cmd_twist(const Args& a, std::ostream& out) {
    const InstanceFile inst = load_instance(a.input);
    if (a.given("--t12") != a.given("--t34")) {
        throw CLI::ValidationError("--t12 and --t34 must be given together");
    }
    const TetInstance canon = inst.tet.canonical();
    const SkewFrame frame = skew_frame(canon);
    double t12 = a.t12, t34 = a.t34;
    if (!a.given("--t12")) {
        const SolverSettings s = a.settings(inst.options);
        SimpsonOptions so;
        so.tol = s.tol;
        so.max_iter = s.max_iter;
        const SimpsonSolution sol = solve_simpson(frame, WeightSystem::from(canon.weights), so);
        t12 = sol.t12;
        t34 = sol.t34;
    }
    const TwistReport t = twist_angle(frame, t12, t34);
    const double normals = twist_angle_normal_oracle(canon, frame.point12(t12), frame.point34(t34));
    json j{{"id", inst.id},
           {"pairing", std::string(to_string(canon.pairing))},
           {"H", frame.H},
           {"phi_deg", round_deg(frame.phi)},
           {"t12", t12},
           {"t34", t34},
           {"phi12_deg", round_deg(t.phi12)},
           {"phi34_deg", round_deg(t.phi34)},
           {"omega_deg", round_deg(t.omega)},
           {"signed_omega_deg", round_deg(t.signed_omega)},
           {"omega_normals_deg", round_deg(normals)},
           {"simpson_length", t.simpson_length},
           {"special_case", std::string(to_string(t.special_case))}};
    emit(a, out, dump(j));
    return kExitOk;
}

int cmd_check(const Args& a, std::ostream& out) {
    const InstanceFile inst = load_instance(a.input);
    json arr = json::array();
    for (Pairing p : pairings_for(inst, a)) {
        TetInstance tet = inst.tet;
        tet.pairing = p;
        const TetInstance canon = tet.canonical();
        const WeightSystem w = WeightSystem::from(canon.weights);
        w.require_feasible();
        const DegeneracyReport rep = check_nondegenerate(canon, w);
        json recs = json::array();
        for (const auto& d : rep.records) {
            recs.push_back({{"label", d.label}, {"query", d.query}, {"point", point_json(d.query_point)},
                            {"lhs", d.lhs}, {"rhs", d.rhs}, {"satisfied", d.satisfied},
                            {"applicable", d.applicable}});
        }
        json j{{"id", inst.id},
               {"pairing", std::string(to_string(p))},
               {"nondegenerate", rep.overall},
               {"cone_torus_overall", rep.cone_torus_overall},
               {"records", recs}};
        if (rep.equal_weight_crosscheck) j["equal_weight_crosscheck"] = *rep.equal_weight_crosscheck;
        arr.push_back(j);
    }
    emit(a, out, dump(arr.size() == 1 ? arr[0] : arr));
    return kExitOk;
}

int cmd_oracle(const Args& a, std::ostream& out) {
    const InstanceFile inst = load_instance(a.input);
    const SolverSettings s = a.settings(inst.options);
    json arr = json::array();
    for (Pairing p : pairings_for(inst, a)) {
        TetInstance tet = inst.tet;
        tet.pairing = p;
        const TetInstance canon = tet.canonical();
        const WeightSystem w = WeightSystem::from(canon.weights);
        w.require_feasible();
        OracleOptions oo;
        oo.seed = s.seed;
        oo.restarts = s.restarts;
        const OracleResult o = minimize_two_nodes(canon, w, oo);
        json j{{"id", inst.id},
               {"pairing", std::string(to_string(p))},
               {"seed", s.seed},
               {"restarts", s.restarts},
               {"O12", point_json(o.o12)},
               {"O34", point_json(o.o34)},
               {"cost", o.cost},
               {"iterations", o.iterations},
               {"gradient_norm", o.gradient_norm},
               {"restart_costs", o.restart_costs},
               {"collapsed", o.collapsed},
               {"absorbed", o.absorbed}};
        if (a.trace) j["cost_trace"] = o.cost_trace;
        arr.push_back(j);
    }
    emit(a, out, dump(arr.size() == 1 ? arr[0] : arr));
    return kExitOk;
}

int cmd_export(const Args& a, std::ostream& out, std::ostream& err) {
    const InstanceFile inst = load_instance(a.input);
    const std::string format = a.format.empty() ? "obj" : a.format;
    if (format != "obj" && format != "csv") {
        throw SolverError(ErrorCode::UnsupportedFormat, "unsupported export format '" + format + "'");
    }
    const ResultRecord r = solve_record(inst, inst.tet.pairing, {a.settings(inst.options), false, false});
    if (!r.O12 || !r.O34) {
        throw SolverError(ErrorCode::NodeOffSegment, r.message.empty() ? "no tree to export" : r.message);
    }
    if (!r.ok()) err << "warning: " << r.message << "; exporting the uncertified tree\n";
    const TetInstance canon = inst.tet.canonical();
    const SteinerTree tree = build_tree(canon, WeightSystem::from(canon.weights), *r.O12, *r.O34);
    emit(a, out, export_tree(tree, format));
    return exit_code_for(r.status);
}

int cmd_batch(const Args& a, std::ostream& out) {
    std::ifstream in(a.input);
    if (!in) throw SolverError(ErrorCode::InvalidInput, "cannot open batch file '" + a.input + "'");
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    }

    std::vector<std::vector<ResultRecord>> results(lines.size());
    auto work = [&](std::size_t i) {
        const std::string fallback_id = "line-" + std::to_string(i + 1);
        try {
            const InstanceFile inst = parse_instance_text(lines[i], fallback_id);
            SolverSettings s = a.settings(inst.options);
            // Per-instance seed: deterministic in the line index, independent of scheduling.
            if (a.given("--seed") || !inst.options.seed) s.seed = a.seed + i;
            const PipelineOptions po{s, a.oracle, a.trace, a.ft};
            for (Pairing p : pairings_for(inst, a)) results[i].push_back(solve_record(inst, p, po));
        } catch (const SolverError& e) {
            ResultRecord r;
            r.id = fallback_id;
            r.status = std::string(to_string(e.code()));
            r.message = e.what();
            results[i] = {r};
        }
    };

    unsigned n_threads = a.threads ? a.threads : std::max(1u, std::thread::hardware_concurrency());
    n_threads = static_cast<unsigned>(std::min<std::size_t>(n_threads, std::max<std::size_t>(1, lines.size())));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < lines.size();) work(i);
        });
    }
    for (auto& t : pool) t.join();

    std::ostringstream text;
    if (a.format == "csv") {
        text << csv_header() << '\n';
        for (const auto& rs : results)
            for (const auto& r : rs) text << to_csv_row(r) << '\n';
    } else if (a.format == "json") {
        for (const auto& rs : results)
            for (const auto& r : rs) text << to_json(r).dump() << '\n';
    } else {
        throw SolverError(ErrorCode::UnsupportedFormat, "unsupported output format '" + a.format + "'");
    }
    emit(a, out, text.str());
    return kExitOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Weighted Steiner minimal trees on tetrahedra", "wsteiner"};
    app.require_subcommand(1);
    Args a;

    auto add = [&](CLI::App* sub, bool with_format, const std::string& default_format) {
        sub->add_option("--input,-i", a.input, "instance file (JSON; NDJSON for batch)")->required();
        sub->add_option("--tol", a.tol, "fixed-point tolerance, relative to the instance scale");
        sub->add_option("--max-iter", a.max_iter, "iteration cap")->check(CLI::PositiveNumber);
        sub->add_option("--seed", a.seed, "oracle seed");
        sub->add_option("--restarts", a.restarts, "oracle restarts")->check(CLI::PositiveNumber);
        sub->add_option("--output,-o", a.output, "write to a file instead of stdout");
        sub->add_flag("--all-pairings", a.all_pairings, "run all three edge pairings");
        sub->add_flag("--trace", a.trace, "include iteration traces");
        if (with_format) sub->add_option("--format", a.format, "output format")->default_str(default_format);
        return sub;
    };

    CLI::App* solve = add(app.add_subcommand("solve", "construct the tree for one instance"), true, "json");
    solve->add_flag("--oracle", a.oracle, "cross-check against the direct minimizer");
    solve->add_flag("--ft", a.ft, "add the unweighted single-node block");
    CLI::App* ft = add(app.add_subcommand("ft", "unweighted single-node point"), false, "");
    ft->add_flag("--oracle", a.oracle, "cross-check against the weighted median");
    CLI::App* twist = add(app.add_subcommand("twist", "twist angle along the Simpson line"), false, "");
    twist->add_option("--t12", a.t12, "intercept on line A1A2");
    twist->add_option("--t34", a.t34, "intercept on line A4A3");
    CLI::App* check = add(app.add_subcommand("check", "non-degeneracy report"), false, "");
    CLI::App* oracle = add(app.add_subcommand("oracle", "direct two-node minimization"), false, "");
    CLI::App* exp = add(app.add_subcommand("export", "write the tree as OBJ or edge CSV"), true, "obj");
    CLI::App* batch = add(app.add_subcommand("batch", "solve an NDJSON file of instances"), true, "json");
    batch->add_flag("--oracle", a.oracle, "cross-check each instance");
    batch->add_flag("--ft", a.ft, "add the unweighted single-node block");
    batch->add_option("--threads", a.threads, "worker threads (0 = hardware)");

    std::vector<std::string> argv_store{"wsteiner"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return kExitOk;
        }
        err << dump(error_object("usage", e.what(), json::object()));
        return kExitUsage;
    }

    CLI::App* sub = app.get_subcommands().front();
    a.cmd = sub;
    if (a.format.empty() && sub != exp) a.format = "json";
    json context{{"command", sub->get_name()}, {"input", a.input}};
    try {
        if (sub == solve) return cmd_solve(a, out);
        if (sub == ft) return cmd_ft(a, out);
        if (sub == twist) return cmd_twist(a, out);
        if (sub == check) return cmd_check(a, out);
        if (sub == oracle) return cmd_oracle(a, out);
        if (sub == exp) return cmd_export(a, out, err);
        if (sub == batch) return cmd_batch(a, out);
    } catch (const NoConvergenceError& e) {
        context["iterations"] = e.iterations();
        err << dump(error_object(std::string(to_string(e.code())), e.what(), context));
        return kExitNoConvergence;
    } catch (const SolverError& e) {
        const std::string code{to_string(e.code())};
        err << dump(error_object(code, e.what(), context));
        return exit_code_for(code);
    } catch (const CLI::ValidationError& e) {
        err << dump(error_object("usage", e.what(), context));
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace wsteiner
