#include "wsteiner/export.hpp"

#include <cstdio>
#include <sstream>
#include <vector>

#include "wsteiner/errors.hpp"

namespace wsteiner {

namespace {

std::string g17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string obj(const SteinerTree& tree) {
    // A1..A4 are the first endpoints of edges 0..3; the nodes are the last edge's endpoints.
    std::ostringstream out;
    out << "# weighted Steiner tree\n";
    auto vertex = [&](const Point3& p) { out << "v " << g17(p.x) << ' ' << g17(p.y) << ' ' << g17(p.z) << '\n'; };
    for (int i = 0; i < 4; ++i) vertex(tree.edges[i].p);
    vertex(tree.edges[4].p);
    vertex(tree.edges[4].q);
    out << "l 1 5\nl 2 5\nl 3 6\nl 4 6\nl 5 6\n";
    return out.str();
}

std::string csv(const SteinerTree& tree) {
    std::ostringstream out;
    out << "from,to,x0,y0,z0,x1,y1,z1,weight,length\n";
    for (const auto& e : tree.edges) {
        out << e.from << ',' << e.to << ',' << g17(e.p.x) << ',' << g17(e.p.y) << ',' << g17(e.p.z) << ','
            << g17(e.q.x) << ',' << g17(e.q.y) << ',' << g17(e.q.z) << ',' << g17(e.weight) << ',' << g17(e.length)
            << '\n';
    }
    return out.str();
}

}  // namespace

std::string export_tree(const SteinerTree& tree, std::string_view format) {
    if (format == "obj") return obj(tree);
    if (format == "csv") return csv(tree);
    throw SolverError(ErrorCode::UnsupportedFormat, "unsupported export format '" + std::string(format) + "'");
}

SteinerTree parse_tree_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "from,to,x0,y0,z0,x1,y1,z1,weight,length") {
        throw SolverError(ErrorCode::InvalidInput, "edge CSV header missing");
    }
    SteinerTree tree;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (n == tree.edges.size()) throw SolverError(ErrorCode::InvalidInput, "edge CSV has more than 5 rows");
        std::vector<std::string> f;
        std::istringstream row(line);
        for (std::string cell; std::getline(row, cell, ',');) f.push_back(cell);
        if (f.size() != 10) throw SolverError(ErrorCode::InvalidInput, "edge CSV row needs 10 fields");
        TreeEdge& e = tree.edges[n++];
        try {
            e.from = f[0];
            e.to = f[1];
            e.p = {std::stod(f[2]), std::stod(f[3]), std::stod(f[4])};
            e.q = {std::stod(f[5]), std::stod(f[6]), std::stod(f[7])};
            e.weight = std::stod(f[8]);
            e.length = std::stod(f[9]);
        } catch (const std::logic_error&) {
            throw SolverError(ErrorCode::InvalidInput, "edge CSV row has a non-numeric field");
        }
        tree.cost += e.weight * e.length;
    }
    if (n != tree.edges.size()) throw SolverError(ErrorCode::InvalidInput, "edge CSV needs exactly 5 rows");
    return tree;
}

}  // namespace wsteiner
