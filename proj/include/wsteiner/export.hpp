#pragma once

#include <string>
#include <string_view>

#include "wsteiner/steiner.hpp"

namespace wsteiner {

/// "obj": 6 vertices (A1..A4, O12, O34) and 5 line elements.
/// "csv": one row per edge, from,to,x0,y0,z0,x1,y1,z1,weight,length.
/// Anything else throws SolverError(UnsupportedFormat).
std::string export_tree(const SteinerTree& tree, std::string_view format);

/// Inverse of the "csv" export. Cost is recomputed from the rows.
SteinerTree parse_tree_csv(const std::string& text);

}  // namespace wsteiner
