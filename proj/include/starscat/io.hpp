#pragma once

#include <string>

#include <json.hpp>

#include "starscat/approximation.hpp"
#include "starscat/coupling.hpp"
#include "starscat/graph_solver.hpp"
#include "starscat/types.hpp"

namespace starscat {

// JSON conventions. Complex matrices are arrays of rows, each entry a
// [re, im] pair. Couplings serialize as {"n", "m", "T"}, scattering matrices
// as {"n", "S"}, approximating graphs as {"n", "d", "alpha", "connectors"}
// with 1-based endpoint indices "j" -> "k", gamma under "gamma" and the
// potential under "A". Doubles survive a round trip bit for bit.

nlohmann::json cmatrix_to_json(const CMatrix& M);
CMatrix cmatrix_from_json(const nlohmann::json& j, const std::string& what);

nlohmann::json coupling_to_json(const CouplingST& c);
CouplingST coupling_from_json(const nlohmann::json& j);

nlohmann::json smatrix_to_json(const CMatrix& S);
CMatrix smatrix_from_json(const nlohmann::json& j);

nlohmann::json graph_to_json(const ApproxGraph& g);
ApproxGraph graph_from_json(const nlohmann::json& j);

// CSV with header "d,error", one row per scale in report order (failed rows
// print nan), and a trailing comment line "# fitted_order = <value>". All
// numbers carry full double precision.
std::string report_to_csv(const ConvergenceReport& report);

// Human-readable matrix: one row per line, entries as aligned
// re/im pairs with six decimals, e.g. "  0.333333  +0.666667i".
std::string format_cmatrix(const CMatrix& M);

// Full-precision decimal form of a double (17 significant digits).
std::string fmt17(double x);

// Parse a JSON file, translating stream and parse failures into
// ValidationError.
nlohmann::json load_json(const std::string& path);

void save_text(const std::string& path, const std::string& text);

}  // namespace starscat
