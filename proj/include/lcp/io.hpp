#pragma once

#include "lcp/bifurcation.hpp"
#include "lcp/equivalence.hpp"
#include "lcp/interconnect.hpp"
#include "lcp/solve.hpp"
#include "lcp/types.hpp"

#include <json.hpp>

#include <iosfwd>

namespace lcp {

using Json = nlohmann::json;

/// Fixed 12-significant-digit decimal form; the unit of byte-stable CSV.
std::string format_number(double v);

// -- Problem / matrix JSON: {"n": 2, "m": [[...],[...]], "q": [...]} --------

Matrix matrix_from_json(const Json& j);
/// Parse a problem file; q may be absent when only the matrix is needed.
std::pair<Matrix, std::optional<Vector>> problem_from_json(const Json& j);
Json problem_to_json(const Matrix& m, const Vector* q = nullptr);

Json load_json_file(const std::string& path);

// -- Command-line literals ---------------------------------------------------

/// Comma-separated reals: "-2,-2".
Vector parse_vector_literal(const std::string& text);
/// Waypoint list "(a,b);(c,d);..." over the uniform domain [0,1].
PwlPath parse_path_literal(const std::string& text);
/// Path JSON: {"waypoints": [[...],...], "domain": [lo,hi]?,
/// "breakpoints": [...]?}.
PwlPath path_from_json(const Json& j);

InterconnectionSpec interconnection_from_json(const Json& j);

// -- Result JSON --------------------------------------------------------------

Json to_json(const SolutionPoint& s);
Json to_json(const ContinuumSolution& c);
Json to_json(const EnumerationResult& r);
Json to_json(const ConeSignature& sig);
Json to_json(const BifurcationDiagram& d, const std::vector<DiagramEvent>& annotated);
Json to_json(const ParamLcp& p);

// -- CSV ---------------------------------------------------------------------

/// Single file: branch,l,x1..xn,z1..zn.
void write_diagram_csv(std::ostream& os, const std::vector<SampleRow>& rows, int n);
/// One file per branch, header l,x1..xn,z1..zn; paths get "_<k>" suffixes
/// before the extension. Returns the file names written.
std::vector<std::string> write_diagram_csv_split(const std::string& out_path,
                                                 const std::vector<SampleRow>& rows,
                                                 int n);
void write_solutions_csv(std::ostream& os, const EnumerationResult& r, int n);
void write_surface_csv(std::ostream& os,
                       const std::vector<std::array<double, 3>>& rows);

}  // namespace lcp
