// Command-line front end: solve, trace, classify, equiv, interconnect,
// pleat, surface, normal-forms. Data goes to stdout or --out; diagnostics go
// to stderr. Exit codes: 0 ok, 1 bad input, 2 no solution, 3 undecided
// equivalence.

#include "lcp/cone2d.hpp"
#include "lcp/core.hpp"
#include "lcp/equivalence.hpp"
#include "lcp/interconnect.hpp"
#include "lcp/io.hpp"
#include "lcp/regularity.hpp"
#include "lcp/solve.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <numbers>

namespace {

using namespace lcp;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 1;
constexpr int kExitNoSolution = 2;
constexpr int kExitUnknown = 3;

double base_tolerance(double cli_tol) {
  if (cli_tol > 0.0) return cli_tol;
  if (const char* env = std::getenv("LCP_TOL")) {
    try {
      const double v = std::stod(env);
      if (v > 0.0) return v;
    } catch (const std::exception&) {
      throw std::invalid_argument("LCP_TOL: not a number");
    }
  }
  return kDefaultTol;
}

Matrix load_matrix(const std::string& path) {
  auto [m, q] = problem_from_json(load_json_file(path));
  return m;
}

std::ostream& open_output(std::ofstream& file, const std::string& out_path) {
  if (out_path.empty()) return std::cout;
  file.open(out_path, std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write file: " + out_path);
  return file;
}

PwlPath load_path(const std::string& text) {
  if (!text.empty() && text.front() == '(') return parse_path_literal(text);
  return path_from_json(load_json_file(text));
}

struct TraceOutput {
  std::string out;
  std::string format = "csv";
  bool split = false;
  int samples = 401;
};

void emit_diagram(const Matrix& m, const BifurcationDiagram& d,
                  const TraceOutput& opt, double tol) {
  const int n = static_cast<int>(m.rows());
  if (opt.format == "json") {
    std::ofstream file;
    std::ostream& os = open_output(file, opt.out);
    os << to_json(d, detect_bifurcations(d, m, tol)).dump(2) << "\n";
    return;
  }
  const auto rows = sample_diagram(d, opt.samples);
  if (opt.split) {
    if (opt.out.empty())
      throw std::invalid_argument("--split requires --out");
    const auto files = write_diagram_csv_split(opt.out, rows, n);
    std::cerr << "wrote " << files.size() << " branch files\n";
  } else {
    std::ofstream file;
    std::ostream& os = open_output(file, opt.out);
    write_diagram_csv(os, rows, n);
  }
  // Event summary on the diagnostic stream, one line per event.
  for (const auto& e : detect_bifurcations(d, m, tol))
    std::cerr << "event l=" << format_number(e.lambda) << " [" << to_string(e.kind)
              << "] count " << e.count_before << " -> " << e.count_after
              << (e.annotation.empty() ? "" : ": " + e.annotation) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{"Complementary-cone analysis of linear complementarity problems"};
  app.require_subcommand(1);
  double tol_opt = 0.0;
  app.add_option("--tol", tol_opt, "base relative tolerance (default 1e-9; env LCP_TOL)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "enumerate all solutions of LCP(M,q)");
  std::string solve_matrix, solve_q, solve_out, solve_format = "json";
  solve_cmd->add_option("-m,--matrix", solve_matrix, "problem JSON file")->required();
  solve_cmd->add_option("--q", solve_q, "q as comma-separated reals (overrides file)");
  solve_cmd->add_option("--out", solve_out, "output file (default stdout)");
  solve_cmd->add_option("--format", solve_format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));

  // trace
  auto* trace_cmd = app.add_subcommand("trace", "trace LCP(M, q(l)) along a path");
  std::string trace_matrix, trace_path_arg;
  TraceOutput trace_opt;
  trace_cmd->add_option("-m,--matrix", trace_matrix, "problem JSON file")->required();
  trace_cmd->add_option("--path", trace_path_arg,
                        "\"(a,b);(c,d);...\" literal or path JSON file")
      ->required();
  trace_cmd->add_option("--samples", trace_opt.samples, "rows per branch (default 401)");
  trace_cmd->add_option("--out", trace_opt.out, "output file (default stdout)");
  trace_cmd->add_option("--format", trace_opt.format, "csv|json")
      ->check(CLI::IsMember({"json", "csv"}));
  trace_cmd->add_flag("--split", trace_opt.split, "one CSV per branch");

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "stability and planar class");
  std::string classify_matrix;
  classify_cmd->add_option("-m,--matrix", classify_matrix, "problem JSON file")
      ->required();

  // equiv
  auto* equiv_cmd = app.add_subcommand("equiv", "decide planar LCP equivalence");
  std::string equiv_a, equiv_b;
  equiv_cmd->add_option("--a", equiv_a, "first matrix JSON file")->required();
  equiv_cmd->add_option("--b", equiv_b, "second matrix JSON file")->required();

  // interconnect
  auto* inter_cmd = app.add_subcommand("interconnect", "assemble a feedback pair");
  std::string inter_spec, inter_out;
  double inter_at = std::numeric_limits<double>::quiet_NaN();
  inter_cmd->add_option("--spec", inter_spec, "interconnection JSON file")->required();
  inter_cmd->add_option("--at", inter_at, "also solve the assembled LCP at this lambda");
  inter_cmd->add_option("--out", inter_out, "output file (default stdout)");

  // pleat
  auto* pleat_cmd = app.add_subcommand("pleat", "trace the pleat scenario");
  PleatScenario scenario;
  std::string pleat_mu, pleat_range, pleat_ramp;
  TraceOutput pleat_opt;
  pleat_cmd->add_option("--s", scenario.s, "rotation angle in radians (default 10pi/9)");
  pleat_cmd->add_option("--mu", pleat_mu, "\"m1,m2\" (default: on-center)");
  pleat_cmd->add_option("--lambda-range", pleat_range, "\"lo,hi\" (default 0,1)");
  pleat_cmd->add_option("--ramp", pleat_ramp,
                        "scalar ramp \"const,slope\" (default \"1,-2\")");
  pleat_cmd->add_option("--samples", pleat_opt.samples, "rows per branch");
  pleat_cmd->add_option("--out", pleat_opt.out, "output file (default stdout)");
  pleat_cmd->add_option("--format", pleat_opt.format, "csv|json")
      ->check(CLI::IsMember({"json", "csv"}));
  pleat_cmd->add_flag("--split", pleat_opt.split, "one CSV per branch");

  // surface
  auto* surface_cmd = app.add_subcommand("surface", "sample the folded pwl graph");
  std::string surface_matrix, surface_grid = "-1,1,0.05", surface_out;
  surface_cmd->add_option("-m,--matrix", surface_matrix, "problem JSON file")
      ->required();
  surface_cmd->add_option("--grid", surface_grid, "\"lo,hi,step\" for both axes");
  surface_cmd->add_option("--out", surface_out, "output file (default stdout)");

  // normal-forms
  auto* forms_cmd = app.add_subcommand("normal-forms",
                                       "planar normal forms and their classes");
  std::string forms_out;
  forms_cmd->add_option("--out", forms_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadInput;
  }
  const double tol = base_tolerance(tol_opt);

  if (*solve_cmd) {
    auto [m, q_file] = problem_from_json(load_json_file(solve_matrix));
    Vector q;
    if (!solve_q.empty()) q = parse_vector_literal(solve_q);
    else if (q_file) q = *q_file;
    else throw std::invalid_argument("q: give --q or a \"q\" field in the file");
    const LcpProblem pb(m, q);
    auto result = solve_enumeration(pb, tol);
    annotate_regularity(pb, result.isolated, tol);
    std::ofstream file;
    std::ostream& os = open_output(file, solve_out);
    if (solve_format == "csv") write_solutions_csv(os, result, pb.n());
    else os << to_json(result).dump(2) << "\n";
    return result.empty() ? kExitNoSolution : kExitOk;
  }

  if (*trace_cmd) {
    const Matrix m = load_matrix(trace_matrix);
    const PwlPath path = load_path(trace_path_arg);
    const auto d = trace_path(m, path, tol);
    emit_diagram(m, d, trace_opt, tol);
    return kExitOk;
  }

  if (*classify_cmd) {
    const Matrix m = load_matrix(classify_matrix);
    const auto verdict = stability_2x2(m, tol);
    Json j;
    j["stability"] = to_string(verdict.status);
    j["conditions"] = verdict.reasons;
    const auto cls = classify_planar(m, tol);
    j["class"] = cls.label;
    j["signature"] = to_json(cls.signature);
    std::cout << j.dump(2) << "\n";
    return kExitOk;
  }

  if (*equiv_cmd) {
    const Matrix a = load_matrix(equiv_a);
    const Matrix b = load_matrix(equiv_b);
    const auto verdict = equivalent(a, b, tol);
    Json j;
    j["status"] = to_string(verdict.status);
    j["method"] = verdict.method;
    if (stability_2x2(a, tol).stable()) j["class_a"] = classify_planar(a, tol).label;
    if (stability_2x2(b, tol).stable()) j["class_b"] = classify_planar(b, tol).label;
    std::cout << j.dump(2) << "\n";
    return verdict.status == EquivalenceVerdict::Status::Unknown ? kExitUnknown
                                                                 : kExitOk;
  }

  if (*inter_cmd) {
    const auto spec = interconnection_from_json(load_json_file(inter_spec));
    const ParamLcp assembled = interconnect(spec);
    Json j = to_json(assembled);
    if (!std::isnan(inter_at)) {
      const LcpProblem pb = assembled.at(inter_at);
      auto result = solve_enumeration(pb, tol);
      annotate_regularity(pb, result.isolated, tol);
      j["lambda"] = inter_at;
      j["solutions"] = to_json(result);
    }
    std::ofstream file;
    std::ostream& os = open_output(file, inter_out);
    os << j.dump(2) << "\n";
    return kExitOk;
  }

  if (*pleat_cmd) {
    if (!pleat_range.empty()) {
      const Vector r = parse_vector_literal(pleat_range);
      if (r.size() != 2) throw std::invalid_argument("lambda-range: expected \"lo,hi\"");
      scenario.lambda_range = {r[0], r[1]};
    }
    if (!pleat_ramp.empty()) {
      const Vector r = parse_vector_literal(pleat_ramp);
      if (r.size() != 2) throw std::invalid_argument("ramp: expected \"const,slope\"");
      scenario.ramp_const = r[0];
      scenario.ramp_slope = r[1];
    }
    if (!pleat_mu.empty()) {
      const Vector mu = parse_vector_literal(pleat_mu);
      if (mu.size() != 2) throw std::invalid_argument("mu: expected \"m1,m2\"");
      scenario.mu = {mu[0], mu[1]};
    } else {
      scenario.mu = pleat_center_mu(scenario);
      std::cerr << "mu defaulted to on-center (" << format_number(scenario.mu.x())
                << "," << format_number(scenario.mu.y()) << ")\n";
    }
    scenario.samples = pleat_opt.samples;
    const PleatProblem pp = build_pleat_problem(scenario);
    const auto d = trace_path(pp.assembled.m, pp.path, tol);
    emit_diagram(pp.assembled.m, d, pleat_opt, tol);
    return kExitOk;
  }

  if (*surface_cmd) {
    const Matrix m = load_matrix(surface_matrix);
    const Vector g = parse_vector_literal(surface_grid);
    if (g.size() != 3) throw std::invalid_argument("grid: expected \"lo,hi,step\"");
    const auto rows = sample_pwl_graph(m, GridSpec{g[0], g[1], g[2]});
    std::ofstream file;
    std::ostream& os = open_output(file, surface_out);
    write_surface_csv(os, rows);
    return kExitOk;
  }

  if (*forms_cmd) {
    Json list = Json::array();
    for (const auto& f : normal_forms()) {
      Json j;
      j["label"] = f.label();
      j["family"] = f.family;
      j["delta"] = f.delta;
      j["m"] = problem_to_json(f.m)["m"];
      const auto verdict = stability_2x2(f.m, tol);
      j["stability"] = to_string(verdict.status);
      if (verdict.stable()) j["class"] = classify_planar(f.m, tol).label;
      else j["signature"] = to_json(signature(f.m, tol));
      list.push_back(std::move(j));
    }
    std::ofstream file;
    std::ostream& os = open_output(file, forms_out);
    os << list.dump(2) << "\n";
    return kExitOk;
  }

  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
}
