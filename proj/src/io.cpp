#include "lcp/io.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

namespace lcp {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty())
    throw std::invalid_argument("m: expected a non-empty array of rows");
  const std::size_t n = j.size();
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != n)
      throw std::invalid_argument("m: row " + std::to_string(i + 1) + " must have " +
                                  std::to_string(n) + " entries");
    for (std::size_t k = 0; k < n; ++k) {
      if (!row[k].is_number())
        throw std::invalid_argument("m: entry (" + std::to_string(i + 1) + "," +
                                    std::to_string(k + 1) + ") is not a number");
      m(i, k) = row[k].get<double>();
    }
  }
  if (!m.allFinite()) throw std::invalid_argument("m: entries must be finite");
  return m;
}

static Vector vector_from_json(const Json& j, const char* field) {
  if (!j.is_array())
    throw std::invalid_argument(std::string(field) + ": expected an array");
  Vector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number())
      throw std::invalid_argument(std::string(field) + ": entry " +
                                  std::to_string(i + 1) + " is not a number");
    v[i] = j[i].get<double>();
  }
  return v;
}

std::pair<Matrix, std::optional<Vector>> problem_from_json(const Json& j) {
  if (!j.is_object()) throw std::invalid_argument("problem: expected a JSON object");
  if (!j.contains("m")) throw std::invalid_argument("m: missing field");
  Matrix m = matrix_from_json(j["m"]);
  if (j.contains("n") && j["n"].get<int>() != m.rows())
    throw std::invalid_argument("n: does not match the matrix dimension");
  std::optional<Vector> q;
  if (j.contains("q")) {
    q = vector_from_json(j["q"], "q");
    if (q->size() != m.rows())
      throw std::invalid_argument("q: length does not match the matrix dimension");
  }
  return {std::move(m), std::move(q)};
}

Json problem_to_json(const Matrix& m, const Vector* q) {
  Json j;
  j["n"] = m.rows();
  Json rows = Json::array();
  for (int i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  j["m"] = std::move(rows);
  if (q) {
    Json qv = Json::array();
    for (int i = 0; i < q->size(); ++i) qv.push_back((*q)[i]);
    j["q"] = std::move(qv);
  }
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const Json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  return j;
}

Vector parse_vector_literal(const std::string& text) {
  std::vector<double> vals;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      vals.push_back(std::stod(tok, &used));
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
        ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument("vector literal: bad number \"" + tok + "\"");
    }
  }
  if (vals.empty()) throw std::invalid_argument("vector literal: empty");
  Vector v(vals.size());
  for (std::size_t i = 0; i < vals.size(); ++i) v[i] = vals[i];
  return v;
}

PwlPath parse_path_literal(const std::string& text) {
  std::vector<Vector> pts;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    const auto open = tok.find('(');
    const auto close = tok.rfind(')');
    if (open == std::string::npos || close == std::string::npos || close <= open)
      throw std::invalid_argument("path literal: expected \"(a,b);(c,d);...\"");
    pts.push_back(parse_vector_literal(tok.substr(open + 1, close - open - 1)));
  }
  if (pts.size() < 2)
    throw std::invalid_argument("path literal: need at least two waypoints");
  return PwlPath::from_waypoints(std::move(pts));
}

PwlPath path_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("waypoints"))
    throw std::invalid_argument("path: missing \"waypoints\"");
  std::vector<Vector> pts;
  for (const Json& w : j["waypoints"]) pts.push_back(vector_from_json(w, "waypoints"));
  if (j.contains("breakpoints")) {
    PwlPath p;
    p.waypoints = std::move(pts);
    for (const Json& b : j["breakpoints"]) p.breakpoints.push_back(b.get<double>());
    p.validate();
    return p;
  }
  double lo = 0.0, hi = 1.0;
  if (j.contains("domain")) {
    lo = j["domain"][0].get<double>();
    hi = j["domain"][1].get<double>();
  }
  return PwlPath::from_waypoints(std::move(pts), lo, hi);
}

static AffineVector affine_from_json(const Json& j, const char* field) {
  AffineVector a;
  if (j.is_array()) {
    a = AffineVector::constant_only(vector_from_json(j, field));
    return a;
  }
  if (!j.is_object() || !j.contains("const"))
    throw std::invalid_argument(std::string(field) +
                                ": expected an array or {\"const\":...,\"slope\":...}");
  a.constant = vector_from_json(j["const"], field);
  a.slope = j.contains("slope") ? vector_from_json(j["slope"], field)
                                : Vector(Vector::Zero(a.constant.size()));
  if (a.slope.size() != a.constant.size())
    throw std::invalid_argument(std::string(field) + ": const/slope length mismatch");
  return a;
}

InterconnectionSpec interconnection_from_json(const Json& j) {
  InterconnectionSpec spec;
  for (const char* f : {"m_a", "m_b", "h_a", "h_b", "theta_a", "theta_b"})
    if (!j.contains(f))
      throw std::invalid_argument(std::string(f) + ": missing field");
  spec.m_a = matrix_from_json(j["m_a"]);
  spec.m_b = matrix_from_json(j["m_b"]);
  auto rect = [](const Json& jm, const char* field) {
    if (!jm.is_array() || jm.empty())
      throw std::invalid_argument(std::string(field) + ": expected rows");
    Matrix m(jm.size(), jm[0].size());
    for (std::size_t i = 0; i < jm.size(); ++i) {
      if (!jm[i].is_array() || jm[i].size() != static_cast<std::size_t>(m.cols()))
        throw std::invalid_argument(std::string(field) + ": ragged rows");
      for (std::size_t k = 0; k < jm[i].size(); ++k) m(i, k) = jm[i][k].get<double>();
    }
    return m;
  };
  spec.h_a = rect(j["h_a"], "h_a");
  spec.h_b = rect(j["h_b"], "h_b");
  spec.theta_a = affine_from_json(j["theta_a"], "theta_a");
  spec.theta_b = affine_from_json(j["theta_b"], "theta_b");
  spec.validate();
  return spec;
}

static Json vec_json(const Vector& v) {
  Json out = Json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

Json to_json(const SolutionPoint& s) {
  Json j;
  j["x"] = vec_json(s.x);
  j["z"] = vec_json(s.z);
  j["w"] = vec_json(s.w);
  Json wts = Json::array();
  for (const IndexSet& a : s.witnesses) wts.push_back(a.to_string());
  j["witnesses"] = std::move(wts);
  j["regularity"] = to_string(s.regularity);
  if (s.ill_conditioned) j["ill_conditioned"] = true;
  return j;
}

Json to_json(const ContinuumSolution& c) {
  Json j;
  j["alpha"] = c.alpha.to_string();
  j["base"] = vec_json(c.base);
  Json dirs = Json::array();
  for (const Vector& d : c.directions) dirs.push_back(vec_json(d));
  j["directions"] = std::move(dirs);
  Json box = Json::array();
  for (const auto& b : c.param_box) box.push_back(Json::array({b[0], b[1]}));
  j["param_box"] = std::move(box);
  j["dim"] = c.dim;
  return j;
}

Json to_json(const EnumerationResult& r) {
  Json j;
  Json iso = Json::array();
  for (const SolutionPoint& s : r.isolated) iso.push_back(to_json(s));
  j["isolated"] = std::move(iso);
  Json cont = Json::array();
  for (const ContinuumSolution& c : r.continua) cont.push_back(to_json(c));
  j["continua"] = std::move(cont);
  return j;
}

Json to_json(const ConeSignature& sig) {
  Json j;
  j["sectors"] = sig.sectors;
  Json deg = Json::array();
  for (bool b : sig.degenerate_rays) deg.push_back(b);
  j["degenerate_rays"] = std::move(deg);
  return j;
}

Json to_json(const BifurcationDiagram& d,
             const std::vector<DiagramEvent>& annotated) {
  Json j;
  Json branches = Json::array();
  for (const SolutionBranch& b : d.branches) {
    Json jb;
    jb["segment"] = b.segment;
    jb["alpha"] = b.alpha.to_string();
    jb["interval"] = Json::array({b.lo, b.hi});
    jb["x_affine"] = Json{{"const", vec_json(b.x_const)}, {"slope", vec_json(b.x_slope)}};
    jb["p_affine"] = Json{{"const", vec_json(b.p_const)}, {"slope", vec_json(b.p_slope)}};
    branches.push_back(std::move(jb));
  }
  j["branches"] = std::move(branches);
  Json continua = Json::array();
  for (const ContinuumEvent& ce : d.continua) {
    Json jc = to_json(ce.segment);
    jc["lambda"] = Json::array({ce.lo, ce.hi});
    continua.push_back(std::move(jc));
  }
  j["continua"] = std::move(continua);
  Json events = Json::array();
  for (const DiagramEvent& e : annotated) {
    Json je;
    je["lambda"] = e.lambda;
    je["kind"] = to_string(e.kind);
    je["count_before"] = e.count_before;
    je["count_after"] = e.count_after;
    if (!e.annotation.empty()) je["annotation"] = e.annotation;
    events.push_back(std::move(je));
  }
  j["events"] = std::move(events);
  Json counts = Json::array();
  for (const CountInterval& ci : d.counts) {
    Json jc;
    jc["interval"] = Json::array({ci.lo, ci.hi});
    if (ci.count < 0) jc["count"] = "continuum";
    else jc["count"] = ci.count;
    counts.push_back(std::move(jc));
  }
  j["counts"] = std::move(counts);
  return j;
}

Json to_json(const ParamLcp& p) {
  Json j = problem_to_json(p.m);
  if (p.q.slope.cwiseAbs().maxCoeff() == 0.0) {
    j["q"] = vec_json(p.q.constant);
  } else {
    j["q_const"] = vec_json(p.q.constant);
    j["q_slope"] = vec_json(p.q.slope);
  }
  return j;
}

static void write_row_values(std::ostream& os, const Vector& x, const Vector& z) {
  for (int i = 0; i < x.size(); ++i) os << "," << format_number(x[i]);
  for (int i = 0; i < z.size(); ++i) os << "," << format_number(z[i]);
}

static void write_header(std::ostream& os, int n, bool branch_col) {
  if (branch_col) os << "branch,";
  os << "l";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",z" << i;
  os << "\n";
}

void write_diagram_csv(std::ostream& os, const std::vector<SampleRow>& rows, int n) {
  write_header(os, n, /*branch_col=*/true);
  for (const SampleRow& r : rows) {
    os << r.branch_id << "," << format_number(r.lambda);
    write_row_values(os, r.x, r.z);
    os << "\n";
  }
}

std::vector<std::string> write_diagram_csv_split(
    const std::string& out_path, const std::vector<SampleRow>& rows, int n) {
  std::string stem = out_path, ext;
  if (const auto dot = out_path.rfind('.'); dot != std::string::npos &&
      out_path.find('/', dot) == std::string::npos) {
    stem = out_path.substr(0, dot);
    ext = out_path.substr(dot);
  }
  std::vector<std::string> written;
  std::ofstream out;
  int current = -1;
  for (const SampleRow& r : rows) {
    if (r.branch_id != current) {
      current = r.branch_id;
      const std::string name = stem + "_" + std::to_string(current + 1) + ext;
      out.close();
      out.open(name, std::ios::trunc);
      if (!out) throw std::runtime_error("cannot write file: " + name);
      written.push_back(name);
      write_header(out, n, /*branch_col=*/false);
    }
    out << format_number(r.lambda);
    write_row_values(out, r.x, r.z);
    out << "\n";
  }
  return written;
}

void write_solutions_csv(std::ostream& os, const EnumerationResult& r, int n) {
  os << "kind";
  for (int i = 1; i <= n; ++i) os << ",x" << i;
  for (int i = 1; i <= n; ++i) os << ",z" << i;
  for (int i = 1; i <= n; ++i) os << ",w" << i;
  os << ",witnesses,regularity\n";
  for (const SolutionPoint& s : r.isolated) {
    os << "isolated";
    for (int i = 0; i < n; ++i) os << "," << format_number(s.x[i]);
    for (int i = 0; i < n; ++i) os << "," << format_number(s.z[i]);
    for (int i = 0; i < n; ++i) os << "," << format_number(s.w[i]);
    os << ",\"";
    for (std::size_t k = 0; k < s.witnesses.size(); ++k)
      os << (k ? ";" : "") << s.witnesses[k].to_string();
    os << "\"," << to_string(s.regularity) << "\n";
  }
  for (const ContinuumSolution& c : r.continua) {
    os << "continuum";
    for (int i = 0; i < n; ++i) os << "," << format_number(c.base[i]);
    for (int i = 0; i < 2 * n; ++i) os << ",";
    os << ",\"" << c.alpha.to_string() << "\",\n";
  }
}

void write_surface_csv(std::ostream& os,
                       const std::vector<std::array<double, 3>>& rows) {
  os << "y1,y2,x1\n";
  for (const auto& r : rows)
    os << format_number(r[0]) << "," << format_number(r[1]) << ","
       << format_number(r[2]) << "\n";
}

}  // namespace lcp
