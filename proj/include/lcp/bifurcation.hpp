#pragma once

#include "lcp/solve.hpp"
#include "lcp/types.hpp"

namespace lcp {

/// Piecewise-linear path q(lambda) through waypoints. Segment i interpolates
/// affinely between waypoints i and i+1 over [breakpoints[i],
/// breakpoints[i+1]]; the default breakpoints partition [0,1] uniformly.
struct PwlPath {
  std::vector<Vector> waypoints;
  std::vector<double> breakpoints;

  static PwlPath from_waypoints(std::vector<Vector> pts, double lo = 0.0,
                                double hi = 1.0);

  int segments() const { return static_cast<int>(waypoints.size()) - 1; }
  double lo() const { return breakpoints.front(); }
  double hi() const { return breakpoints.back(); }
  Vector at(double lambda) const;
  /// Coefficients (u, v) with q(lambda) = u + v*lambda on segment i.
  std::pair<Vector, Vector> segment_affine(int i) const;
  void validate() const;
};

/// Maximal lambda-interval on one segment where cone alpha carries a
/// solution; both the cone coefficients p and the solution x are affine in
/// lambda on it.
struct SolutionBranch {
  int segment = 0;
  IndexSet alpha;
  double lo = 0.0, hi = 0.0;
  Vector x_const, x_slope;
  Vector p_const, p_slope;

  Vector x_at(double lambda) const { return x_const + lambda * x_slope; }
  Vector p_at(double lambda) const { return p_const + lambda * p_slope; }
  bool covers(double lambda, double slack = 1e-12) const {
    return lambda >= lo - slack && lambda <= hi + slack;
  }
};

/// Continuum of solutions met along the path; lo == hi for the generic case
/// of an isolated crossing of a degenerate cone.
struct ContinuumEvent {
  double lo = 0.0, hi = 0.0;
  ContinuumSolution segment;
};

enum class EventKind { CountChange, FaceCrossing, Continuum };

std::string to_string(EventKind k);

struct DiagramEvent {
  double lambda = 0.0;
  EventKind kind = EventKind::FaceCrossing;
  int count_before = 0;
  int count_after = 0;
  std::string annotation;
};

struct CountInterval {
  double lo = 0.0, hi = 0.0;
  int count = 0;  // -1 encodes a continuum across the interval
};

struct BifurcationDiagram {
  std::vector<SolutionBranch> branches;
  std::vector<ContinuumEvent> continua;
  std::vector<DiagramEvent> events;
  std::vector<CountInterval> counts;
  double merge_tol = 0.0;

  /// Number of distinct solutions at lambda (branch x's deduplicated).
  int solution_count_at(double lambda) const;
  /// Distinct branch solution values at lambda.
  std::vector<Vector> solutions_at(double lambda) const;
};

/// Closed-form branch tracing of LCP(m, q(lambda)) over the path: per
/// (segment, alpha) the feasibility interval comes from componentwise ratio
/// bounds of the affine inequalities p(lambda) >= 0, so interval endpoints
/// are exact. Degenerate cones contribute continuum events where the affine
/// consistency condition holds.
BifurcationDiagram trace_path(const Matrix& m, const PwlPath& path,
                              double tol_base = kDefaultTol);

/// Annotated copy of the diagram events: count changes carry the regularity
/// classification of the solutions meeting them, continuum events are marked
/// as degenerate-cone bifurcations, count-preserving crossings as regular.
std::vector<DiagramEvent> detect_bifurcations(const BifurcationDiagram& d,
                                              const Matrix& m,
                                              double tol_base = kDefaultTol);

struct SampleRow {
  int branch_id = 0;
  IndexSet alpha;
  double lambda = 0.0;
  Vector x;
  Vector z;
};

/// Uniform lambda grid per branch interval; continua sampled along their
/// param box at the event lambda.
std::vector<SampleRow> sample_diagram(const BifurcationDiagram& d, int samples);

/// Samples of the folded graph {(f(x)_1, f(x)_2, x_1)} of a planar map over
/// a rectangular x-grid.
struct GridSpec {
  double lo = -1.0, hi = 1.0, step = 0.1;
};
std::vector<std::array<double, 3>> sample_pwl_graph(const Matrix& m,
                                                    const GridSpec& grid);

}  // namespace lcp
