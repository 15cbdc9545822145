#include "lcp/bifurcation.hpp"

#include "lcp/core.hpp"
#include "lcp/regularity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcp {

namespace {

constexpr double kEventClusterTol = 1e-9;

}  // namespace

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::CountChange: return "count-change";
    case EventKind::FaceCrossing: return "face-crossing";
    default: return "continuum";
  }
}

PwlPath PwlPath::from_waypoints(std::vector<Vector> pts, double lo, double hi) {
  PwlPath p;
  p.waypoints = std::move(pts);
  const int k = static_cast<int>(p.waypoints.size()) - 1;
  if (k < 1) throw std::invalid_argument("PwlPath: need at least two waypoints");
  if (!(hi > lo)) throw std::invalid_argument("PwlPath: empty domain");
  for (int i = 0; i <= k; ++i)
    p.breakpoints.push_back(lo + (hi - lo) * static_cast<double>(i) / k);
  p.validate();
  return p;
}

void PwlPath::validate() const {
  if (waypoints.size() < 2)
    throw std::invalid_argument("PwlPath: need at least two waypoints");
  if (breakpoints.size() != waypoints.size())
    throw std::invalid_argument("PwlPath: breakpoints/waypoints size mismatch");
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    if (!(breakpoints[i] < breakpoints[i + 1]))
      throw std::invalid_argument("PwlPath: breakpoints must be increasing");
  const auto n = waypoints.front().size();
  for (const Vector& w : waypoints) {
    if (w.size() != n)
      throw std::invalid_argument("PwlPath: waypoint dimensions differ");
    if (!w.allFinite())
      throw std::invalid_argument("PwlPath: waypoints must be finite");
  }
}

Vector PwlPath::at(double lambda) const {
  const int k = segments();
  int i = 0;
  while (i + 1 < k && lambda >= breakpoints[i + 1]) ++i;
  const auto [u, v] = segment_affine(i);
  return u + lambda * v;
}

std::pair<Vector, Vector> PwlPath::segment_affine(int i) const {
  const double l0 = breakpoints[i], l1 = breakpoints[i + 1];
  const Vector slope = (waypoints[i + 1] - waypoints[i]) / (l1 - l0);
  return {waypoints[i] - l0 * slope, slope};
}

std::vector<Vector> BifurcationDiagram::solutions_at(double lambda) const {
  std::vector<Vector> xs;
  for (const SolutionBranch& b : branches) {
    if (!b.covers(lambda)) continue;
    Vector x = b.x_at(lambda);
    bool dup = false;
    for (const Vector& y : xs)
      if ((x - y).cwiseAbs().maxCoeff() <= merge_tol) { dup = true; break; }
    if (!dup) xs.push_back(std::move(x));
  }
  return xs;
}

int BifurcationDiagram::solution_count_at(double lambda) const {
  return static_cast<int>(solutions_at(lambda).size());
}

BifurcationDiagram trace_path(const Matrix& m, const PwlPath& path,
                              double tol_base) {
  path.validate();
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols())
    throw std::invalid_argument("trace_path: matrix must be square");
  if (path.waypoints.front().size() != n)
    throw std::invalid_argument("trace_path: path dimension mismatch");
  if (n > kEnumerationCap)
    throw std::invalid_argument("trace_path: dimension over enumeration cap");

  double path_scale = problem_scale(m);
  for (const Vector& w : path.waypoints)
    path_scale = std::max(path_scale, w.cwiseAbs().maxCoeff());
  const double tol = tol_base * path_scale;

  BifurcationDiagram d;
  d.merge_tol = 10.0 * tol;

  for (int seg = 0; seg < path.segments(); ++seg) {
    const auto [qu, qv] = path.segment_affine(seg);
    const double seg_lo = path.breakpoints[seg];
    const double seg_hi = path.breakpoints[seg + 1];

    for (const IndexSet& alpha : IndexSet::all_subsets(n)) {
      const Matrix c = complementary_matrix(m, alpha, +1);
      Eigen::PartialPivLU<Matrix> lu(c);
      const double det = lu.determinant();

      if (std::abs(det) > tol) {
        const Vector pc = lu.solve(qu);
        const Vector pd = lu.solve(qv);
        // Feasibility interval of p(l) = pc + l*pd >= 0 within the segment.
        double lo = seg_lo, hi = seg_hi;
        bool feasible = true;
        for (int i = 0; i < n && feasible; ++i) {
          if (std::abs(pd[i]) <= tol / std::max(1.0, seg_hi - seg_lo)) {
            if (pc[i] + 0.5 * (seg_lo + seg_hi) * pd[i] < -tol) feasible = false;
            continue;
          }
          const double root = -pc[i] / pd[i];
          if (pd[i] > 0.0) lo = std::max(lo, root);
          else hi = std::min(hi, root);
        }
        if (!feasible || lo > hi) continue;
        SolutionBranch b;
        b.segment = seg;
        b.alpha = alpha;
        b.lo = lo;
        b.hi = hi;
        b.p_const = pc;
        b.p_slope = pd;
        const Matrix ci = orthant_matrix(alpha, n);
        b.x_const = ci * pc;
        b.x_slope = ci * pd;
        d.branches.push_back(std::move(b));
        continue;
      }

      // Degenerate cone: q(l) in range(C) is an affine condition in l, so it
      // holds at an isolated l*, on the whole segment, or nowhere.
      Eigen::FullPivLU<Matrix> flu(c);
      flu.setThreshold(1e-12);
      if (flu.rank() == n) continue;  // numerically ambiguous; skip
      const Matrix img = flu.image(c);
      const Matrix proj =
          img.cols() > 0
              ? Matrix(img * (img.transpose() * img).ldlt().solve(img.transpose()))
              : Matrix::Zero(n, n);
      const Vector gu = qu - proj * qu;
      const Vector gv = qv - proj * qv;

      std::vector<std::array<double, 2>> windows;
      if (gv.cwiseAbs().maxCoeff() <= tol / std::max(1.0, std::abs(seg_hi) + std::abs(seg_lo))) {
        const double mid = 0.5 * (seg_lo + seg_hi);
        if ((gu + mid * gv).cwiseAbs().maxCoeff() <= tol)
          windows.push_back({seg_lo, seg_hi});
      } else {
        const double lstar = -gv.dot(gu) / gv.dot(gv);
        if (lstar >= seg_lo - tol && lstar <= seg_hi + tol &&
            (gu + lstar * gv).cwiseAbs().maxCoeff() <= tol) {
          const double lc = std::clamp(lstar, seg_lo, seg_hi);
          windows.push_back({lc, lc});
        }
      }
      for (const auto& w : windows) {
        const double lrep = 0.5 * (w[0] + w[1]);
        auto set = solve_singular_cone(c, qu + lrep * qv, tol);
        if (!set) continue;
        if (set->dim == 0) {
          // Pinched to a point: treat as a zero-length branch.
          if (set->p0.minCoeff() < -tol) continue;
          SolutionBranch b;
          b.segment = seg;
          b.alpha = alpha;
          b.lo = b.hi = lrep;
          b.p_const = set->p0;
          b.p_slope = Vector::Zero(n);
          const Matrix ci = orthant_matrix(alpha, n);
          b.x_const = ci * set->p0;
          b.x_slope = Vector::Zero(n);
          d.branches.push_back(std::move(b));
          continue;
        }
        ContinuumEvent ev;
        ev.lo = w[0];
        ev.hi = w[1];
        ev.segment.alpha = alpha;
        const Matrix ci = orthant_matrix(alpha, n);
        ev.segment.base = ci * set->p0;
        for (int j = 0; j < set->dim; ++j)
          ev.segment.directions.push_back(ci * set->nullspace.col(j));
        ev.segment.param_box = set->param_box;
        ev.segment.dim = set->dim;
        d.continua.push_back(std::move(ev));
      }
    }
  }

  // Zero-length branches whose point is already covered by a proper branch
  // carry no information; drop them.
  {
    std::vector<char> drop(d.branches.size(), 0);
    for (std::size_t i = 0; i < d.branches.size(); ++i) {
      const SolutionBranch& b = d.branches[i];
      if (b.hi - b.lo > tol) continue;
      for (std::size_t j = 0; j < d.branches.size(); ++j) {
        if (j == i) continue;
        const SolutionBranch& other = d.branches[j];
        if (other.hi - other.lo <= tol) continue;
        if (other.covers(b.lo, tol) &&
            (other.x_at(b.lo) - b.x_at(b.lo)).cwiseAbs().maxCoeff() <=
                d.merge_tol) {
          drop[i] = 1;
          break;
        }
      }
    }
    std::vector<SolutionBranch> kept;
    kept.reserve(d.branches.size());
    for (std::size_t i = 0; i < d.branches.size(); ++i)
      if (!drop[i]) kept.push_back(std::move(d.branches[i]));
    d.branches = std::move(kept);
  }

  // Candidate event locations: branch endpoints and continuum lambdas,
  // excluding the path domain ends.
  std::vector<double> cand;
  for (const SolutionBranch& b : d.branches) {
    cand.push_back(b.lo);
    cand.push_back(b.hi);
  }
  for (const ContinuumEvent& ce : d.continua) {
    cand.push_back(ce.lo);
    cand.push_back(ce.hi);
  }
  std::erase_if(cand, [&](double l) {
    return l <= path.lo() + kEventClusterTol || l >= path.hi() - kEventClusterTol;
  });
  std::sort(cand.begin(), cand.end());
  std::vector<double> locs;
  for (double l : cand)
    if (locs.empty() || l - locs.back() > kEventClusterTol) locs.push_back(l);

  for (std::size_t i = 0; i < locs.size(); ++i) {
    const double l = locs[i];
    double eps = 1e-6;
    eps = std::min(eps, 0.5 * (l - (i == 0 ? path.lo() : locs[i - 1])));
    eps = std::min(eps,
                   0.5 * ((i + 1 == locs.size() ? path.hi() : locs[i + 1]) - l));

    DiagramEvent ev;
    ev.lambda = l;
    ev.count_before = d.solution_count_at(l - eps);
    ev.count_after = d.solution_count_at(l + eps);

    const bool has_continuum =
        std::any_of(d.continua.begin(), d.continua.end(), [&](const ContinuumEvent& ce) {
          return l >= ce.lo - kEventClusterTol && l <= ce.hi + kEventClusterTol;
        });
    bool face_touch = false;
    for (const SolutionBranch& b : d.branches) {
      if (!b.covers(l, kEventClusterTol)) continue;
      if (b.p_at(l).minCoeff() <= tol) { face_touch = true; break; }
    }

    if (has_continuum) ev.kind = EventKind::Continuum;
    else if (ev.count_before != ev.count_after) ev.kind = EventKind::CountChange;
    else if (face_touch) ev.kind = EventKind::FaceCrossing;
    else continue;  // segment-kink artifact, nothing crosses here
    d.events.push_back(std::move(ev));
  }

  // Piecewise-constant count over the domain.
  std::vector<double> cuts = {path.lo()};
  for (const DiagramEvent& e : d.events) cuts.push_back(e.lambda);
  cuts.push_back(path.hi());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    CountInterval ci;
    ci.lo = cuts[i];
    ci.hi = cuts[i + 1];
    const double mid = 0.5 * (ci.lo + ci.hi);
    const bool cont_inside = std::any_of(
        d.continua.begin(), d.continua.end(), [&](const ContinuumEvent& ce) {
          return ce.hi - ce.lo > kEventClusterTol && mid >= ce.lo && mid <= ce.hi;
        });
    ci.count = cont_inside ? -1 : d.solution_count_at(mid);
    d.counts.push_back(ci);
  }
  return d;
}

std::vector<DiagramEvent> detect_bifurcations(const BifurcationDiagram& d,
                                              const Matrix& m, double tol_base) {
  std::vector<DiagramEvent> out = d.events;
  for (DiagramEvent& ev : out) {
    switch (ev.kind) {
      case EventKind::Continuum:
        ev.annotation = "bifurcation (degenerate cone): continuum of solutions";
        break;
      case EventKind::FaceCrossing:
        ev.annotation = "regular crossing";
        break;
      case EventKind::CountChange: {
        bool any_singular = false, any_unknown = false;
        for (const Vector& x : d.solutions_at(ev.lambda)) {
          switch (classify_regularity(m, x, tol_base)) {
            case Regularity::Singular: any_singular = true; break;
            case Regularity::Unknown: any_unknown = true; break;
            default: break;
          }
        }
        ev.annotation = "bifurcation: count " + std::to_string(ev.count_before) +
                        " -> " + std::to_string(ev.count_after) +
                        "; meeting solutions " +
                        (any_singular ? "singular"
                                      : (any_unknown ? "unknown" : "regular"));
        break;
      }
    }
  }
  return out;
}

std::vector<SampleRow> sample_diagram(const BifurcationDiagram& d, int samples) {
  if (samples < 2) throw std::invalid_argument("sample_diagram: samples must be >= 2");
  std::vector<SampleRow> rows;
  int id = 0;
  for (const SolutionBranch& b : d.branches) {
    const int count = (b.hi - b.lo) < 1e-15 ? 1 : samples;
    for (int j = 0; j < count; ++j) {
      const double l =
          count == 1 ? b.lo : b.lo + (b.hi - b.lo) * j / (samples - 1);
      SampleRow row;
      row.branch_id = id;
      row.alpha = b.alpha;
      row.lambda = l;
      row.x = b.x_at(l);
      row.z = (-row.x).cwiseMax(0.0);
      rows.push_back(std::move(row));
    }
    ++id;
  }
  for (const ContinuumEvent& ce : d.continua) {
    if (ce.segment.dim != 1 || !std::isfinite(ce.segment.param_box[0][0]) ||
        !std::isfinite(ce.segment.param_box[0][1])) {
      ++id;
      continue;  // higher-dimensional or unbounded families are not gridded
    }
    const auto [t0, t1] = ce.segment.param_box[0];
    for (int j = 0; j < samples; ++j) {
      const double t = t0 + (t1 - t0) * j / (samples - 1);
      SampleRow row;
      row.branch_id = id;
      row.alpha = ce.segment.alpha;
      row.lambda = 0.5 * (ce.lo + ce.hi);
      row.x = ce.segment.x_at({t});
      row.z = (-row.x).cwiseMax(0.0);
      rows.push_back(std::move(row));
    }
    ++id;
  }
  return rows;
}

std::vector<std::array<double, 3>> sample_pwl_graph(const Matrix& m,
                                                    const GridSpec& grid) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument("sample_pwl_graph: matrix must be 2x2");
  if (!(grid.step > 0.0) || !(grid.hi >= grid.lo))
    throw std::invalid_argument("sample_pwl_graph: bad grid spec");
  std::vector<std::array<double, 3>> out;
  const int steps = static_cast<int>(std::floor((grid.hi - grid.lo) / grid.step + 1e-12));
  for (int i = 0; i <= steps; ++i) {
    const double x1 = grid.lo + i * grid.step;
    for (int j = 0; j <= steps; ++j) {
      const double x2 = grid.lo + j * grid.step;
      Vector x(2);
      x << x1, x2;
      const Vector y = pwl_apply(m, x);
      out.push_back({y[0], y[1], x1});
    }
  }
  return out;
}

}  // namespace lcp
