#include "lcp/solve.hpp"

#include "lcp/core.hpp"
#include "lcp/regularity.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

namespace lcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cones with |det| in (tol, kIllConditionedFactor * scale) are solved as
// nonsingular but flagged, since bifurcation-adjacent runs hit them often.
constexpr double kIllConditionedFactor = 1e-6;

bool lex_less(const Vector& a, const Vector& b, double tol) {
  for (int i = 0; i < a.size(); ++i) {
    if (a[i] < b[i] - tol) return true;
    if (a[i] > b[i] + tol) return false;
  }
  return false;
}

}  // namespace

std::string to_string(Regularity r) {
  switch (r) {
    case Regularity::Regular: return "regular";
    case Regularity::Singular: return "singular";
    default: return "unknown";
  }
}

Vector ContinuumSolution::x_at(const std::vector<double>& t) const {
  Vector x = base;
  for (std::size_t j = 0; j < directions.size(); ++j) x += t[j] * directions[j];
  return x;
}

std::pair<Vector, Vector> ContinuumSolution::endpoints() const {
  if (dim != 1 || param_box.size() != 1)
    throw std::logic_error("ContinuumSolution::endpoints: requires dim 1");
  if (!std::isfinite(param_box[0][0]) || !std::isfinite(param_box[0][1]))
    throw std::logic_error("ContinuumSolution::endpoints: unbounded segment");
  return {x_at({param_box[0][0]}), x_at({param_box[0][1]})};
}

std::optional<SingularConeSet> solve_singular_cone(const Matrix& c,
                                                   const Vector& q, double tol) {
  const int n = static_cast<int>(c.rows());

  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(c);
  cod.setThreshold(1e-12);
  Eigen::FullPivLU<Matrix> lu(c);
  lu.setThreshold(1e-12);
  if (lu.rank() == n) {
    // Determinant-based caller said singular but pivots disagree; report the
    // pinched point so the caller can fall back to an isolated solve.
    SingularConeSet set;
    set.p0 = lu.solve(q);
    set.dim = 0;
    return set;
  }

  Vector p0 = cod.solve(q);
  if ((c * p0 - q).cwiseAbs().maxCoeff() > tol) return std::nullopt;  // q not in range

  Matrix kernel = lu.kernel();
  const int d = static_cast<int>(kernel.cols());
  for (int j = 0; j < d; ++j) kernel.col(j).normalize();

  SingularConeSet set;
  set.nullspace = kernel;
  set.dim = d;

  // Per-parameter bounds of {t : p0 + K t >= 0}, the other parameters held at
  // zero. Exact for d = 1 (componentwise ratio bounds).
  std::vector<std::array<double, 2>> box;
  for (int j = 0; j < d; ++j) {
    double lo = -kInf, hi = kInf;
    bool feasible = true;
    for (int i = 0; i < n; ++i) {
      const double v = kernel(i, j);
      const double b = p0[i];
      if (std::abs(v) <= 1e-14) {
        if (b < -tol) feasible = false;
        continue;
      }
      const double r = -b / v;
      if (v > 0.0) lo = std::max(lo, r);
      else hi = std::min(hi, r);
    }
    if (!feasible || lo > hi + tol) return std::nullopt;
    if (lo > hi) { const double m = 0.5 * (lo + hi); lo = hi = m; }
    box.push_back({lo + 0.0, hi + 0.0});  // normalize -0
  }

  set.p0 = std::move(p0);
  set.param_box = std::move(box);
  // A box pinched to a point in every direction is an isolated solution.
  bool pinched = true;
  for (const auto& b : set.param_box)
    if (!(std::isfinite(b[0]) && std::isfinite(b[1]) && b[1] - b[0] <= tol))
      pinched = false;
  if (pinched) {
    for (std::size_t j = 0; j < set.param_box.size(); ++j)
      set.p0 += 0.5 * (set.param_box[j][0] + set.param_box[j][1]) * set.nullspace.col(j);
    set.dim = 0;
  }
  return set;
}

EnumerationResult solve_enumeration(const LcpProblem& problem, double tol_base) {
  problem.validate();
  const int n = problem.n();
  if (n > kEnumerationCap)
    throw std::invalid_argument("solve_enumeration: dimension over enumeration cap");
  const Matrix& m = problem.m;
  const Vector& q = problem.q;
  const double scale = problem_scale(m, q);
  const double tol = tol_base * scale;

  struct Candidate {
    IndexSet alpha;
    Vector x;
    bool ill = false;
  };
  std::vector<Candidate> candidates;
  EnumerationResult result;

  for (const IndexSet& alpha : IndexSet::all_subsets(n)) {
    const Matrix c = complementary_matrix(m, alpha, +1);
    Eigen::PartialPivLU<Matrix> lu(c);
    const double det = lu.determinant();

    if (std::abs(det) > tol) {
      Vector p = lu.solve(q);
      if (p.minCoeff() >= -tol) {
        Candidate cand;
        cand.alpha = alpha;
        cand.x = orthant_matrix(alpha, n) * p;
        cand.ill = std::abs(det) < kIllConditionedFactor * scale;
        candidates.push_back(std::move(cand));
      }
      continue;
    }

    auto set = solve_singular_cone(c, q, tol);
    if (!set) continue;
    if (set->dim == 0) {
      if (set->p0.minCoeff() >= -tol) {
        Candidate cand;
        cand.alpha = alpha;
        cand.x = orthant_matrix(alpha, n) * set->p0;
        cand.ill = true;
        candidates.push_back(std::move(cand));
      }
      continue;
    }
    ContinuumSolution cont;
    cont.alpha = alpha;
    const Matrix ci = orthant_matrix(alpha, n);
    cont.base = ci * set->p0;
    for (int j = 0; j < set->dim; ++j)
      cont.directions.push_back(ci * set->nullspace.col(j));
    cont.param_box = set->param_box;
    cont.dim = set->dim;
    result.continua.push_back(std::move(cont));
  }

  // Merge candidates with coinciding x; boundary solutions legitimately
  // appear under several alpha.
  const double merge_tol = 10.0 * tol;
  std::vector<SolutionPoint> points;
  for (const Candidate& cand : candidates) {
    bool merged = false;
    for (SolutionPoint& pt : points) {
      if ((pt.x - cand.x).cwiseAbs().maxCoeff() <= merge_tol) {
        pt.witnesses.push_back(cand.alpha);
        pt.ill_conditioned = pt.ill_conditioned || cand.ill;
        merged = true;
        break;
      }
    }
    if (merged) continue;
    SolutionPoint pt;
    pt.x = cand.x;
    auto [z, w] = x_to_zw(cand.x);
    pt.z = std::move(z);
    pt.w = std::move(w);
    pt.witnesses = {cand.alpha};
    pt.ill_conditioned = cand.ill;
    points.push_back(std::move(pt));
  }
  for (SolutionPoint& pt : points)
    std::sort(pt.witnesses.begin(), pt.witnesses.end());
  std::sort(points.begin(), points.end(),
            [&](const SolutionPoint& a, const SolutionPoint& b) {
              if (a.witnesses.front().bits() != b.witnesses.front().bits())
                return a.witnesses.front().bits() < b.witnesses.front().bits();
              return lex_less(a.x, b.x, tol);
            });
  result.isolated = std::move(points);
  return result;
}

SolutionReport verify_solution(const LcpProblem& problem, const SolutionPoint& s,
                               double tol_base) {
  SolutionReport rep;
  const double tol = scaled_tol(problem.m, problem.q, tol_base);
  const double neg_z = s.z.size() ? -s.z.minCoeff() : 0.0;
  const double neg_w = s.w.size() ? -s.w.minCoeff() : 0.0;
  rep.nonnegativity_violation = std::max({0.0, neg_z, neg_w});
  rep.complementarity_gap = std::abs(s.z.dot(s.w));
  rep.linear_residual =
      (s.w - problem.m * s.z - problem.q).cwiseAbs().maxCoeff();
  rep.certified = rep.worst() <= tol;
  return rep;
}

void annotate_regularity(const LcpProblem& problem,
                         std::vector<SolutionPoint>& points, double tol_base) {
  for (SolutionPoint& pt : points)
    pt.regularity = classify_regularity(problem.m, pt.x, tol_base);
}

}  // namespace lcp
