#pragma once

#include "lcp/types.hpp"

#include <array>
#include <optional>

namespace lcp {

enum class Regularity { Regular, Singular, Unknown };

std::string to_string(Regularity r);

/// An isolated solution of LCP(M,q), carried in all three coordinate systems.
struct SolutionPoint {
  Vector x;
  Vector z;
  Vector w;
  std::vector<IndexSet> witnesses;  // sorted by mask
  Regularity regularity = Regularity::Unknown;
  bool ill_conditioned = false;  // some witness cone has near-zero determinant
};

/// A one-parameter (or higher) family of solutions produced by a degenerate
/// complementary cone: x(t) = base + sum_j t_j * directions[j], t in the
/// param box. For dim >= 2 the box bounds each parameter with the others at
/// zero and is not a tight description of the feasible set.
struct ContinuumSolution {
  IndexSet alpha;
  Vector base;
  std::vector<Vector> directions;
  std::vector<std::array<double, 2>> param_box;
  int dim = 1;

  Vector x_at(const std::vector<double>& t) const;
  /// Endpoints of a dim-1 bounded segment.
  std::pair<Vector, Vector> endpoints() const;
};

struct EnumerationResult {
  std::vector<SolutionPoint> isolated;
  std::vector<ContinuumSolution> continua;

  bool empty() const { return isolated.empty() && continua.empty(); }
};

/// Feasible set {p >= 0 : c p = q} of a singular complementary matrix,
/// described in p coordinates. Empty optional when q is not in the range of c
/// or the nonnegativity constraints are infeasible.
struct SingularConeSet {
  Vector p0;
  Matrix nullspace;  // n x dim, columns normalized
  std::vector<std::array<double, 2>> param_box;
  int dim = 0;  // 0 means the feasible set pinched to the single point p0
};
std::optional<SingularConeSet> solve_singular_cone(const Matrix& c,
                                                   const Vector& q, double tol);

/// All isolated solutions and continuum segments of LCP(M,q) by complete
/// enumeration of the 2^n complementary cones. Output order is deterministic:
/// by canonical alpha mask, then lexicographic x.
EnumerationResult solve_enumeration(const LcpProblem& problem,
                                    double tol_base = kDefaultTol);

/// Residual certificate for a claimed solution.
struct SolutionReport {
  double nonnegativity_violation = 0.0;
  double complementarity_gap = 0.0;
  double linear_residual = 0.0;
  bool certified = false;

  double worst() const {
    return std::max({nonnegativity_violation, complementarity_gap, linear_residual});
  }
};

SolutionReport verify_solution(const LcpProblem& problem, const SolutionPoint& s,
                               double tol_base = kDefaultTol);

/// Fill the regularity field of each isolated solution (see regularity.hpp).
void annotate_regularity(const LcpProblem& problem,
                         std::vector<SolutionPoint>& points,
                         double tol_base = kDefaultTol);

}  // namespace lcp
