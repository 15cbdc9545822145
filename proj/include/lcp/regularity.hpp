#pragma once

#include "lcp/solve.hpp"
#include "lcp/types.hpp"

namespace lcp {

/// Generalized Jacobian of f_M at a point: the convex hull of the linear
/// pieces C_{-M}(alpha) over every closed orthant containing the point.
struct JacobianFamily {
  Vector point;
  std::vector<IndexSet> active;  // canonical mask order
  std::vector<Matrix> vertices;  // C_{-M}(alpha) per active alpha

  bool singleton() const { return vertices.size() == 1; }
};

JacobianFamily generalized_jacobian(const Matrix& m, const Vector& x,
                                    double tol_base = kDefaultTol);

/// Maximal-rank test of the generalized Jacobian at x.
///
/// Singular when a vertex is singular, two vertex determinants have opposite
/// signs, or (n <= 2) the determinant vanishes along a segment between two
/// vertices. Exact for n <= 2; for n >= 3 same-sign nonsingular vertices give
/// Unknown (the full hull is not decided).
Regularity classify_regularity(const Matrix& m, const Vector& x,
                               double tol_base = kDefaultTol);

}  // namespace lcp
