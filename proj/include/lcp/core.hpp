#pragma once

#include "lcp/types.hpp"

namespace lcp {

/// Complementary matrix of m for the index set alpha.
///
/// Column j is (-sign)*m.col(j) for j in alpha and the identity column
/// otherwise, so sign=+1 builds C_M(alpha) and sign=-1 builds C_{-M}(alpha).
Matrix complementary_matrix(const Matrix& m, const IndexSet& alpha, int sign = +1);

/// The signed-identity matrix C_I(alpha): -e_j for j in alpha, e_j otherwise.
Matrix orthant_matrix(const IndexSet& alpha, int n);

/// Orthant address of x under the tie rule x_i = 0 -> i in alpha.
IndexSet orthant_of(const Vector& x);

/// The piecewise-linear map f_M: acts as C_{-M}(alpha) on the orthant of x.
/// Total and continuous; the tie rule is value-irrelevant across faces.
Vector pwl_apply(const Matrix& m, const Vector& x);

/// Split x into the complementary pair z = max(0,-x), w = max(0,x).
std::pair<Vector, Vector> x_to_zw(const Vector& x);

/// Recombine a complementary pair into x = w - z.
/// Throws if z or w is negative or complementarity is violated beyond tol.
Vector zw_to_x(const Vector& z, const Vector& w, double tol_base = kDefaultTol);

}  // namespace lcp
