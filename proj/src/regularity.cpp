#include "lcp/regularity.hpp"

#include "lcp/core.hpp"

#include <cmath>

namespace lcp {

namespace {

// Roots of a*t^2 + b*t + c in [0,1], robust to a ~ 0.
bool quadratic_root_in_unit_interval(double a, double b, double c, double eps) {
  if (std::abs(a) <= eps) {
    if (std::abs(b) <= eps) return std::abs(c) <= eps;
    const double t = -c / b;
    return t >= 0.0 && t <= 1.0;
  }
  const double disc = b * b - 4.0 * a * c;
  if (disc < 0.0) return false;
  const double sq = std::sqrt(disc);
  for (double t : {(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)})
    if (t >= 0.0 && t <= 1.0) return true;
  return false;
}

double det2(const Matrix& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

}  // namespace

JacobianFamily generalized_jacobian(const Matrix& m, const Vector& x,
                                    double tol_base) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols() || x.size() != n)
    throw std::invalid_argument("generalized_jacobian: dimension mismatch");
  if (!x.allFinite())
    throw std::invalid_argument("generalized_jacobian: x must be finite");
  const double tol = scaled_tol(m, x, tol_base);

  // Coordinates within tol of zero belong to both sides.
  std::uint32_t mandatory = 0;
  std::vector<int> free_bits;
  for (int i = 0; i < n; ++i) {
    if (x[i] < -tol) mandatory |= 1u << i;
    else if (x[i] <= tol) free_bits.push_back(i);
  }

  JacobianFamily fam;
  fam.point = x;
  for (std::uint32_t sub = 0; sub < (1u << free_bits.size()); ++sub) {
    std::uint32_t bits = mandatory;
    for (std::size_t j = 0; j < free_bits.size(); ++j)
      if ((sub >> j) & 1u) bits |= 1u << free_bits[j];
    fam.active.emplace_back(bits, n);
  }
  std::sort(fam.active.begin(), fam.active.end());
  for (const IndexSet& alpha : fam.active)
    fam.vertices.push_back(complementary_matrix(m, alpha, -1));
  return fam;
}

Regularity classify_regularity(const Matrix& m, const Vector& x,
                               double tol_base) {
  const JacobianFamily fam = generalized_jacobian(m, x, tol_base);
  const int n = static_cast<int>(m.rows());
  const double tol = scaled_tol(m, tol_base);

  std::vector<double> dets;
  dets.reserve(fam.vertices.size());
  for (const Matrix& v : fam.vertices) dets.push_back(v.determinant());

  bool has_pos = false, has_neg = false;
  for (double d : dets) {
    if (std::abs(d) <= tol) return Regularity::Singular;
    (d > 0.0 ? has_pos : has_neg) = true;
  }
  if (has_pos && has_neg) return Regularity::Singular;  // det vanishes inside
  if (fam.singleton()) return Regularity::Regular;
  if (n > 2) return Regularity::Unknown;

  // n <= 2: along any segment (1-t)A + tB the determinant is a quadratic in
  // t, so the maximal-rank question is decided exactly.
  for (std::size_t i = 0; i < fam.vertices.size(); ++i) {
    for (std::size_t j = i + 1; j < fam.vertices.size(); ++j) {
      const Matrix& a = fam.vertices[i];
      const Matrix d = fam.vertices[j] - a;
      if (n == 1) {
        if (quadratic_root_in_unit_interval(0.0, d(0, 0), a(0, 0), tol))
          return Regularity::Singular;
        continue;
      }
      const double c2 = det2(d);
      const double c1 = a(0, 0) * d(1, 1) + d(0, 0) * a(1, 1) -
                        a(0, 1) * d(1, 0) - d(0, 1) * a(1, 0);
      const double c0 = det2(a);
      if (quadratic_root_in_unit_interval(c2, c1, c0, tol))
        return Regularity::Singular;
    }
  }
  return Regularity::Regular;
}

}  // namespace lcp
