#include "lcp/core.hpp"

#include <cmath>

namespace lcp {

IndexSet IndexSet::parse(const std::string& s, int n) {
  if (s.size() < 2 || s.front() != '{' || s.back() != '}')
    throw std::invalid_argument("IndexSet: expected \"{i,j,...}\", got " + s);
  std::uint32_t bits = 0;
  std::size_t pos = 1;
  while (pos < s.size() - 1) {
    std::size_t next = s.find(',', pos);
    if (next == std::string::npos || next > s.size() - 1) next = s.size() - 1;
    int v = std::stoi(s.substr(pos, next - pos));
    if (v < 1 || v > n)
      throw std::invalid_argument("IndexSet: element out of range in " + s);
    bits |= 1u << (v - 1);
    pos = next + 1;
  }
  return IndexSet(bits, n);
}

Matrix complementary_matrix(const Matrix& m, const IndexSet& alpha, int sign) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols())
    throw std::invalid_argument("complementary_matrix: matrix must be square");
  if (alpha.dimension() != n)
    throw std::invalid_argument("complementary_matrix: alpha dimension mismatch");
  Matrix c = Matrix::Identity(n, n);
  for (int j = 0; j < n; ++j)
    if (alpha.contains(j)) c.col(j) = -sign * m.col(j);
  return c;
}

Matrix orthant_matrix(const IndexSet& alpha, int n) {
  if (alpha.dimension() != n)
    throw std::invalid_argument("orthant_matrix: alpha dimension mismatch");
  Matrix c = Matrix::Identity(n, n);
  for (int j = 0; j < n; ++j)
    if (alpha.contains(j)) c(j, j) = -1.0;
  return c;
}

IndexSet orthant_of(const Vector& x) {
  const int n = static_cast<int>(x.size());
  std::uint32_t bits = 0;
  for (int i = 0; i < n; ++i)
    if (x[i] <= 0.0) bits |= 1u << i;
  return IndexSet(bits, n);
}

Vector pwl_apply(const Matrix& m, const Vector& x) {
  if (m.rows() != m.cols() || m.rows() != x.size())
    throw std::invalid_argument("pwl_apply: dimension mismatch");
  const IndexSet alpha = orthant_of(x);
  return complementary_matrix(m, alpha, -1) * x;
}

std::pair<Vector, Vector> x_to_zw(const Vector& x) {
  Vector z = (-x).cwiseMax(0.0);
  Vector w = x.cwiseMax(0.0);
  return {std::move(z), std::move(w)};
}

Vector zw_to_x(const Vector& z, const Vector& w, double tol_base) {
  if (z.size() != w.size())
    throw std::invalid_argument("zw_to_x: z and w must have equal length");
  const double scale = std::max({1.0, z.size() ? z.cwiseAbs().maxCoeff() : 0.0,
                                 w.size() ? w.cwiseAbs().maxCoeff() : 0.0});
  const double tol = tol_base * scale;
  if (z.size() > 0 && (z.minCoeff() < -tol || w.minCoeff() < -tol))
    throw std::invalid_argument("zw_to_x: negative entry in complementary pair");
  if (z.size() > 0 && std::abs(z.dot(w)) > tol)
    throw std::invalid_argument("zw_to_x: complementarity violation above tolerance");
  return w - z;
}

}  // namespace lcp
