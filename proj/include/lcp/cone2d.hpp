#pragma once

#include "lcp/types.hpp"

namespace lcp {

/// Rays closer than this (radians) are merged into one arrangement ray.
inline constexpr double kAngleTol = 1e-9;

/// One ray of a planar arrangement: unit direction, angle in [0,2pi), and
/// which of the four generator columns (0: e1, 1: e2, 2: -M.col(0),
/// 3: -M.col(1)) lie on it.
struct Ray {
  Eigen::Vector2d dir;
  double angle = 0.0;
  std::vector<int> generators;
};

/// Deduplicated, angle-sorted rays spanned by the columns of [I -M].
struct RayArrangement {
  std::vector<Ray> rays;

  /// Index of the ray within kAngleTol of the given angle, or -1.
  int ray_at(double angle) const;
  /// Index of the open sector (ray i -> ray i+1, cyclically) containing the
  /// angle; the angle must not lie on a ray.
  int sector_of(double angle) const;
  /// Midpoint direction of sector i.
  Eigen::Vector2d sector_midpoint(int i) const;
  int size() const { return static_cast<int>(rays.size()); }
};

/// Cyclic coverage profile of a planar cone configuration: for each open
/// angular sector, the number of non-degenerate complementary cones covering
/// it, plus a flag per ray marking degenerate cones. This is the equivalence
/// class key: a homeomorphism of the plane preserves the cyclic order of rays
/// (up to reflection), coverage counts, and degeneracy.
struct ConeSignature {
  std::vector<int> sectors;
  std::vector<bool> degenerate_rays;

  std::string to_string() const;
  /// Lexicographically minimal rotation/reflection, as (ray flag, sector)
  /// pairs; equal signatures have equal canonical forms.
  std::vector<std::pair<int, int>> canonical() const;
};

/// Compute the ray arrangement of a 2x2 matrix.
/// Throws if m is not 2x2 or has a zero column (undefined ray direction).
RayArrangement arrangement(const Matrix& m, double tol_base = kDefaultTol);

ConeSignature signature(const Matrix& m, double tol_base = kDefaultTol);

/// Equality of cyclic (sectors, degenerate_rays) profiles up to rotation and
/// reflection.
bool signatures_match(const ConeSignature& a, const ConeSignature& b);

/// Solution count of LCP(m,q) read off the cone arrangement.
struct RegionCount {
  enum class Kind { Count, Continuum, Boundary };
  Kind kind = Kind::Count;
  int count = 0;           // valid for Kind::Count
  int left = 0, right = 0; // adjacent sector counts for Kind::Boundary

  bool generic() const { return kind == Kind::Count; }
};

RegionCount count_solutions_by_region(const Matrix& m, const Vector& q,
                                      double tol_base = kDefaultTol);

}  // namespace lcp
