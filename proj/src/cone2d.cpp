#include "lcp/cone2d.hpp"

#include "lcp/core.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace lcp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double angle_of(const Eigen::Vector2d& v) {
  double a = std::atan2(v.y(), v.x());
  if (a < 0.0) a += kTwoPi;
  if (a >= kTwoPi) a = 0.0;
  return a;
}

// Cyclic angular distance.
double angle_dist(double a, double b) {
  double d = std::fmod(std::abs(a - b), kTwoPi);
  return std::min(d, kTwoPi - d);
}

void require_2x2(const Matrix& m, const char* who) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument(std::string(who) + ": matrix must be 2x2");
}

}  // namespace

int RayArrangement::ray_at(double angle) const {
  for (int i = 0; i < size(); ++i)
    if (angle_dist(rays[i].angle, angle) <= kAngleTol) return i;
  return -1;
}

int RayArrangement::sector_of(double angle) const {
  const int k = size();
  for (int i = 0; i < k; ++i) {
    const double lo = rays[i].angle;
    double hi = rays[(i + 1) % k].angle;
    if (hi <= lo) hi += kTwoPi;
    double a = angle;
    if (a < lo) a += kTwoPi;
    if (a > lo && a < hi) return i;
  }
  return -1;
}

Eigen::Vector2d RayArrangement::sector_midpoint(int i) const {
  const int k = size();
  const double lo = rays[i].angle;
  double hi = rays[(i + 1) % k].angle;
  if (hi <= lo) hi += kTwoPi;
  const double mid = lo + 0.5 * (hi - lo);
  return {std::cos(mid), std::sin(mid)};
}

RayArrangement arrangement(const Matrix& m, double tol_base) {
  require_2x2(m, "arrangement");
  const double tol = scaled_tol(m, tol_base);

  std::vector<Eigen::Vector2d> gens = {
      {1.0, 0.0}, {0.0, 1.0}, -m.col(0), -m.col(1)};
  for (int g = 2; g < 4; ++g)
    if (gens[g].norm() <= tol)
      throw std::invalid_argument("arrangement: zero column in [I -M]");

  struct Entry {
    double angle;
    int gen;
  };
  std::vector<Entry> entries;
  for (int g = 0; g < 4; ++g) entries.push_back({angle_of(gens[g]), g});
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.angle < b.angle; });

  RayArrangement arr;
  for (const Entry& e : entries) {
    if (!arr.rays.empty() &&
        angle_dist(arr.rays.back().angle, e.angle) <= kAngleTol) {
      arr.rays.back().generators.push_back(e.gen);
      continue;
    }
    Ray r;
    r.angle = e.angle;
    r.dir = {std::cos(e.angle), std::sin(e.angle)};
    r.generators = {e.gen};
    arr.rays.push_back(std::move(r));
  }
  // Wraparound merge: the last ray may coincide with the first.
  if (arr.rays.size() > 1 &&
      angle_dist(arr.rays.front().angle, arr.rays.back().angle) <= kAngleTol) {
    for (int g : arr.rays.back().generators)
      arr.rays.front().generators.push_back(g);
    arr.rays.pop_back();
  }
  return arr;
}

ConeSignature signature(const Matrix& m, double tol_base) {
  require_2x2(m, "signature");
  const RayArrangement arr = arrangement(m, tol_base);
  const double tol = scaled_tol(m, tol_base);
  const int k = arr.size();

  ConeSignature sig;
  sig.sectors.assign(k, 0);
  sig.degenerate_rays.assign(k, false);

  for (const IndexSet& alpha : IndexSet::all_subsets(2)) {
    const Matrix c = complementary_matrix(m, alpha, +1);
    const double det = c(0, 0) * c(1, 1) - c(0, 1) * c(1, 0);
    if (std::abs(det) <= tol) {
      // Degenerate cone: it is carried entirely by the ray(s) of its columns.
      for (int j = 0; j < 2; ++j) {
        const int r = arr.ray_at(angle_of(c.col(j)));
        if (r >= 0) sig.degenerate_rays[r] = true;
      }
      continue;
    }
    for (int s = 0; s < k; ++s) {
      const Eigen::Vector2d mid = arr.sector_midpoint(s);
      // Strict interior membership of the midpoint ray in pos C_M(alpha).
      const double p0 = (mid.x() * c(1, 1) - mid.y() * c(0, 1)) / det;
      const double p1 = (mid.y() * c(0, 0) - mid.x() * c(1, 0)) / det;
      if (p0 >= tol && p1 >= tol) ++sig.sectors[s];
    }
  }
  return sig;
}

namespace {

using Tokens = std::vector<std::pair<int, int>>;

Tokens tokens_of(const ConeSignature& s) {
  Tokens t;
  const int k = static_cast<int>(s.sectors.size());
  t.reserve(k);
  for (int i = 0; i < k; ++i)
    t.emplace_back(s.degenerate_rays[i] ? 1 : 0, s.sectors[i]);
  return t;
}

Tokens rotate(const Tokens& t, int shift) {
  const int k = static_cast<int>(t.size());
  Tokens out(k);
  for (int i = 0; i < k; ++i) out[i] = t[(i + shift) % k];
  return out;
}

// Mirror image: ray j is followed (in the reversed orientation) by the sector
// that preceded it.
Tokens reflect(const Tokens& t) {
  const int k = static_cast<int>(t.size());
  Tokens out(k);
  for (int j = 0; j < k; ++j)
    out[j] = {t[(k - j) % k].first, t[(k - 1 - j) % k].second};
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> ConeSignature::canonical() const {
  const Tokens t = tokens_of(*this);
  const int k = static_cast<int>(t.size());
  Tokens best = t;
  const Tokens refl = reflect(t);
  for (int s = 0; s < k; ++s) {
    best = std::min(best, rotate(t, s));
    best = std::min(best, rotate(refl, s));
  }
  return best;
}

std::string ConeSignature::to_string() const {
  std::string s = "[";
  const auto canon = canonical();
  for (std::size_t i = 0; i < canon.size(); ++i) {
    if (i) s += " ";
    s += std::to_string(canon[i].second);
    if (canon[i].first) s += "*";
  }
  return s + "]";
}

bool signatures_match(const ConeSignature& a, const ConeSignature& b) {
  if (a.sectors.size() != b.sectors.size()) return false;
  return a.canonical() == b.canonical();
}

RegionCount count_solutions_by_region(const Matrix& m, const Vector& q,
                                      double tol_base) {
  require_2x2(m, "count_solutions_by_region");
  if (q.size() != 2)
    throw std::invalid_argument("count_solutions_by_region: q must have length 2");
  const RayArrangement arr = arrangement(m, tol_base);
  const ConeSignature sig = signature(m, tol_base);
  const double tol = scaled_tol(m, q, tol_base);
  const int k = arr.size();

  RegionCount rc;
  const bool any_degenerate =
      std::any_of(sig.degenerate_rays.begin(), sig.degenerate_rays.end(),
                  [](bool b) { return b; });

  if (q.cwiseAbs().maxCoeff() <= tol) {
    // q at the cone vertex: x = 0 is the unique solution unless a degenerate
    // cone provides a nontrivial nullspace segment through the origin.
    if (any_degenerate) {
      rc.kind = RegionCount::Kind::Continuum;
    } else {
      rc.kind = RegionCount::Kind::Count;
      rc.count = 1;
    }
    return rc;
  }

  double a = std::atan2(q[1], q[0]);
  if (a < 0.0) a += 2.0 * std::numbers::pi;
  const int r = arr.ray_at(a);
  if (r >= 0) {
    if (sig.degenerate_rays[r]) {
      rc.kind = RegionCount::Kind::Continuum;
    } else {
      rc.kind = RegionCount::Kind::Boundary;
      rc.left = sig.sectors[(r + k - 1) % k];
      rc.right = sig.sectors[r];
    }
    return rc;
  }
  const int s = arr.sector_of(a);
  rc.kind = RegionCount::Kind::Count;
  rc.count = sig.sectors[s];
  return rc;
}

}  // namespace lcp
