#pragma once

#include "lcp/bifurcation.hpp"
#include "lcp/types.hpp"

namespace lcp {

/// Vector-valued affine function of the path parameter.
struct AffineVector {
  Vector constant;
  Vector slope;

  static AffineVector constant_only(Vector c) {
    AffineVector a;
    a.slope = Vector::Zero(c.size());
    a.constant = std::move(c);
    return a;
  }
  Vector at(double lambda) const { return constant + lambda * slope; }
  int size() const { return static_cast<int>(constant.size()); }
};

/// LCP with an affine-in-lambda q.
struct ParamLcp {
  Matrix m;
  AffineVector q;

  int n() const { return static_cast<int>(m.rows()); }
  LcpProblem at(double lambda) const { return LcpProblem(m, q.at(lambda)); }
  /// Single-segment path q(lambda) over [lo, hi], ready for trace_path.
  PwlPath path(double lo, double hi) const {
    return PwlPath::from_waypoints({q.at(lo), q.at(hi)}, lo, hi);
  }
};

/// Feedback data coupling two LCPs: q_a = H_a z_b + theta_a,
/// q_b = H_b z_a + theta_b.
struct InterconnectionSpec {
  Matrix m_a, m_b;
  Matrix h_a, h_b;
  AffineVector theta_a, theta_b;

  void validate() const;
};

/// Assemble the coupled pair into one block LCP of dimension n_a + n_b with
/// M = [[M_a, H_a], [H_b, M_b]] and q = (theta_a, theta_b).
ParamLcp interconnect(const InterconnectionSpec& spec);

/// The unique solution of the scalar LCP(1, q): z = max(0, -q).
double scalar_lcp_solution(double q);

/// Solution of the scalar ramp LCP(1, 2*lambda - 1), i.e. max(0, 1-2*lambda).
double scalar_ramp_solution(double lambda);

/// Pleat scenario: a scalar ramp LCP driving a planar LCP through a rotated
/// kinked path q_b(lambda) = R_s (z_a(lambda), lambda)' + mu.
struct PleatScenario {
  double s = 10.0 * 3.14159265358979323846 / 9.0;
  Eigen::Vector2d mu{0.0, 0.0};
  std::array<double, 2> lambda_range{0.0, 1.0};
  int samples = 401;
  // Scalar ramp q_a(lambda) = ramp_const + ramp_slope * lambda. The default
  // 1 - 2*lambda puts the kink of z_a = max(0, 2*lambda - 1) at lambda = 1/2
  // and produces the pitchfork geometry.
  double ramp_const = 1.0;
  double ramp_slope = -2.0;
};

Eigen::Matrix2d rotation(double s);

/// On-center mu: the path corner q_b(1/2) hits the cone vertex exactly,
/// mu* = -R_s (z_a(1/2), 1/2)'.
Eigen::Vector2d pleat_center_mu(const PleatScenario& scenario);

struct PleatProblem {
  ParamLcp assembled;   // 3x3 block LCP, affine q(lambda)
  PwlPath path;         // over lambda_range
  InterconnectionSpec spec;
};

PleatProblem build_pleat_problem(const PleatScenario& scenario);

}  // namespace lcp
