#include "lcp/interconnect.hpp"

#include <cmath>

namespace lcp {

void InterconnectionSpec::validate() const {
  const auto na = m_a.rows(), nb = m_b.rows();
  if (m_a.cols() != na || m_b.cols() != nb)
    throw std::invalid_argument("InterconnectionSpec: M_a and M_b must be square");
  if (h_a.rows() != na || h_a.cols() != nb)
    throw std::invalid_argument("InterconnectionSpec: H_a must be n_a x n_b");
  if (h_b.rows() != nb || h_b.cols() != na)
    throw std::invalid_argument("InterconnectionSpec: H_b must be n_b x n_a");
  if (theta_a.constant.size() != na || theta_a.slope.size() != na)
    throw std::invalid_argument("InterconnectionSpec: theta_a must have length n_a");
  if (theta_b.constant.size() != nb || theta_b.slope.size() != nb)
    throw std::invalid_argument("InterconnectionSpec: theta_b must have length n_b");
}

ParamLcp interconnect(const InterconnectionSpec& spec) {
  spec.validate();
  const auto na = spec.m_a.rows(), nb = spec.m_b.rows();
  ParamLcp out;
  out.m = Matrix(na + nb, na + nb);
  out.m.topLeftCorner(na, na) = spec.m_a;
  out.m.topRightCorner(na, nb) = spec.h_a;
  out.m.bottomLeftCorner(nb, na) = spec.h_b;
  out.m.bottomRightCorner(nb, nb) = spec.m_b;
  out.q.constant = Vector(na + nb);
  out.q.constant << spec.theta_a.constant, spec.theta_b.constant;
  out.q.slope = Vector(na + nb);
  out.q.slope << spec.theta_a.slope, spec.theta_b.slope;
  return out;
}

double scalar_lcp_solution(double q) { return std::max(0.0, -q); }

double scalar_ramp_solution(double lambda) {
  return scalar_lcp_solution(2.0 * lambda - 1.0);
}

Eigen::Matrix2d rotation(double s) {
  Eigen::Matrix2d r;
  r << std::cos(s), -std::sin(s), std::sin(s), std::cos(s);
  return r;
}

Eigen::Vector2d pleat_center_mu(const PleatScenario& scenario) {
  const double za_half =
      scalar_lcp_solution(scenario.ramp_const + 0.5 * scenario.ramp_slope);
  return -rotation(scenario.s) * Eigen::Vector2d(za_half, 0.5);
}

PleatProblem build_pleat_problem(const PleatScenario& scenario) {
  if (scenario.samples < 2)
    throw std::invalid_argument("PleatScenario: samples must be >= 2");
  if (!(scenario.lambda_range[1] > scenario.lambda_range[0]))
    throw std::invalid_argument("PleatScenario: empty lambda range");
  const double s = scenario.s;

  InterconnectionSpec spec;
  spec.m_a = Matrix::Constant(1, 1, 1.0);
  spec.m_b = Matrix(2, 2);
  spec.m_b << 1.0, 2.0, 2.0, 1.0;  // twice the N-class representative
  spec.h_a = Matrix::Zero(1, 2);
  spec.h_b = Matrix(2, 1);
  spec.h_b << std::cos(s), std::sin(s);
  spec.theta_a.constant = Vector::Constant(1, scenario.ramp_const);
  spec.theta_a.slope = Vector::Constant(1, scenario.ramp_slope);
  // With H_a = 0 this makes q_b(lambda) = R_s (z_a(lambda), lambda)' + mu.
  spec.theta_b.constant = Vector(2);
  spec.theta_b.constant << scenario.mu.x(), scenario.mu.y();
  spec.theta_b.slope = Vector(2);
  spec.theta_b.slope << -std::sin(s), std::cos(s);

  PleatProblem out;
  out.spec = spec;
  out.assembled = interconnect(spec);
  out.path =
      out.assembled.path(scenario.lambda_range[0], scenario.lambda_range[1]);
  return out;
}

}  // namespace lcp
