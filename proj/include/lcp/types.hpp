#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace lcp {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Base relative tolerance. Every zero test in the library uses
/// tol_base * max(1, |M|_inf, |q|_inf), so problems of any magnitude get a
/// consistent notion of "numerically zero".
inline constexpr double kDefaultTol = 1e-9;

/// Hard cap on the dimension of enumeration-based operations (2^n cones).
inline constexpr int kEnumerationCap = 16;

/// Subset of {1,...,n} addressing a complementary cone / orthant.
///
/// Encoded as an n-bit mask: bit i set (0-based) means element i+1 is in the
/// set. Ordering by mask value is the canonical enumeration order used
/// everywhere for deterministic output.
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 0 || n > 31) throw std::invalid_argument("IndexSet: n out of range");
    if (n < 31 && bits >= (1u << n))
      throw std::invalid_argument("IndexSet: bits outside {1..n}");
  }

  static IndexSet empty_set(int n) { return IndexSet(0, n); }
  static IndexSet full_set(int n) {
    return IndexSet(n == 0 ? 0u : ((1u << n) - 1u), n);
  }

  std::uint32_t bits() const { return bits_; }
  int dimension() const { return n_; }
  int size() const { return __builtin_popcount(bits_); }

  /// Membership of the 0-based index i.
  bool contains(int i) const { return i >= 0 && i < n_ && (bits_ >> i) & 1u; }

  IndexSet complement() const { return IndexSet(~bits_ & mask_all(), n_); }

  bool operator==(const IndexSet& other) const {
    return bits_ == other.bits_ && n_ == other.n_;
  }
  bool operator<(const IndexSet& other) const { return bits_ < other.bits_; }

  /// 1-based display form, e.g. "{1,3}" or "{}".
  std::string to_string() const {
    std::string s = "{";
    bool first = true;
    for (int i = 0; i < n_; ++i) {
      if (!contains(i)) continue;
      if (!first) s += ",";
      s += std::to_string(i + 1);
      first = false;
    }
    return s + "}";
  }

  /// Parse the display form back; inverse of to_string.
  static IndexSet parse(const std::string& s, int n);

  /// All 2^n subsets in canonical (mask) order.
  static std::vector<IndexSet> all_subsets(int n) {
    if (n > kEnumerationCap)
      throw std::invalid_argument("IndexSet: dimension over enumeration cap");
    std::vector<IndexSet> out;
    out.reserve(std::size_t{1} << n);
    for (std::uint32_t m = 0; m < (1u << n); ++m) out.emplace_back(m, n);
    return out;
  }

 private:
  std::uint32_t mask_all() const { return n_ == 0 ? 0u : ((1u << n_) - 1u); }

  std::uint32_t bits_ = 0;
  int n_ = 0;
};

/// The problem data of LCP(M,q): find z,w >= 0 with w = Mz + q, z'w = 0.
struct LcpProblem {
  Matrix m;
  Vector q;

  LcpProblem() = default;
  LcpProblem(Matrix m_in, Vector q_in) : m(std::move(m_in)), q(std::move(q_in)) {
    validate();
  }

  int n() const { return static_cast<int>(m.rows()); }

  void validate() const {
    if (m.rows() != m.cols())
      throw std::invalid_argument("LcpProblem: matrix must be square");
    if (q.size() != m.rows())
      throw std::invalid_argument("LcpProblem: q length must match matrix dimension");
    if (!m.allFinite() || !q.allFinite())
      throw std::invalid_argument("LcpProblem: entries must be finite");
  }
};

/// max(1, |m|_inf) -- the scale that turns the relative tolerance into an
/// absolute one.
inline double problem_scale(const Matrix& m) {
  double s = 1.0;
  if (m.size() > 0) s = std::max(s, m.cwiseAbs().rowwise().sum().maxCoeff());
  return s;
}

inline double problem_scale(const Matrix& m, const Vector& q) {
  double s = problem_scale(m);
  if (q.size() > 0) s = std::max(s, q.cwiseAbs().maxCoeff());
  return s;
}

inline double scaled_tol(const Matrix& m, double tol_base = kDefaultTol) {
  return tol_base * problem_scale(m);
}

inline double scaled_tol(const Matrix& m, const Vector& q,
                         double tol_base = kDefaultTol) {
  return tol_base * problem_scale(m, q);
}

}  // namespace lcp
