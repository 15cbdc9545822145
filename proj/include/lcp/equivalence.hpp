#pragma once

#include "lcp/cone2d.hpp"
#include "lcp/types.hpp"

#include <array>
#include <cstdint>

namespace lcp {

/// Stability of a 2x2 matrix under small perturbations of its cone geometry.
/// Stable: nonzero off-diagonals and nonzero principal minors. Unstable: some
/// principal minor vanishes. Boundary: nonzero minors but a zero off-diagonal.
struct StabilityVerdict {
  enum class Status { Stable, Unstable, Boundary };
  Status status = Status::Stable;
  std::vector<std::string> reasons;

  bool stable() const { return status == Status::Stable; }
};

std::string to_string(StabilityVerdict::Status s);

StabilityVerdict stability_2x2(const Matrix& m, double tol_base = kDefaultTol);

/// Sufficient sign test: equivalence follows when all five products
/// M12*N12, M21*N21, M11*N11, M22*N22, det(M)*det(N) are strictly positive.
/// The test is one-sided; failure is Inconclusive, not a refutation.
enum class SignTest { True, Inconclusive };
SignTest equivalent_sufficient(const Matrix& m, const Matrix& n,
                               double tol_base = kDefaultTol);

struct EquivalenceVerdict {
  enum class Status { Equivalent, NotEquivalent, Unknown };
  Status status = Status::Unknown;
  std::string method;  // "sign-test", "signature", "signature-mismatch", ...
};

std::string to_string(EquivalenceVerdict::Status s);

/// Decide planar LCP equivalence: the cheap sign test first, then the cone
/// signature. Matching signatures certify equivalence only when both matrices
/// are Stable; otherwise the verdict is Unknown.
EquivalenceVerdict equivalent(const Matrix& m, const Matrix& n,
                              double tol_base = kDefaultTol);

/// Equivalence class of a stable planar matrix, keyed by cone signature
/// against the four representative classes.
struct PlanarClass {
  std::string label;  // "P", "M-class", "N-class", "L-class", or "other(...)"
  ConeSignature signature;
};

PlanarClass classify_planar(const Matrix& m, double tol_base = kDefaultTol);

/// The four class representatives, label -> matrix.
std::vector<std::pair<std::string, Matrix>> planar_representatives();

/// One normal-form matrix of the planar classification.
struct NormalForm {
  std::string family;  // "M", "N" (stable families) or "O" (boundary family)
  std::array<int, 5> delta;  // delta_0..delta_4; delta_4 used only by "O"
  Matrix m;

  std::string label() const;
};

/// The 16 + 16 stable normal forms (delta_i in {-1,1}) followed by the 20
/// boundary forms with a zero off-diagonal (delta_3 * delta_4 = 0).
std::vector<NormalForm> normal_forms();

/// A piecewise-linear map given per-cone: y in pos(cone) maps to map*y.
struct PwlPiece {
  Matrix cone;
  Matrix map;
};

class PwlMap {
 public:
  PwlMap() = default;
  explicit PwlMap(std::vector<PwlPiece> pieces);

  Vector apply(const Vector& y, double tol_base = kDefaultTol) const;
  PwlMap inverse() const;

  const std::vector<PwlPiece>& pieces() const { return pieces_; }

 private:
  std::vector<PwlPiece> pieces_;
};

/// Bijection on index subsets pairing the cones of two configurations.
struct OrthantPairing {
  std::vector<std::uint32_t> beta_of_alpha;  // indexed by alpha mask

  static OrthantPairing identity(int n);
  static OrthantPairing complement(int n);
  std::uint32_t operator()(std::uint32_t alpha) const {
    return beta_of_alpha.at(alpha);
  }
};

/// The map sending pos C_source(alpha) linearly onto
/// pos C_target(pairing(alpha)); both cone families must cover the plane for
/// the result to be total.
PwlMap cone_aligned_map(const Matrix& target, const Matrix& source,
                        const OrthantPairing& pairing);

/// Numerical commutation check of an explicit equivalence witness. Builds
/// psi(x) = C_{-N}(beta(alpha))^{-1} phi^{-1}(C_{-M}(alpha) x) per orthant and
/// returns max over sampled x of |f_M(x) - phi(f_N(psi(x)))|_inf normalized
/// by 1 + |f_M(x)|_inf.
double verify_witness(const Matrix& m, const Matrix& n, const PwlMap& phi,
                      const OrthantPairing& beta_hat, int samples = 1000,
                      double tol_base = kDefaultTol);

}  // namespace lcp
