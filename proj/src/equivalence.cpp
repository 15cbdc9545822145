#include "lcp/equivalence.hpp"

#include "lcp/core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <random>

namespace lcp {

namespace {

void require_2x2(const Matrix& m, const char* who) {
  if (m.rows() != 2 || m.cols() != 2)
    throw std::invalid_argument(std::string(who) + ": matrix must be 2x2");
}

double det2(const Matrix& a) { return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0); }

}  // namespace

std::string to_string(StabilityVerdict::Status s) {
  switch (s) {
    case StabilityVerdict::Status::Stable: return "stable";
    case StabilityVerdict::Status::Unstable: return "unstable";
    default: return "boundary";
  }
}

std::string to_string(EquivalenceVerdict::Status s) {
  switch (s) {
    case EquivalenceVerdict::Status::Equivalent: return "equivalent";
    case EquivalenceVerdict::Status::NotEquivalent: return "not-equivalent";
    default: return "unknown";
  }
}

StabilityVerdict stability_2x2(const Matrix& m, double tol_base) {
  require_2x2(m, "stability_2x2");
  const double tol = scaled_tol(m, tol_base);

  const double minors[3] = {m(0, 0), m(1, 1), det2(m)};
  const char* minor_names[3] = {"det(M_11)", "det(M_22)", "det(M)"};
  const double offdiag[2] = {m(0, 1), m(1, 0)};
  const char* offdiag_names[2] = {"M12", "M21"};

  StabilityVerdict v;
  bool minor_zero = false, offdiag_zero = false;
  for (int i = 0; i < 3; ++i) {
    const bool ok = std::abs(minors[i]) > tol;
    minor_zero = minor_zero || !ok;
    v.reasons.push_back(std::string(minor_names[i]) + (ok ? " != 0" : " = 0"));
  }
  for (int i = 0; i < 2; ++i) {
    const bool ok = std::abs(offdiag[i]) > tol;
    offdiag_zero = offdiag_zero || !ok;
    v.reasons.push_back(std::string(offdiag_names[i]) + (ok ? " != 0" : " = 0"));
  }
  if (minor_zero) v.status = StabilityVerdict::Status::Unstable;
  else if (offdiag_zero) v.status = StabilityVerdict::Status::Boundary;
  else v.status = StabilityVerdict::Status::Stable;
  return v;
}

SignTest equivalent_sufficient(const Matrix& m, const Matrix& n,
                               double tol_base) {
  require_2x2(m, "equivalent_sufficient");
  require_2x2(n, "equivalent_sufficient");
  const double tol_m = scaled_tol(m, tol_base);
  const double tol_n = scaled_tol(n, tol_base);

  const double pairs[5][2] = {{m(0, 1), n(0, 1)},
                              {m(1, 0), n(1, 0)},
                              {m(0, 0), n(0, 0)},
                              {m(1, 1), n(1, 1)},
                              {det2(m), det2(n)}};
  for (const auto& p : pairs) {
    if (std::abs(p[0]) <= tol_m || std::abs(p[1]) <= tol_n)
      return SignTest::Inconclusive;
    if (p[0] * p[1] <= 0.0) return SignTest::Inconclusive;
  }
  return SignTest::True;
}

EquivalenceVerdict equivalent(const Matrix& m, const Matrix& n,
                              double tol_base) {
  EquivalenceVerdict v;
  if (equivalent_sufficient(m, n, tol_base) == SignTest::True) {
    v.status = EquivalenceVerdict::Status::Equivalent;
    v.method = "sign-test";
    return v;
  }
  ConeSignature sig_m, sig_n;
  try {
    sig_m = signature(m, tol_base);
    sig_n = signature(n, tol_base);
  } catch (const std::invalid_argument&) {
    v.status = EquivalenceVerdict::Status::Unknown;
    v.method = "signature-unavailable";
    return v;
  }
  if (!signatures_match(sig_m, sig_n)) {
    v.status = EquivalenceVerdict::Status::NotEquivalent;
    v.method = "signature-mismatch";
    return v;
  }
  if (stability_2x2(m, tol_base).stable() && stability_2x2(n, tol_base).stable()) {
    v.status = EquivalenceVerdict::Status::Equivalent;
    v.method = "signature";
    return v;
  }
  // Matching signatures with an unstable or boundary matrix: the cyclic
  // profile is not known to be a complete invariant there, so no claim.
  v.status = EquivalenceVerdict::Status::Unknown;
  v.method = "signature-match-uncertified";
  return v;
}

std::vector<std::pair<std::string, Matrix>> planar_representatives() {
  Matrix m(2, 2), n(2, 2), k(2, 2), l(2, 2);
  m << -1, 1, 0.9, -1;
  n << -1, 1, 1.1, -1;
  k << 1, 1, -1, 1;
  l << -0.5, -1, -1, 0.5;
  return {{"M-class", m}, {"N-class", n}, {"P", k}, {"L-class", l}};
}

PlanarClass classify_planar(const Matrix& m, double tol_base) {
  require_2x2(m, "classify_planar");
  PlanarClass out;
  out.signature = signature(m, tol_base);
  if (!stability_2x2(m, tol_base).stable()) {
    out.label = "other(" + out.signature.to_string() + ")";
    return out;
  }
  static const std::vector<std::pair<std::string, ConeSignature>> reps = [] {
    std::vector<std::pair<std::string, ConeSignature>> r;
    for (const auto& [label, rep] : planar_representatives())
      r.emplace_back(label, signature(rep));
    return r;
  }();
  for (const auto& [label, sig] : reps) {
    if (signatures_match(out.signature, sig)) {
      out.label = label;
      return out;
    }
  }
  out.label = "other(" + out.signature.to_string() + ")";
  return out;
}

std::string NormalForm::label() const {
  std::string s = family + "(";
  const int used = family == "O" ? 5 : 4;
  for (int i = 0; i < used; ++i) {
    if (i) s += ",";
    s += delta[i] > 0 ? "+1" : (delta[i] < 0 ? "-1" : "0");
  }
  return s + ")";
}

std::vector<NormalForm> normal_forms() {
  std::vector<NormalForm> out;
  for (int d0 : {-1, 1})
    for (int d1 : {-1, 1})
      for (int d2 : {-1, 1})
        for (int d3 : {-1, 1}) {
          NormalForm f;
          f.family = "M";
          f.delta = {d0, d1, d2, d3, 0};
          f.m = Matrix(2, 2);
          f.m << d1, d3, -d3 * (2.0 * d0 - d1 * d2), d2;
          out.push_back(f);
        }
  for (int d0 : {-1, 1})
    for (int d1 : {-1, 1})
      for (int d2 : {-1, 1})
        for (int d3 : {-1, 1}) {
          NormalForm f;
          f.family = "N";
          f.delta = {d0, d1, d2, d3, 0};
          f.m = Matrix(2, 2);
          f.m << d1, d3, -d3 * (0.5 * d0 - d1 * d2), d2;
          out.push_back(f);
        }
  for (int d1 : {-1, 1})
    for (int d2 : {-1, 1})
      for (int d3 : {-1, 0, 1})
        for (int d4 : {-1, 0, 1}) {
          if (d3 * d4 != 0) continue;
          NormalForm f;
          f.family = "O";
          f.delta = {0, d1, d2, d3, d4};
          f.m = Matrix(2, 2);
          f.m << d1, d3, d4, d2;
          out.push_back(f);
        }
  return out;
}

PwlMap::PwlMap(std::vector<PwlPiece> pieces) : pieces_(std::move(pieces)) {
  for (const PwlPiece& p : pieces_) {
    if (p.cone.rows() != p.cone.cols() || p.map.rows() != p.map.cols() ||
        p.cone.rows() != p.map.rows())
      throw std::invalid_argument("PwlMap: pieces must be square and conformal");
  }
}

Vector PwlMap::apply(const Vector& y, double tol_base) const {
  for (const PwlPiece& p : pieces_) {
    Eigen::PartialPivLU<Matrix> lu(p.cone);
    if (std::abs(lu.determinant()) <= scaled_tol(p.cone, tol_base))
      throw std::invalid_argument("PwlMap: singular piece cone");
    const double tol = scaled_tol(p.cone, y, tol_base);
    Vector coeff = lu.solve(y);
    if (coeff.minCoeff() >= -tol) return p.map * y;
  }
  throw std::invalid_argument("PwlMap: point not covered by any piece");
}

PwlMap PwlMap::inverse() const {
  std::vector<PwlPiece> inv;
  inv.reserve(pieces_.size());
  for (const PwlPiece& p : pieces_) {
    Eigen::PartialPivLU<Matrix> lu(p.map);
    if (std::abs(lu.determinant()) <= scaled_tol(p.map))
      throw std::invalid_argument("PwlMap::inverse: singular piece map");
    PwlPiece q;
    q.cone = p.map * p.cone;  // image of the domain cone
    q.map = lu.inverse();
    inv.push_back(std::move(q));
  }
  return PwlMap(std::move(inv));
}

OrthantPairing OrthantPairing::identity(int n) {
  OrthantPairing pr;
  for (std::uint32_t a = 0; a < (1u << n); ++a) pr.beta_of_alpha.push_back(a);
  return pr;
}

OrthantPairing OrthantPairing::complement(int n) {
  OrthantPairing pr;
  const std::uint32_t all = (1u << n) - 1u;
  for (std::uint32_t a = 0; a < (1u << n); ++a)
    pr.beta_of_alpha.push_back(~a & all);
  return pr;
}

PwlMap cone_aligned_map(const Matrix& target, const Matrix& source,
                        const OrthantPairing& pairing) {
  const int n = static_cast<int>(source.rows());
  std::vector<PwlPiece> pieces;
  for (const IndexSet& alpha : IndexSet::all_subsets(n)) {
    PwlPiece p;
    p.cone = complementary_matrix(source, alpha, +1);
    const Matrix t =
        complementary_matrix(target, IndexSet(pairing(alpha.bits()), n), +1);
    p.map = t * p.cone.inverse();
    pieces.push_back(std::move(p));
  }
  return PwlMap(std::move(pieces));
}

double verify_witness(const Matrix& m, const Matrix& n, const PwlMap& phi,
                      const OrthantPairing& beta_hat, int samples,
                      double tol_base) {
  const int dim = static_cast<int>(m.rows());
  if (m.rows() != m.cols() || n.rows() != n.cols() || m.rows() != n.rows())
    throw std::invalid_argument("verify_witness: matrices must be square and equal-sized");
  if (beta_hat.beta_of_alpha.size() != (std::size_t{1} << dim))
    throw std::invalid_argument("verify_witness: pairing size mismatch");

  const PwlMap phi_inv = phi.inverse();

  // Inverses of C_{-N}(beta) for every beta.
  std::vector<Matrix> cn_inv;
  for (const IndexSet& beta : IndexSet::all_subsets(dim)) {
    const Matrix c = complementary_matrix(n, beta, -1);
    Eigen::PartialPivLU<Matrix> lu(c);
    if (std::abs(lu.determinant()) <= scaled_tol(c, tol_base))
      throw std::invalid_argument("verify_witness: singular C_{-N}(beta)");
    cn_inv.push_back(lu.inverse());
  }

  std::mt19937_64 rng(0x57e55edULL);
  std::uniform_real_distribution<double> unif(-3.0, 3.0);
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x[i] = unif(rng);
    const IndexSet alpha = orthant_of(x);
    const std::uint32_t beta = beta_hat(alpha.bits());

    const Vector fm = complementary_matrix(m, alpha, -1) * x;
    const Vector psi = cn_inv[beta] * phi_inv.apply(fm, tol_base);
    const Vector back = phi.apply(pwl_apply(n, psi), tol_base);
    const double r =
        (fm - back).cwiseAbs().maxCoeff() / (1.0 + fm.cwiseAbs().maxCoeff());
    worst = std::max(worst, r);
  }
  return worst;
}

}  // namespace lcp
