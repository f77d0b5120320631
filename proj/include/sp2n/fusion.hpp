#ifndef SP2N_FUSION_HPP
#define SP2N_FUSION_HPP

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "sp2n/core.hpp"
#include "sp2n/local_ops.hpp"
#include "sp2n/projectors.hpp"

namespace sp2n {

namespace detail {

// relative tolerance for separating the nonzero eigenvalue cluster of R(lambda*)
inline constexpr double kClusterTol = 1e-7;

}  // namespace detail

/// Extract the projector hiding at a singular point of an R-family: rescale
/// R(lambda*) so the nonzero eigenvalue cluster sits at 1 and verify
/// idempotency.  Returns the projector and the cluster scalar.
inline std::pair<Projector, double> projector_at_singular_point(const RFamily& fam, double lambda_star,
                                                                const RepLabel& target) {
  const Mat M = fam.eval(lambda_star);
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (M + M.transpose()));
  const Vec ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (top <= 0) throw Error(ErrorKind::FusionConsistency, "singular-point matrix vanishes");
  double s = 0.0;
  int count = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev(i)) > detail::kClusterTol * top) {
      s += ev(i);
      ++count;
    }
  }
  if (count == 0 || count != target.dim)
    throw Error(ErrorKind::FusionConsistency,
                "projector rank " + std::to_string(count) + " != dim " + target.str() + " = " +
                    std::to_string(target.dim));
  s /= count;
  for (int i = 0; i < ev.size(); ++i)
    if (std::abs(ev(i)) > detail::kClusterTol * top && std::abs(ev(i) - s) > detail::kClusterTol * top)
      throw Error(ErrorKind::FusionConsistency, "nonzero eigenvalues do not form a single cluster");
  Projector P{fam.aux_dim, fam.site_dim, Mat(M / s), target.dim, target};
  if (P.idempotency_defect() > 1e-11)
    throw Error(ErrorKind::NotAProjector, "rescaled singular-point matrix is not idempotent");
  return {P, s};
}

/// One fusion step: from the level-m family R^(m,1) build R^(m+1,1) through
/// the projector onto {m+1} at lambda* = -(m+1)/2,
///   R^(m+1,1)(u) = U^T [ R^(1,1)_{b2}(u+m/2) R^(m,1)_{a2}(u-1/2) ] U / g(u),
/// g(u) = (u+m/2-1)(u+m/2+Delta), except the last level where
/// g(u) = ((u+(n-1)/2)^2-1)(u+(n-1)/2+Delta) and the result is linear.
/// An optional orthogonal rotation of the fused basis supports the
/// basis-independence checks.
inline RFamily fuse_next(const ModelParams& p, const RFamily& fam_m, int m,
                         const Mat* basis_rotation = nullptr) {
  if (m < 1 || m > p.n - 1) throw Error(ErrorKind::Domain, "fuse_next: need 1 <= m <= n-1");
  if (fam_m.rep_a.kind != RepLabel::Kind::Fundamental || fam_m.rep_a.k != m)
    throw Error(ErrorKind::FusionConsistency, "fuse_next: family is not the level-" + std::to_string(m) + " one");
  const double lambda_star = -0.5 * (m + 1);
  bool found = false;
  for (const auto& sp : fam_m.singular_points)
    if (std::abs(sp.lambda_star - lambda_star) < 1e-12 && sp.target.k == m + 1) found = true;
  if (!found)
    throw Error(ErrorKind::FusionConsistency, "fuse_next: singular point targeting {m+1} missing");

  const RepLabel next = RepLabel::fundamental(p.n, m + 1);
  auto [proj, scalar] = projector_at_singular_point(fam_m, lambda_star, next);
  (void)scalar;
  Isometry iso = isometry_from_projector(proj);
  if (basis_rotation) {
    if (basis_rotation->rows() != next.dim || basis_rotation->cols() != next.dim)
      throw Error(ErrorKind::ShapeMismatch, "fuse_next: basis rotation has wrong shape");
    iso.matrix = iso.matrix * (*basis_rotation);
  }

  const int s = p.site_dim;
  const int dm = fam_m.aux_dim;
  const double D = p.delta;
  const bool last = (m + 1 == p.n);
  const std::vector<int> dims = {dm, s, s};
  const RFamily fund = r_fundamental_family(p);

  auto g = [&](double u) -> double {
    if (last) {
      const double l = u + 0.5 * (p.n - 1);
      return (l * l - 1.0) * (l + D);
    }
    return (u + 0.5 * m - 1.0) * (u + 0.5 * m + D);
  };
  const Mat Ufull = kron(iso.matrix, Mat(Mat::Identity(s, s)));
  auto new_r = [&](double u) -> Mat {
    const Mat A = embed_pair(fam_m.eval(u - 0.5), dims, 0, 2);
    const Mat B = embed_pair(fund.eval(u + 0.5 * m), dims, 1, 2);
    return Ufull.transpose() * (B * A) * Ufull / g(u);
  };

  // evaluate at deg+1 points (resampling past zeros of g) and interpolate
  const int deg = last ? 1 : 2;
  const double candidates[] = {0.3, -0.7, 1.3, -1.7, 2.3, 0.9, -2.7, 3.3};
  std::vector<double> pts;
  for (double c : candidates) {
    if (std::abs(g(c)) > 1e-9) pts.push_back(c);
    if (static_cast<int>(pts.size()) == deg + 1) break;
  }
  if (static_cast<int>(pts.size()) != deg + 1)
    throw Error(ErrorKind::FusionConsistency, "fuse_next: could not find sample points off g's zeros");
  std::vector<Mat> vals;
  for (double u : pts) vals.push_back(new_r(u));

  Mat vand(deg + 1, deg + 1);
  for (int i = 0; i <= deg; ++i)
    for (int k = 0; k <= deg; ++k) vand(i, k) = std::pow(pts[i], k);
  const Mat vinv = vand.inverse();

  RFamily out;
  out.rep_a = next;
  out.rep_b = RepLabel::fundamental(p.n, 1);
  out.aux_dim = next.dim;
  out.site_dim = s;
  for (int k = 0; k <= deg; ++k) {
    Mat C = Mat::Zero(vals[0].rows(), vals[0].cols());
    for (int i = 0; i <= deg; ++i) C += vinv(k, i) * vals[i];
    out.coeffs.push_back(C);
  }
  const int lvl = m + 1;
  if (!last) {
    out.singular_points.push_back({-0.5 * (2 * D + 1 - lvl), RepLabel::fundamental(p.n, lvl - 1)});
    out.singular_points.push_back({-0.5 * (lvl + 1), RepLabel::fundamental(p.n, lvl + 1)});
  } else {
    out.singular_points.push_back({-0.5 * (D + 2), RepLabel::fundamental(p.n, p.n - 1)});
    out.singular_points.push_back(
        {+0.5 * (D + 2), RepLabel::mixed(p.n, p.n, dm * s - rep_dimension(p.n, p.n - 1))});
  }
  return out;
}

/// Families R^(m,1) for m = 1..n, built recursively.
inline std::vector<RFamily> build_fusion_hierarchy(const ModelParams& p) {
  std::vector<RFamily> fams;
  fams.push_back(r_fundamental_family(p));
  for (int m = 1; m <= p.n - 1; ++m) fams.push_back(fuse_next(p, fams.back(), m));
  return fams;
}

struct FusedIdentityReport {
  double unitarity = 0.0;
  double yang_baxter = 0.0;
};

/// Residuals of the level-m unitarity relation and of the mixed Yang-Baxter
/// equation with the fundamental R-matrix.
inline FusedIdentityReport check_fused_identities(const ModelParams& p, const RFamily& fam,
                                                  Complex lambda, Complex mu) {
  const int m = fam.rep_a.k;
  const int s = p.site_dim;
  const double D = p.delta;
  FusedIdentityReport rep;

  Complex pred;
  if (m == p.n && p.n >= 2) {
    const double C = 0.5 * (D + 2);
    pred = C * C - lambda * lambda;
  } else {
    const double A = 0.5 * (m + 1);
    const double B = 0.5 * (2 * D + 1 - m);
    pred = (A * A - lambda * lambda) * (B * B - lambda * lambda);
  }
  const CMat prod = fam.eval(lambda) * fam.eval(-lambda);
  rep.unitarity = max_abs(CMat(prod - pred * CMat::Identity(prod.rows(), prod.cols())));

  const std::vector<int> dims = {fam.aux_dim, s, s};
  const CMat R12 = embed_pair(fam.eval(lambda - mu), dims, 0, 1);
  const CMat R13 = embed_pair(fam.eval(lambda), dims, 0, 2);
  const CMat R23 = embed_pair(r_fundamental(p, mu), dims, 1, 2);
  rep.yang_baxter = max_abs(CMat(R12 * R13 * R23 - R23 * R13 * R12));
  return rep;
}

}  // namespace sp2n

#endif
