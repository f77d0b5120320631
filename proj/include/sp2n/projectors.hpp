#ifndef SP2N_PROJECTORS_HPP
#define SP2N_PROJECTORS_HPP

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <numeric>
#include <tuple>
#include <vector>

#include "sp2n/core.hpp"
#include "sp2n/local_ops.hpp"

namespace sp2n {

/// Rank-r orthogonal idempotent on a tensor-product space.
struct Projector {
  int dim_a = 0, dim_b = 0;
  Mat matrix;
  int rank = 0;
  RepLabel target;

  double idempotency_defect() const { return max_abs(Mat(matrix * matrix - matrix)); }
  double hermiticity_defect() const { return max_abs(Mat(matrix - matrix.transpose())); }
};

/// Orthonormal column map onto the image of a Projector.
struct Isometry {
  Mat matrix;  // (dim_a*dim_b) x rank
  RepLabel target;
};

/// The three projectors of 2n (x) 2n = 1 + (2n+1)(n-1) + (2n+1)n:
///   P1 = -E/(2n),  Pa = (I-P)/2 + E/(2n),  Ps = (I+P)/2.
inline std::tuple<Projector, Projector, Projector> fundamental_projectors(const ModelParams& p) {
  const LocalOps ops = build_local_ops(p);
  const int s = p.site_dim;
  const double inv2n = 1.0 / s;
  Projector pt{s, s, Mat(-inv2n * ops.E), 1, RepLabel::trivial()};
  Projector pa{s, s, Mat(0.5 * (ops.I - ops.P) + inv2n * ops.E), (2 * p.n + 1) * (p.n - 1),
               p.n >= 2 ? RepLabel::fundamental(p.n, 2) : RepLabel::mixed(p.n, 2, 0)};
  Projector ps{s, s, Mat(0.5 * (ops.I + ops.P)), (2 * p.n + 1) * p.n,
               RepLabel::mixed(p.n, 1, (2 * p.n + 1) * p.n)};
  return {pt, pa, ps};
}

/// Deterministic orthonormal basis of the image of a projector: eigenvectors
/// of the eigenvalue-1 cluster with canonical column order and sign.  The
/// order key is the position of the largest-modulus component (ties broken by
/// the position of the next-largest); the sign makes that component positive.
inline Isometry isometry_from_projector(const Projector& P, double tol = 1e-10) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (P.matrix + P.matrix.transpose()));
  const Vec vals = es.eigenvalues();
  std::vector<int> keep;
  for (int i = 0; i < vals.size(); ++i) {
    if (std::abs(vals(i) - 1.0) <= tol)
      keep.push_back(i);
    else if (std::abs(vals(i)) > tol)
      throw Error(ErrorKind::NotAProjector,
                  "isometry_from_projector: eigenvalue " + std::to_string(vals(i)) +
                      " not clustered at {0,1}");
  }
  if (static_cast<int>(keep.size()) != P.rank)
    throw Error(ErrorKind::NotAProjector, "isometry_from_projector: eigenvalue-1 multiplicity " +
                                              std::to_string(keep.size()) + " != rank " +
                                              std::to_string(P.rank));
  Mat U(P.matrix.rows(), keep.size());
  for (size_t j = 0; j < keep.size(); ++j) U.col(j) = es.eigenvectors().col(keep[j]);

  // canonical sign and order
  auto mod_order = [](const Vec& col) {
    std::vector<int> idx(col.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int a, int b) { return std::abs(col(a)) > std::abs(col(b)) + 1e-12; });
    return idx;
  };
  std::vector<std::vector<int>> keys(U.cols());
  for (int j = 0; j < U.cols(); ++j) {
    keys[j] = mod_order(U.col(j));
    if (U(keys[j][0], j) < 0) U.col(j) = -U.col(j);
  }
  std::vector<int> order(U.cols());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto& ka = keys[a];
    const auto& kb = keys[b];
    for (size_t t = 0; t < std::min(ka.size(), kb.size()); ++t)
      if (ka[t] != kb[t]) return ka[t] < kb[t];
    return false;
  });
  Isometry iso;
  iso.matrix = Mat(U.rows(), U.cols());
  for (int j = 0; j < U.cols(); ++j) iso.matrix.col(j) = U.col(order[j]);
  iso.target = P.target;
  return iso;
}

}  // namespace sp2n

#endif
