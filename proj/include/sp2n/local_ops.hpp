#ifndef SP2N_LOCAL_OPS_HPP
#define SP2N_LOCAL_OPS_HPP

#include <vector>

#include "sp2n/core.hpp"
#include "sp2n/tensor.hpp"

namespace sp2n {

/// Identity, permutation and Temperley-Lieb operators on the two-site space,
/// plus the single-site crossing matrix V.
///
/// E = -|w><w| with |w> = sum_a eps_a |a, 2n+1-a>, eps_a = +1 for a <= n and
/// -1 above; this is the sign assignment under which -E/(2n) is an orthogonal
/// projector and the crossing relation with V = antidiag(1..1,-1..-1) holds.
struct LocalOps {
  Mat I, P, E;  // (2n)^2 x (2n)^2
  Mat V;        // 2n x 2n, V^2 = -1
};

inline LocalOps build_local_ops(const ModelParams& p) {
  const int s = p.site_dim;
  LocalOps ops;
  ops.I = Mat::Identity(s * s, s * s);
  ops.P = Mat::Zero(s * s, s * s);
  for (int a = 0; a < s; ++a)
    for (int c = 0; c < s; ++c) ops.P(a * s + c, c * s + a) = 1.0;
  Vec w = Vec::Zero(s * s);
  for (int a = 0; a < s; ++a) {
    const double eps = (a < p.n) ? 1.0 : -1.0;
    w(a * s + (s - 1 - a)) = eps;
  }
  ops.E = -w * w.transpose();
  ops.V = Mat::Zero(s, s);
  for (int a = 0; a < s; ++a) ops.V(a, s - 1 - a) = (a < p.n) ? 1.0 : -1.0;
  return ops;
}

struct SingularPoint {
  double lambda_star;
  RepLabel target;
};

/// Matrix polynomial R(lambda) = C0 + lambda C1 (+ lambda^2 C2) acting on a
/// labeled pair of representation spaces.  All coefficient matrices are real.
struct RFamily {
  RepLabel rep_a, rep_b;
  int aux_dim = 0, site_dim = 0;
  std::vector<Mat> coeffs;
  std::vector<SingularPoint> singular_points;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  Mat eval(double lambda) const {
    Mat out = coeffs[0];
    double p = 1.0;
    for (size_t k = 1; k < coeffs.size(); ++k) {
      p *= lambda;
      out += p * coeffs[k];
    }
    return out;
  }

  CMat eval(Complex lambda) const {
    CMat out = coeffs[0].cast<Complex>();
    Complex p = 1.0;
    for (size_t k = 1; k < coeffs.size(); ++k) {
      p *= lambda;
      out += p * coeffs[k].cast<Complex>();
    }
    return out;
  }
};

/// R(lambda) = lambda(lambda+Delta) I + (lambda+Delta) P + lambda E.
inline CMat r_fundamental(const ModelParams& p, Complex lambda) {
  const LocalOps ops = build_local_ops(p);
  const double D = p.delta;
  return lambda * (lambda + D) * ops.I.cast<Complex>() + (lambda + D) * ops.P.cast<Complex>() +
         lambda * ops.E.cast<Complex>();
}

inline RFamily r_fundamental_family(const ModelParams& p) {
  const LocalOps ops = build_local_ops(p);
  const double D = p.delta;
  RFamily fam;
  fam.rep_a = RepLabel::fundamental(p.n, 1);
  fam.rep_b = fam.rep_a;
  fam.aux_dim = p.site_dim;
  fam.site_dim = p.site_dim;
  fam.coeffs = {D * ops.P, D * ops.I + ops.P + ops.E, ops.I};
  fam.singular_points.push_back({-static_cast<double>(D), RepLabel::trivial()});
  if (p.n >= 2)  // for n=1 the second fundamental is absent and R(-1) = 0
    fam.singular_points.push_back({-1.0, RepLabel::fundamental(p.n, 2)});
  return fam;
}

struct RIdentityReport {
  double regularity = 0.0;
  double unitarity = 0.0;
  double crossing = 0.0;
  double yang_baxter = 0.0;
  double max() const { return std::max(std::max(regularity, unitarity), std::max(crossing, yang_baxter)); }
};

/// Max-abs residuals of regularity, unitarity, crossing and the Yang-Baxter
/// equation at spectral parameters (lambda, mu).
inline RIdentityReport check_r_identities(const ModelParams& p, Complex lambda, Complex mu) {
  const LocalOps ops = build_local_ops(p);
  const int s = p.site_dim;
  const double D = p.delta;
  RIdentityReport rep;

  rep.regularity = max_abs(CMat(r_fundamental(p, 0.0) - D * ops.P.cast<Complex>()));

  const CMat R = r_fundamental(p, lambda);
  const CMat Rm = r_fundamental(p, -lambda);
  const CMat R21m = ops.P.cast<Complex>() * Rm * ops.P.cast<Complex>();
  rep.unitarity = max_abs(CMat(R * R21m - (1.0 - lambda * lambda) * (D * D - lambda * lambda) *
                                              ops.I.cast<Complex>()));

  // crossing: R(l) = (V x I) R(-l-rho)^{t2} (V^{-1} x I), V^{-1} = -V
  const CMat Rc = partial_transpose_second(CMat(r_fundamental(p, -lambda - static_cast<double>(p.rho))), s, s);
  const CMat Vf = kron(CMat(ops.V.cast<Complex>()), CMat(CMat::Identity(s, s)));
  const CMat Vfi = kron(CMat((-ops.V).cast<Complex>()), CMat(CMat::Identity(s, s)));
  rep.crossing = max_abs(CMat(R - Vf * Rc * Vfi));

  // Yang-Baxter on the 3-site space, sparse (R has <= 3 nonzeros per row)
  const std::vector<int> dims = {s, s, s};
  const SpCMat R12 = embed_pair_sparse(r_fundamental(p, lambda - mu), dims, 0, 1);
  const SpCMat R13 = embed_pair_sparse(R, dims, 0, 2);
  const SpCMat R23 = embed_pair_sparse(r_fundamental(p, mu), dims, 1, 2);
  rep.yang_baxter = max_abs(SpCMat(R12 * R13 * R23 - R23 * R13 * R12));
  return rep;
}

/// Periodic spin-chain Hamiltonian sum_i (I/Delta + P - E/Delta)_{i,i+1}.
/// Dense builder, budget (2n)^L <= 2^16.
inline Mat build_hamiltonian(const ModelParams& p, int L) {
  if (L < 2) throw Error(ErrorKind::Domain, "build_hamiltonian: periodic chain needs L >= 2");
  const double budget = std::pow(static_cast<double>(p.site_dim), L);
  if (budget > 65536.0)
    throw Error(ErrorKind::SizeBudget, "build_hamiltonian: (2n)^L exceeds the dense budget 2^16");
  const LocalOps ops = build_local_ops(p);
  const Mat h = (1.0 / p.delta) * ops.I + ops.P - (1.0 / p.delta) * ops.E;
  std::vector<int> dims(L, p.site_dim);
  const long long N = product_dim(dims);
  Mat H = Mat::Zero(N, N);
  for (int i = 0; i < L; ++i) H += embed_pair(h, dims, i, (i + 1) % L);
  return H;
}

}  // namespace sp2n

#endif
