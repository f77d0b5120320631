#ifndef SP2N_TRANSFER_HPP
#define SP2N_TRANSFER_HPP

#include <cmath>
#include <vector>

#include "sp2n/core.hpp"
#include "sp2n/local_ops.hpp"

namespace sp2n {

enum class TransferMode { Dense, MatrixFree };

struct TransferSpec {
  ModelParams params;
  int level = 1;
  int L = 1;
  TransferMode mode = TransferMode::MatrixFree;
};

inline long long state_dim(const ModelParams& p, int L) {
  long long N = 1;
  for (int i = 0; i < L; ++i) N *= p.site_dim;
  return N;
}

inline void check_budget(const ModelParams& p, int L, TransferMode mode) {
  double nd = std::pow(static_cast<double>(p.site_dim), L);
  if (mode == TransferMode::Dense && nd > 65536.0)
    throw Error(ErrorKind::SizeBudget, "dense transfer budget (2n)^L <= 2^16 exceeded");
  if (mode == TransferMode::MatrixFree && nd > 134217728.0)
    throw Error(ErrorKind::SizeBudget, "matrix-free budget (2n)^L <= 2^27 exceeded");
}

// ---------------------------------------------------------------------------
// Dense transfer matrix, built by growing the boundary tensor site by site.
// Kept independent of apply_transfer: it is the oracle the sweep is tested
// against.
// ---------------------------------------------------------------------------

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> build_transfer_dense_t(
    const RFamily& fam, int L, Scalar lambda) {
  using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  const int d = fam.aux_dim;
  const int s = fam.site_dim;
  MatT R;
  if constexpr (std::is_same_v<Scalar, double>)
    R = fam.eval(lambda);
  else
    R = fam.eval(lambda);
  // G[(a_out, S'), (a_in, S)] grows with the chain; start with one site.
  // R rows/cols are (alpha, a) with the auxiliary index slowest.
  long long NS = s;
  MatT G(d * s, d * s);
  for (int ao = 0; ao < d; ++ao)
    for (int ai = 0; ai < d; ++ai)
      for (int a = 0; a < s; ++a)
        for (int b = 0; b < s; ++b) G(ao * s + a, ai * s + b) = R(ao * s + a, ai * s + b);
  for (int site = 1; site < L; ++site) {
    const long long NS2 = NS * s;
    MatT G2 = MatT::Zero(d * NS2, d * NS2);
    // monodromy R_{A,site+1} ... R_{A,1}: new site multiplies on the aux-out side
    for (int ao = 0; ao < d; ++ao)
      for (int mid = 0; mid < d; ++mid)
        for (int a = 0; a < s; ++a)
          for (int b = 0; b < s; ++b) {
            const Scalar w = R(ao * s + a, mid * s + b);
            if (w == Scalar(0)) continue;
            for (int ai = 0; ai < d; ++ai)
              G2.block(ao * NS2 + static_cast<long long>(a) * NS, ai * NS2 + static_cast<long long>(b) * NS, NS, NS) +=
                  w * G.block(mid * NS, ai * NS, NS, NS);
          }
    G = std::move(G2);
    NS = NS2;
  }
  // trace the auxiliary pair
  MatT T = MatT::Zero(NS, NS);
  for (int a = 0; a < d; ++a) T += G.block(a * NS, a * NS, NS, NS);
  return T;
}

/// Dense T^(m)(lambda) = Tr_A[ R_{A L}(lambda) ... R_{A 1}(lambda) ].
/// Site 1 is the slowest state index; budget (2n)^L <= 2^16.
inline CMat build_transfer_dense(const RFamily& fam, const ModelParams& p, int L, Complex lambda) {
  check_budget(p, L, TransferMode::Dense);
  return build_transfer_dense_t<Complex>(fam, L, lambda);
}

// ---------------------------------------------------------------------------
// Matrix-free application: sweep the auxiliary index through the chain once
// per incoming auxiliary basis state, gathering each site index into a GEMM.
// Cost O(L d^3 (2n) (2n)^L), memory O(d (2n)^L).
// ---------------------------------------------------------------------------

namespace detail {

template <typename Scalar>
void transfer_sweep_accumulate(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& Wt,  // (d s) x (d s), W^T
    int d, int s, int L, int a0, const Scalar* v, Scalar* out, long long N,
    std::vector<Scalar>& ybuf, std::vector<Scalar>& zbuf) {
  using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  // y[alpha][state], alpha slowest; start from delta_{alpha,a0} v
  Scalar* y = ybuf.data();
  Scalar* z = zbuf.data();
  std::fill(y, y + d * N, Scalar(0));
  std::copy(v, v + N, y + static_cast<long long>(a0) * N);

  const long long cols = N / s;  // (pre, post) configurations
  for (int site = 0; site < L; ++site) {
    long long post = 1;
    for (int i = 0; i < L - 1 - site; ++i) post *= s;
    const long long pre = cols / post;
    // gather: Min[(pre,post), (alpha,a)] column-major, columns contiguous
    Eigen::Map<MatT> Min(z, cols, d * s);
    for (int alpha = 0; alpha < d; ++alpha)
      for (int a = 0; a < s; ++a) {
        Scalar* dst = z + static_cast<long long>(alpha * s + a) * cols;
        const Scalar* src = y + static_cast<long long>(alpha) * N + static_cast<long long>(a) * post;
        for (long long q = 0; q < pre; ++q)
          std::copy(src + q * s * post, src + q * s * post + post, dst + q * post);
      }
    // Mout = Min * W^T  -> columns indexed by (alpha', a')
    Eigen::Map<MatT> Mout(y, cols, d * s);  // reuse y as scratch for the product
    Mout.noalias() = Min * Wt;
    // scatter back into z as the new y layout, then swap
    for (int alpha = 0; alpha < d; ++alpha)
      for (int a = 0; a < s; ++a) {
        const Scalar* src = y + static_cast<long long>(alpha * s + a) * cols;
        Scalar* dst = z + static_cast<long long>(alpha) * N + static_cast<long long>(a) * post;
        for (long long q = 0; q < pre; ++q)
          std::copy(src + q * post, src + q * post + post, dst + q * s * post);
      }
    std::swap(y, z);
  }
  // accumulate the diagonal auxiliary block
  const Scalar* ya0 = y + static_cast<long long>(a0) * N;
  for (long long i = 0; i < N; ++i) out[i] += ya0[i];
}

template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> apply_transfer_t(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& R, int d, int s, int L,
    const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& v) {
  using MatT = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using VecT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  long long N = 1;
  for (int i = 0; i < L; ++i) N *= s;
  if (v.size() != N) throw Error(ErrorKind::ShapeMismatch, "apply_transfer: |v| != (2n)^L");
  const MatT Wt = R.transpose();
  VecT out = VecT::Zero(N);
  std::vector<Scalar> ybuf(static_cast<size_t>(d) * N), zbuf(static_cast<size_t>(d) * N);
  for (int a0 = 0; a0 < d; ++a0)
    transfer_sweep_accumulate<Scalar>(Wt, d, s, L, a0, v.data(), out.data(), N, ybuf, zbuf);
  return out;
}

}  // namespace detail

/// T^(m)(lambda) . v without forming the matrix.  Real lambda with a complex
/// state vector is applied to real and imaginary parts separately (the
/// coefficient matrices are real).
inline CVec apply_transfer(const RFamily& fam, const ModelParams& p, int L, Complex lambda,
                           const CVec& v) {
  check_budget(p, L, TransferMode::MatrixFree);
  if (lambda.imag() == 0.0) {
    const Mat R = fam.eval(lambda.real());
    const Vec re = v.real(), im = v.imag();
    const Vec ore = detail::apply_transfer_t<double>(R, fam.aux_dim, fam.site_dim, L, re);
    if (im.cwiseAbs().maxCoeff() == 0.0) return ore.cast<Complex>();
    const Vec oim = detail::apply_transfer_t<double>(R, fam.aux_dim, fam.site_dim, L, im);
    return ore.cast<Complex>() + Complex(0, 1) * oim.cast<Complex>();
  }
  const CMat R = fam.eval(lambda);
  return detail::apply_transfer_t<Complex>(R, fam.aux_dim, fam.site_dim, L, v);
}

inline Vec apply_transfer(const RFamily& fam, const ModelParams& p, int L, double lambda,
                          const Vec& v) {
  check_budget(p, L, TransferMode::MatrixFree);
  return detail::apply_transfer_t<double>(fam.eval(lambda), fam.aux_dim, fam.site_dim, L, v);
}

/// Periodic Hamiltonian action sum_i h_{i,i+1} . v without forming the matrix.
inline Vec apply_hamiltonian(const ModelParams& p, int L, const Vec& v) {
  if (L < 2) throw Error(ErrorKind::Domain, "apply_hamiltonian: periodic chain needs L >= 2");
  check_budget(p, L, TransferMode::MatrixFree);
  const LocalOps ops = build_local_ops(p);
  const int s = p.site_dim;
  const Mat h = (1.0 / p.delta) * ops.I + ops.P - (1.0 / p.delta) * ops.E;
  const Mat ht = h.transpose();
  long long N = 1;
  for (int i = 0; i < L; ++i) N *= s;
  if (v.size() != N) throw Error(ErrorKind::ShapeMismatch, "apply_hamiltonian: |v| != (2n)^L");

  Vec out = Vec::Zero(N);
  Mat buf(N / (s * s), s * s);
  for (int bond = 0; bond < L; ++bond) {
    const int i = bond, j = (bond + 1) % L;
    long long post_i = 1, post_j = 1;
    for (int t = 0; t < L - 1 - i; ++t) post_i *= s;
    for (int t = 0; t < L - 1 - j; ++t) post_j *= s;
    // gather the pair (a_i, a_j) into columns
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) {
        long long col = 0;
        for (long long x = 0; x < N; ++x) {
          const int ai = static_cast<int>((x / post_i) % s);
          const int aj = static_cast<int>((x / post_j) % s);
          if (ai == a && aj == b) buf(col++, a * s + b) = v(x);
        }
      }
    const Mat res = buf * ht;
    for (int a = 0; a < s; ++a)
      for (int b = 0; b < s; ++b) {
        long long col = 0;
        for (long long x = 0; x < N; ++x) {
          const int ai = static_cast<int>((x / post_i) % s);
          const int aj = static_cast<int>((x / post_j) % s);
          if (ai == a && aj == b) out(x) += res(col++, a * s + b);
        }
      }
  }
  return out;
}

/// Z = Tr[(T^(m)(lambda))^M] on the dense route.
inline Complex finite_partition_function(const RFamily& fam, const ModelParams& p, int L,
                                         Complex lambda, int M) {
  if (M < 1) throw Error(ErrorKind::Domain, "finite_partition_function: M >= 1 required");
  const CMat T = build_transfer_dense(fam, p, L, lambda);
  CMat Tp = T;
  for (int k = 1; k < M; ++k) Tp = Tp * T;
  return Tp.trace();
}

}  // namespace sp2n

#endif
