#ifndef SP2N_TENSOR_HPP
#define SP2N_TENSOR_HPP

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <vector>

#include "sp2n/core.hpp"

namespace sp2n {

using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using SpMat = Eigen::SparseMatrix<double>;
using SpCMat = Eigen::SparseMatrix<Complex>;

inline long long product_dim(const std::vector<int>& dims) {
  long long n = 1;
  for (int d : dims) n *= d;
  return n;
}

namespace detail {

// strides for a mixed-radix index, factor 0 slowest
inline std::vector<long long> strides_of(const std::vector<int>& dims) {
  std::vector<long long> st(dims.size());
  long long s = 1;
  for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
    st[i] = s;
    s *= dims[i];
  }
  return st;
}

}  // namespace detail

/// Embed an operator X acting on factors (fa, fb) of a tensor-product space
/// into the full space (identity elsewhere).  Factor 0 is the slowest index.
template <typename MatT>
MatT embed_pair(const MatT& X, const std::vector<int>& dims, int fa, int fb) {
  const long long N = product_dim(dims);
  const auto st = detail::strides_of(dims);
  const int da = dims[fa], db = dims[fb];
  if (X.rows() != da * db || X.cols() != da * db)
    throw Error(ErrorKind::ShapeMismatch, "embed_pair: operator shape does not match factor dims");

  MatT out = MatT::Zero(N, N);
  // enumerate configurations of the remaining factors
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (i != fa && i != fb) rest.push_back(i);
  long long nrest = 1;
  for (int i : rest) nrest *= dims[i];

  for (long long r = 0; r < nrest; ++r) {
    long long base = 0, rr = r;
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
      base += (rr % dims[rest[i]]) * st[rest[i]];
      rr /= dims[rest[i]];
    }
    for (int ia = 0; ia < da; ++ia)
      for (int ib = 0; ib < db; ++ib) {
        const long long row = base + ia * st[fa] + ib * st[fb];
        for (int ja = 0; ja < da; ++ja)
          for (int jb = 0; jb < db; ++jb) {
            const auto x = X(ia * db + ib, ja * db + jb);
            if (x != decltype(x)(0)) out(row, base + ja * st[fa] + jb * st[fb]) = x;
          }
      }
  }
  return out;
}

/// Sparse variant for nearly-diagonal operators (the fundamental R-matrix has
/// at most 3 nonzeros per row, so Yang-Baxter products stay cheap).
inline SpCMat embed_pair_sparse(const CMat& X, const std::vector<int>& dims, int fa, int fb) {
  const long long N = product_dim(dims);
  const auto st = detail::strides_of(dims);
  const int da = dims[fa], db = dims[fb];
  std::vector<Eigen::Triplet<Complex>> trip;
  std::vector<int> rest;
  for (int i = 0; i < static_cast<int>(dims.size()); ++i)
    if (i != fa && i != fb) rest.push_back(i);
  long long nrest = 1;
  for (int i : rest) nrest *= dims[i];

  for (long long r = 0; r < nrest; ++r) {
    long long base = 0, rr = r;
    for (int i = static_cast<int>(rest.size()) - 1; i >= 0; --i) {
      base += (rr % dims[rest[i]]) * st[rest[i]];
      rr /= dims[rest[i]];
    }
    for (int ia = 0; ia < da; ++ia)
      for (int ib = 0; ib < db; ++ib)
        for (int ja = 0; ja < da; ++ja)
          for (int jb = 0; jb < db; ++jb) {
            const Complex x = X(ia * db + ib, ja * db + jb);
            if (x != Complex(0))
              trip.emplace_back(base + ia * st[fa] + ib * st[fb],
                                base + ja * st[fa] + jb * st[fb], x);
          }
  }
  SpCMat out(N, N);
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

/// Partial transpose in the second factor of a two-factor operator.
template <typename MatT>
MatT partial_transpose_second(const MatT& M, int da, int db) {
  MatT out(da * db, da * db);
  for (int a = 0; a < da; ++a)
    for (int c = 0; c < db; ++c)
      for (int b = 0; b < da; ++b)
        for (int d = 0; d < db; ++d)
          out(a * db + c, b * db + d) = M(a * db + d, b * db + c);
  return out;
}

template <typename MatT>
MatT kron(const MatT& A, const MatT& B) {
  MatT out(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j)
      out.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return out;
}

inline double max_abs(const CMat& M) { return M.cwiseAbs().maxCoeff(); }
inline double max_abs(const Mat& M) { return M.cwiseAbs().maxCoeff(); }
inline double max_abs(const SpCMat& M) {
  double m = 0;
  for (int k = 0; k < M.outerSize(); ++k)
    for (SpCMat::InnerIterator it(M, k); it; ++it) m = std::max(m, std::abs(it.value()));
  return m;
}

}  // namespace sp2n

#endif
