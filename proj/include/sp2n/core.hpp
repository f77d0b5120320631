#ifndef SP2N_CORE_HPP
#define SP2N_CORE_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace sp2n {

using Complex = std::complex<double>;

enum class ErrorKind {
  InvalidRank,
  SizeBudget,
  ShapeMismatch,
  Domain,
  NotAProjector,
  FusionConsistency,
  Convergence,
  AmbiguousBranch,
  Branch,
  Contour,
  PolynomialityViolation,
  DegreeDeficient,
  PoleProximity,
  Precision,
  Normalization,
  Io,
  Config,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

/// Global data of the Sp(2n) vertex model: rank n, crossing parameter
/// Delta = n+1 (= crossing shift rho), site dimension 2n.
struct ModelParams {
  int n = 0;
  int delta = 0;
  int site_dim = 0;
  int rho = 0;
};

inline ModelParams make_model(int n) {
  if (n < 1) throw Error(ErrorKind::InvalidRank, "make_model: rank n must be >= 1, got " + std::to_string(n));
  ModelParams p;
  p.n = n;
  p.delta = n + 1;
  p.site_dim = 2 * n;
  p.rho = p.delta;
  return p;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// dim{k} = C(2n,k) - C(2n,k-2) for the k-th fundamental representation.
inline int rep_dimension(int n, int k) {
  if (k < 1 || k > n)
    throw Error(ErrorKind::Domain, "rep_dimension: need 1 <= k <= n, got k=" + std::to_string(k));
  return static_cast<int>(binomial(2 * n, k) - binomial(2 * n, k - 2));
}

/// Label of an auxiliary-space representation appearing in the fusion chain.
struct RepLabel {
  enum class Kind { Trivial, Fundamental, Mixed } kind = Kind::Fundamental;
  int k = 1;    // fundamental index for Fundamental/Mixed; unused for Trivial
  int dim = 1;

  static RepLabel trivial() { return {Kind::Trivial, 0, 1}; }
  static RepLabel fundamental(int n, int k) { return {Kind::Fundamental, k, rep_dimension(n, k)}; }
  static RepLabel mixed(int n, int k, int dim) { return {Kind::Mixed, k, dim}; }

  std::string str() const {
    switch (kind) {
      case Kind::Trivial: return "{0}";
      case Kind::Fundamental: return "{" + std::to_string(k) + "}";
      default: return "{1;" + std::to_string(k) + "}";
    }
  }
};

}  // namespace sp2n

#endif
