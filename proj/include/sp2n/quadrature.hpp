#ifndef SP2N_QUADRATURE_HPP
#define SP2N_QUADRATURE_HPP

#include <cmath>
#include <functional>

#include "sp2n/core.hpp"

namespace sp2n {

/// Controls for the semi-infinite CDD integrals: truncation point, absolute
/// tolerance, and the switch point below which the small-t series is used.
struct QuadratureSpec {
  double upper_cut = 0.0;   // 0 -> pick 60/n at the call site
  double abs_tol = 1e-12;
  double t0 = 1e-3;
};

namespace detail {

// Gauss-Kronrod 7-15 nodes/weights on [-1,1] (positive half; symmetric).
inline constexpr double kGK15X[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
};
inline constexpr double kGK15W[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
inline constexpr double kG7W[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

template <typename F>
void gk15(const F& f, double a, double b, Complex& kronrod, double& err) {
  const double h = 0.5 * (b - a);
  const double c = 0.5 * (a + b);
  Complex fc = f(c);
  Complex resk = kGK15W[7] * fc;
  Complex resg = kG7W[3] * fc;
  for (int i = 0; i < 7; ++i) {
    Complex f1 = f(c - h * kGK15X[i]);
    Complex f2 = f(c + h * kGK15X[i]);
    resk += kGK15W[i] * (f1 + f2);
    if (i % 2 == 1) resg += kG7W[i / 2] * (f1 + f2);
  }
  kronrod = resk * h;
  err = std::abs((resk - resg) * h);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of a complex-valued integrand on [a,b]
/// to absolute tolerance.  Throws Precision if the tolerance cannot be met.
template <typename F>
Complex integrate_adaptive(const F& f, double a, double b, double abs_tol, int max_depth = 48) {
  struct Rec {
    const F& f;
    Complex run(double lo, double hi, double tol, int depth) const {
      Complex k;
      double err;
      detail::gk15(f, lo, hi, k, err);
      if (err <= tol || err <= 1e-15 * (1.0 + std::abs(k))) return k;
      if (depth <= 0)
        throw Error(ErrorKind::Precision,
                    "integrate_adaptive: tolerance not reached on subinterval");
      double mid = 0.5 * (lo + hi);
      return run(lo, mid, 0.5 * tol, depth - 1) + run(mid, hi, 0.5 * tol, depth - 1);
    }
  };
  return Rec{f}.run(a, b, abs_tol, max_depth);
}

}  // namespace sp2n

#endif
