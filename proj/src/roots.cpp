#include "nilcat/roots.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "nilcat/errors.hpp"

namespace nilcat {

RootResult bisect(const std::function<double(double)>& f, double lo, double hi, double x_tol,
                  int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo < 0.0) == (fhi < 0.0)) {
    std::ostringstream msg;
    msg << "bisect: no sign change on [" << lo << ", " << hi << "] (f=" << flo << ", " << fhi
        << ")";
    throw SolverError(msg.str());
  }
  int it = 0;
  for (; it < max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= std::fmin(lo, hi) || mid >= std::fmax(lo, hi) || std::abs(hi - lo) <= x_tol) break;
    const double fm = f(mid);
    if (fm == 0.0) return {mid, 0.0, it + 1};
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return std::abs(flo) <= std::abs(fhi) ? RootResult{lo, flo, it} : RootResult{hi, fhi, it};
}

RootResult brent(const std::function<double(double)>& f, double a, double b, double x_tol,
                 int max_iter) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return {a, 0.0, 0};
  if (fb == 0.0) return {b, 0.0, 0};
  if ((fa < 0.0) == (fb < 0.0)) {
    std::ostringstream msg;
    msg << "brent: no sign change on [" << a << ", " << b << "]";
    throw SolverError(msg.str());
  }
  double c = a, fc = fa, d = b - a, e = d;
  int it = 0;
  for (; it < max_iter; ++it) {
    if ((fb > 0.0) == (fc > 0.0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol = 2.0 * 1e-16 * std::abs(b) + 0.5 * x_tol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) break;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        const double qq = fa / fc, r = fb / fc;
        p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
        q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      else p = -p;
      if (2.0 * p < std::fmin(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = m;
      }
    } else {
      d = m;
      e = m;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  return {b, fb, it};
}

double golden_minimize(const std::function<double(double)>& f, double lo, double hi,
                       double x_tol) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  while (std::abs(hi - lo) > x_tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace nilcat
