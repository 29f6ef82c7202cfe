#include "core/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "core/common.hpp"
#include "core/gammafn.hpp"

namespace ssou {

namespace {

// Gauss-Kronrod (7,15) abscissae/weights on [-1,1].
constexpr double kKronrodX[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kKronrodW[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kGaussW[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
  double a, b;
  double value;
  double error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  double fc = f(c);
  double result_kronrod = fc * kKronrodW[7];
  double result_gauss = fc * kGaussW[3];
  for (int j = 0; j < 7; ++j) {
    double x = h * kKronrodX[j];
    double f1 = f(c - x);
    double f2 = f(c + x);
    result_kronrod += kKronrodW[j] * (f1 + f2);
    if (j % 2 == 1) result_gauss += kGaussW[j / 2] * (f1 + f2);
  }
  Panel p;
  p.a = a;
  p.b = b;
  p.value = result_kronrod * h;
  p.error = std::abs((result_kronrod - result_gauss) * h);
  if (!std::isfinite(p.value)) raise(errc::non_finite, "quadrature: integrand returned non-finite value");
  return p;
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol, int max_intervals) {
  QuadResult out;
  if (a == b) return out;
  std::priority_queue<Panel> queue;
  Panel first = gk15(f, a, b);
  out.evaluations = 15;
  double total = first.value;
  double total_err = first.error;
  queue.push(first);
  int panels = 1;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) && panels < max_intervals) {
    Panel worst = queue.top();
    queue.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) break;  // interval at machine resolution
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    out.evaluations += 30;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
    ++panels;
  }
  if (total_err > std::max(abs_tol, rel_tol * std::abs(total)) * 50.0 + 1e-300)
    raise(errc::quadrature, "integrate_adaptive: refinement stalled before reaching tolerance");
  out.value = total;
  out.error = total_err;
  return out;
}

QuadResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                 double abs_tol, double rel_tol) {
  QuadResult out;
  double width = 1.0;
  double lo = a;
  double running = 0.0;
  for (int k = 0; k < 60; ++k) {
    QuadResult piece = integrate_adaptive(f, lo, lo + width, abs_tol * 0.25, rel_tol * 0.25);
    running += piece.value;
    out.error += piece.error;
    out.evaluations += piece.evaluations;
    lo += width;
    width *= 2.0;
    double scale = std::max(std::abs(running), 1e-300);
    if (std::abs(piece.value) < std::max(abs_tol, rel_tol * scale) * 0.25 && k >= 2) {
      out.value = running;
      return out;
    }
  }
  raise(errc::quadrature, "integrate_to_infinity: tail did not decay");
}

GaussLaguerreRule::GaussLaguerreRule(int n, double a) : order(n), exponent(a) {
  if (n < 1) raise(errc::domain, "GaussLaguerreRule: order must be >= 1");
  if (!(a > -1.0)) raise(errc::domain, "GaussLaguerreRule: exponent must exceed -1");

  // Jacobi matrix of the generalized Laguerre polynomials (Golub-Welsch):
  // diag_i = 2i + a + 1, offdiag_i = sqrt(i (i + a)).
  std::vector<double> d(n), e(n, 0.0), z(n, 0.0);
  for (int i = 0; i < n; ++i) d[i] = 2.0 * i + a + 1.0;
  for (int i = 1; i < n; ++i) e[i - 1] = std::sqrt(i * (i + a));
  z[0] = 1.0;

  // Implicit-shift QL on the symmetric tridiagonal, rotating z along so that
  // z[j] ends as the first eigenvector component of node j.
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m;
    do {
      for (m = l; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-15 * dd) break;
      }
      if (m != l) {
        if (++iter > 60) raise(errc::quadrature, "GaussLaguerreRule: eigenvalue iteration failed");
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = std::hypot(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (int i = m - 1; i >= l; --i) {
          double ff = s * e[i];
          double b = c * e[i];
          r = std::hypot(ff, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = ff / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          ff = z[i + 1];
          z[i + 1] = s * z[i] + c * ff;
          z[i] = c * z[i] - s * ff;
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }

  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return d[i] < d[j]; });

  const double mu0 = std::exp(std::lgamma(a + 1.0));
  nodes.resize(n);
  weights.resize(n);
  for (int i = 0; i < n; ++i) {
    nodes[i] = d[idx[i]];
    weights[i] = mu0 * z[idx[i]] * z[idx[i]];
  }

  // Moment exactness check: integral of r^k against the weight is
  // Gamma(a+1) (a+1)_k for k = 0..6.
  for (int k = 0; k <= 6 && k <= 2 * n - 1; ++k) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += weights[i] * std::pow(nodes[i], k);
    double expected = std::exp(std::lgamma(a + 1.0 + k));
    if (std::abs(s - expected) > 1e-9 * expected)
      raise(errc::quadrature, "GaussLaguerreRule: moment check failed at construction");
  }
}

double GaussLaguerreRule::integrate(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (int i = order - 1; i >= 0; --i) {
    double v = f(nodes[i]);
    if (!std::isfinite(v)) raise(errc::non_finite, "GaussLaguerreRule: integrand non-finite at node");
    s += weights[i] * v;
  }
  return s;
}

}  // namespace ssou
