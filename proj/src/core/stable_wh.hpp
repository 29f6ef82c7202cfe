#pragma once

#include <complex>

namespace ssou {
namespace stable {

// Strictly stable process on the line, alpha in (1,2), skewness beta in
// [-1,1], with the exponent normalized so that for real u
//   Psi(iu) = -c |u|^alpha (1 - i beta sgn(u) tan(alpha pi / 2)),
//   c = (1 + beta^2 tan^2(alpha pi/2))^(-1/2).
// rho = P(X_1 > 0) is Zolotarev's positivity parameter. A (k,l) class label
// asserts rho + k = l / alpha; the factor formulas below are valid for
// processes carrying such a label.
struct StableParams {
  StableParams(double alpha, double beta);
  StableParams(double alpha, double beta, int k, int l);  // checks membership
  // Derives beta from the class membership rho = l/alpha - k.
  static StableParams from_class(double alpha, int k, int l);

  double alpha;
  double beta;
  double c;
  double rho;
  bool has_class = false;
  int k = 0;
  int l = 0;
};

// Complex power sigma^a e^(i a phi) on the branch -pi < phi <= pi (the cut
// sits just below the negative real axis).
std::complex<double> pow_branch(std::complex<double> z, double a);

// f_m(x, z) = prod_{i=0..m} (z + e^(i x (m - 2i) pi)).
std::complex<double> f_poly(int m, double x, std::complex<double> z);

// Analytic continuation of the characteristic exponent off the imaginary
// axis, Psi(z) = -(c / cos(alpha pi/2)) [ (1+beta)/2 (-z)^alpha
//                                        + (1-beta)/2 z^alpha ].
std::complex<double> char_exponent(const StableParams& p, std::complex<double> z);

// Wiener-Hopf factors of (1 - Psi)^(-1) for a process in class C_{k,l}:
//   Psi+(z) = f_{k-1}(alpha, (-1)^l (-z)^alpha) / f_{l-1}(1/alpha, (-1)^(k+1) z),
//   Psi-(z) = f_{l-1}(1/alpha, (-1)^(k+1) z)   / f_k(alpha, (-1)^l z^alpha).
// Psi+ is analytic on Re z < 0 and excludes the ray Arg z = 0; Psi- excludes
// the ray Arg z = -pi (the closed branch cut).
std::complex<double> psi_plus(const StableParams& p, std::complex<double> z);
std::complex<double> psi_minus(const StableParams& p, std::complex<double> z);

// Double Laplace transform (in the starting point and in time) of the
// first-passage pair at level 0 for the stable OU process:
//   (1/(delta-p)) ( chi^(q/chi)
//     - 1/Gamma(q/chi) int_0^inf Fac(-/+ r^(1/alpha) delta)/Fac(-/+ r^(1/alpha) p)
//                       e^(-r/chi) r^(q/chi-1) dr )
// with Fac = Psi+ for passage from below (x < 0), Psi- from above.
enum class PassageSide { below, above };
double ou_fpt_double_laplace(const StableParams& p, PassageSide side, double q, double delta,
                             double pexp, double chi);

}  // namespace stable
}  // namespace ssou
