#include "paircat/special.hpp"

#include <cmath>
#include <cstdlib>

#include <boost/math/special_functions/bessel.hpp>

namespace paircat::special {

namespace {

// Past this argument the unscaled Boost values overflow double.
constexpr double kLargeArg = 600.0;

// Hankel asymptotic coefficients a_k(nu) = prod_{j=1..k} (4nu^2 - (2j-1)^2) / (k! 8^k).
double hankel_sum(int nu, double x, bool alternate) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 40; ++k) {
    const double next = term * (mu - (2.0 * k - 1) * (2.0 * k - 1)) / (k * 8.0 * x);
    if (std::abs(next) > std::abs(term)) break;
    term = next;
    sum += alternate ? ((k % 2) ? -term : term) : term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

}  // namespace

double bessel_i_scaled(int nu, double x) {
  nu = std::abs(nu);
  if (x < kLargeArg) return std::exp(-x) * boost::math::cyl_bessel_i(nu, x);
  return hankel_sum(nu, x, true) / std::sqrt(2.0 * M_PI * x);
}

double bessel_k_scaled(int nu, double x) {
  nu = std::abs(nu);
  if (x < kLargeArg) return std::exp(x) * boost::math::cyl_bessel_k(nu, x);
  return hankel_sum(nu, x, false) * std::sqrt(M_PI / (2.0 * x));
}

double bessel_j(int nu, double x) {
  if (nu < 0) {
    const double v = boost::math::cyl_bessel_j(-nu, x);
    return (nu % 2) ? -v : v;
  }
  return boost::math::cyl_bessel_j(nu, x);
}

double bessel_ik_product(int nu, double x) {
  return bessel_i_scaled(nu, x) * bessel_k_scaled(nu, x);
}

double log_factorial(int n) { return std::lgamma(n + 1.0); }

std::vector<double> laguerre_table(int nmax, double x) {
  std::vector<double> L(nmax + 1);
  L[0] = 1.0;
  if (nmax >= 1) L[1] = 1.0 - x;
  for (int n = 1; n < nmax; ++n)
    L[n + 1] = ((2.0 * n + 1.0 - x) * L[n] - n * L[n - 1]) / (n + 1.0);
  return L;
}

std::vector<double> bessel_j_table(int nmax, double x) {
  std::vector<double> J(nmax + 1, 0.0);
  if (x == 0.0) {
    J[0] = 1.0;
    return J;
  }
  if (nmax <= x) {
    J[0] = boost::math::cyl_bessel_j(0, x);
    if (nmax > 0) J[1] = boost::math::cyl_bessel_j(1, x);
    for (int n = 1; n < nmax; ++n) J[n + 1] = 2.0 * n / x * J[n] - J[n - 1];
    return J;
  }
  const int start = 2 * ((nmax + static_cast<int>(std::sqrt(160.0 * nmax)) + static_cast<int>(x)) / 2 + 8);
  double jp = 0.0, j = 1.0, sum = 0.0;
  for (int n = start; n > 0; --n) {
    const double jm = 2.0 * n / x * j - jp;
    jp = j;
    j = jm;
    if (std::abs(j) > 1e200) {
      j *= 1e-200;
      jp *= 1e-200;
      sum *= 1e-200;
      for (double& v : J) v *= 1e-200;
    }
    // j now holds J_{n-1}
    if (n - 1 <= nmax) J[n - 1] = j;
    if ((n - 1) % 2 == 0 && n - 1 > 0) sum += j;
  }
  const double norm = 2.0 * sum + j;
  for (double& v : J) v /= norm;
  return J;
}

}  // namespace paircat::special
