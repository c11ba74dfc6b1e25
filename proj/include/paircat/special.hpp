#pragma once

#include <vector>

namespace paircat::special {

// e^{-x} I_nu(x), x >= 0. Integer order, negative orders folded by I_{-n} = I_n.
double bessel_i_scaled(int nu, double x);
// e^{x} K_nu(x), x > 0.
double bessel_k_scaled(int nu, double x);
// J_nu(x) with J_{-n} = (-1)^n J_n.
double bessel_j(int nu, double x);
// J_0(x) .. J_nmax(x). Upward recurrence while n <= x, Miller's backward
// recurrence normalized by J_0 + 2 sum J_2k = 1 otherwise.
std::vector<double> bessel_j_table(int nmax, double x);
// I_nu(x) K_nu(x) without overflow.
double bessel_ik_product(int nu, double x);

double log_factorial(int n);

// L_0(x) .. L_nmax(x) by the three-term upward recurrence.
std::vector<double> laguerre_table(int nmax, double x);

}  // namespace paircat::special
