#pragma once

#include "paircat/codes.hpp"

namespace paircat {

struct ProjectedGate {
  SpMat full;         // empty for two-code gates, which are applied in product form
  Mat projected;      // logical basis, |mu> or |mu nu> ordered mu-major
  double leakage = 0.0;  // ||(1 - P) U P||
};

// exp[i pi/8 (n - Pi)^2] or exp[i pi/8 (n + m - Delta)^2]
ProjectedGate kerr_z_rotation(const CodeSpace& code);
// exp[i pi/4 (N1 - s1)(N2 - s2)], N the total photon number of each code.
ProjectedGate kerr_cz(const CodeSpace& c1, const CodeSpace& c2, long long budget = 1LL << 26);

// e^{-|b|^2/2} sum_n L_n(|b|^2) |n><n|
SpMat rwa_displacement(const FockSpace& s, int mode, cplx beta);
struct JunctionResult {
  cplx c_plus, c_minus;
  double off_diagonal = 0.0;
};
// Cat codes use beta_a only; pair-cat codes use the product over both modes.
JunctionResult junction_z(const CodeSpace& code, cplx beta_a, cplx beta_b = 0.0);

// e^{-i phi s} diag(1, e^{-2 i phi}), s = Pi or Delta
Eigen::Matrix2cd holonomic_z(int sector, double phi);
// Phase of <mu, mu+Delta | mu_{gamma e^{i phi}, Delta}>
double holonomic_limit_phase(double gamma, int delta, int mu, double phi, int cutoff = 12);

struct GeneratorResult {
  Mat projected;
  Mat target;
  double deviation = 0.0;  // ||projected - target||
};
// g(a^2 + h.c.) on cat codes, g(ab + h.c.) on pair-cat codes; target 2 g p^2 X.
GeneratorResult x_generator(const CodeSpace& code, double g);
// g(m1 m2 + h.c.) with m = a^2 or ab per code; target 2 g p1^2 p2^2 X x X.
GeneratorResult xx_generator(const CodeSpace& c1, const CodeSpace& c2, double g);

}  // namespace paircat
