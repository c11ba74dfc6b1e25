#pragma once

#include <string>
#include <vector>

#include "paircat/states.hpp"

namespace paircat {

enum class CodeKind { cat, paircat, multimode, concat, singlerail };

std::string to_string(CodeKind k);
CodeKind code_kind_from_string(const std::string& s);

// Two orthonormal logical kets on a Fock space. Logical operators follow
// Z = |0><0| - |1><1|, X = |0><1| + |1><0|, Y = |1><0| - |0><1| (anti-Hermitian).
struct CodeSpace {
  CodeKind kind = CodeKind::cat;
  FockSpace space;
  Vec zero, one;
  double tail_mass = 0.0;

  cplx param = 0.0;  // alpha or gamma
  int sector = 0;    // Pi for cat, Delta for pair-cat
  std::vector<int> dvec;
  int spacing = 0;

  Mat isometry() const;  // dim x 2, columns |0_L>, |1_L>
  Mat projector() const;
  Mat logical_x() const;
  Mat logical_y() const;
  Mat logical_z() const;
};

CodeSpace cat_code(int cutoff, cplx alpha, int parity, double max_tail = kDefaultMaxTail);
CodeSpace paircat_code(int cutoff, cplx gamma, int delta, double max_tail = kDefaultMaxTail);
// d = 2 multimode code, mu in {0, 1}.
CodeSpace multimode_code(int modes, int cutoff, cplx gamma, const std::vector<int>& dvec, int spacing = 0,
                         double max_tail = kDefaultMaxTail);
// |mu_L> = |alpha_{Pi=mu}>^{x3}
CodeSpace concat_code(int cutoff, cplx alpha, double max_tail = kDefaultMaxTail);
// {|0>, |1>} on one mode.
CodeSpace singlerail_code(int cutoff);

struct CodeParams {
  CodeKind kind = CodeKind::paircat;
  int cutoff = 20;
  int modes = 2;
  double param = 2.0;
  int sector = 0;
  std::vector<int> dvec;
  int spacing = 0;
};
CodeSpace build_code(const CodeParams& p, double max_tail = kDefaultMaxTail);

// Hilbert-Schmidt coefficients of M = P E^dag E' P on {P, X, Y, Z}.
struct KLCoeffs {
  cplx c, x, y, z;
  double residual = 0.0;
};
// Works on the 2x2 block V^dag E^dag E' V.
KLCoeffs kl_decompose(const CodeSpace& code, const SpMat& E, const SpMat& Ep);
// Full-space traces against P, X, Y, Z; slow, kept as an independent route.
KLCoeffs kl_decompose_dense(const CodeSpace& code, const SpMat& E, const SpMat& Ep);

struct KLEntry {
  std::string left, right;
  KLCoeffs coeffs;
  bool exact = false;   // |x|, |y|, |z| below tol
  double ratio = 0.0;   // max(|x|,|y|,|z|) / |c|
};
struct KLReport {
  double tol = 1e-9;
  std::vector<KLEntry> entries;
};
struct NamedOp {
  std::string label;
  SpMat op;
};
// All ordered pairs (i <= j) of the listed errors.
KLReport kl_report(const CodeSpace& code, const std::vector<NamedOp>& errors, double tol = 1e-9);
// Monomials a^k (k > 0) and b^l listed as a^k, b^l, and the identity.
std::vector<NamedOp> loss_monomials(const FockSpace& s, int kmax);

// Closed-form logical-averaged total photon numbers.
double nbar_cat(double alpha, int parity = 0);
double nbar_paircat(double gamma, int delta = 0);
// Per-mode occupation of the d = 2, Delta = 0 multimode code, by direct series sum.
double nbar_multimode_per_mode(double gamma, int modes, int spacing = 0);
// Per-mode occupation of the concatenated code.
double nbar_concat_per_mode(double alpha);
// Code-averaged Tr(P n_tot)/2 from the stored kets.
double mean_total_photons(const CodeSpace& code);

// Monotone bisection inverses of the closed forms.
double alpha_for_nbar(double nbar, int parity = 0);
double gamma_for_nbar(double nbar, int delta = 0);
double gamma_for_multimode_nbar(double per_mode, int modes, int spacing = 0);
double alpha_for_concat_nbar(double per_mode);

// C1^- = N_{1,1}/N_{0,0} - N_{0,1}/N_{1,0}
double c1_minus_paircat(double gamma);
double c1_minus_cat(double alpha);
// Root of C1^- in [lo, hi].
double sweet_spot_paircat(double lo = 1.0, double hi = 1.6);
double sweet_spot_cat(double lo = 1.2, double hi = 1.8);

// P a^dag^k a^k P (mode 0) or P b^dag^k b^k P (mode 1) on the logical basis.
struct DephasingProjection {
  Eigen::Vector2d closed;
  Eigen::Matrix2cd numeric;
};
DephasingProjection dephasing_projection(const CodeSpace& code, int mode, int k);

struct StabilizerReport {
  double s_gamma = 0.0;       // ||S_gamma P - P||
  double s_sector = 0.0;      // ||S_Delta P - P|| (or the worst S_m, or S_Pi)
  double p_s_gamma = 0.0;     // ||P S_gamma - P||
  double p_s_gamma_dag = 0.0; // ||P S_gamma^dag - P||
};
StabilizerReport stabilizer_check(const CodeSpace& code);

}  // namespace paircat
