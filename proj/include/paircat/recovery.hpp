#pragma once

#include <string>
#include <vector>

#include "paircat/channels.hpp"

namespace paircat {

// Transpose recovery R_k = P E_k^dag N^{-1/2}, N = sum_j E_j P E_j^dag, kept in
// compact form: A_k = E_k V and the pseudo-inverse square root of N.
struct RecoverySpec {
  CodeSpace code;
  std::vector<Mat> A;
  Mat n_inv_sqrt;
  double cutoff = 1e-12;
  int rank = 0;
  double completeness_defect = 0.0;  // with the completion Kraus 1 - Pi_supp(N)
};

RecoverySpec transpose_recovery(const CodeSpace& code, const KrausChannel& ch, double cutoff = 1e-12);

// F = sum_{j,k} |Tr(R_j E_k P/2)|^2 = sum |(1/2) Tr(A_j^dag N^{-1/2} A_k)|^2
double entanglement_fidelity(const RecoverySpec& r);
// Serial reference for the same quantity.
double entanglement_fidelity_serial(const RecoverySpec& r);

// Dense recovery Kraus operators including the completion term.
std::vector<Mat> recovery_kraus_dense(const RecoverySpec& r);
// <Phi| (R o E x 1)(|Phi><Phi|) |Phi> with an explicit reference qubit.
double entanglement_fidelity_bell(const CodeSpace& code, const KrausChannel& ch, const std::vector<Mat>& recovery);
// Recovery by the code projector alone.
double projection_fidelity(const CodeSpace& code, const KrausChannel& ch);

// Keep Kraus operators in decreasing order of (1/2)||E_k V||_F^2 until the
// discarded weight is below tol.
std::vector<int> select_kraus(const CodeSpace& code, const KrausChannel& ch, double tol = 1e-6);
KrausChannel subset(const KrausChannel& ch, const std::vector<int>& idx);

struct FidelityRow {
  std::string code;
  double one_minus_eta;
  double fidelity;
  double truncation_defect;
  int kraus_kept = 0;   // after select_kraus at the worst eta; not written to the CSV
  int kraus_total = 0;
};
struct Figure5Config {
  std::vector<std::string> codes{"paircat3", "concat", "singlerail"};
  std::vector<double> one_minus_eta{0.01, 0.025, 0.05, 0.075, 0.1};
  double nbar_per_mode = 1.08;
  int cutoff = 6;
  double kraus_tol = 1e-6;
  double max_tail = 1e-3;
};
CodeSpace figure5_code(const std::string& name, const Figure5Config& cfg);
// eta points are independent and evaluated in parallel.
std::vector<FidelityRow> figure5_sweep(const Figure5Config& cfg);

// Closed form for {|0>, |1>} under loss with transpose recovery.
double singlerail_fidelity(double eta);

}  // namespace paircat
