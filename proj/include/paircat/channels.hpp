#pragma once

#include <string>
#include <vector>

#include "paircat/codes.hpp"

namespace paircat {

struct KrausChannel {
  std::vector<SpMat> kraus;
  std::vector<std::string> labels;
  double completeness_defect = 0.0;  // ||sum E^dag E - 1||_F
};

double completeness_defect(const std::vector<SpMat>& kraus);

// E^l = sqrt((1-e^{-kt})^l / l!) e^{-kt n/2} a^l, l = 0..lmax. lmax < 0 means the cutoff.
KrausChannel loss_kraus(const FockSpace& s, int mode, double kt, int lmax = -1);
// Same family parameterized by transmissivity eta = e^{-kt}.
KrausChannel loss_kraus_eta(const FockSpace& s, int mode, double eta, int lmax = -1);
// E^l = sqrt((kt)^l / l!) e^{-kt n^2/2} n^l. lmax < 0 picks the order where the
// tail drops below 1e-14 at the top level.
KrausChannel dephasing_kraus(const FockSpace& s, int mode, double kt, int lmax = -1);
// Independent channels on different modes: all products B_j A_i.
KrausChannel product_channel(const KrausChannel& A, const KrausChannel& B);
// Identical loss on every mode.
KrausChannel uniform_loss(const FockSpace& s, double eta, int lmax = -1);

// sum_k E_k rho E_k^dag
Mat apply_channel_serial(const KrausChannel& ch, const Mat& rho);
// Column-parallel version; each output column is summed in a fixed order so the
// result does not depend on the thread count.
Mat apply_channel(const KrausChannel& ch, const Mat& rho);

// (1/2) sum_mu ||E |mu_L>||^2
double loss_probability(const CodeSpace& code, const SpMat& E);
// pr(l) on mode 0 and pr(l, l') on modes (0, 1) at transmissivity eta.
double loss_probability(const CodeSpace& code, double eta, int l);
double loss_probability(const CodeSpace& code, double eta, int l, int lp);

// Closed forms for pr(2) on the Pi = 0 cat code and pr(1,1) on the Delta = 0
// pair-cat code. Normalizations in the numerators are evaluated at sqrt(eta)
// times the code amplitude.
double analytic_p2(double alpha, double eta);
double analytic_p11(double gamma, double eta);

// Distribution of the total number of lost photons, l = 0..lmax.
std::vector<double> loss_distribution(const CodeSpace& code, double eta, int lmax);

struct LossProbRow {
  std::string code_kind;
  double param, eta, nbar;
  std::string prob_kind;
  double value;
};
// For each n-bar and 1-eta: pr(2) on the cat code and pr(1,1) on the pair-cat code.
std::vector<LossProbRow> lossprob_sweep(const std::vector<double>& nbars, const std::vector<double>& one_minus_eta);

}  // namespace paircat
