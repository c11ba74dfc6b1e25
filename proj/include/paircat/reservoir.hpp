#pragma once

#include <string>
#include <vector>

#include "paircat/dynamics.hpp"

namespace paircat {

struct ReservoirParams {
  cplx g1{0.01}, g2{0.01};
  cplx eps_gf{0.0};
  double delta = 1.0;
  double gamma_fg = 10.0, gamma_eg = 0.0;
  double chi_aa = 0.0, chi_bb = 0.0, chi_ab = 0.0;
  // Set chi_bb = 2|g1|^2/delta in both models, removing the b anharmonicity.
  bool cancel_bb = false;
  double regime_factor = 10.0;
};

struct EffectiveParams {
  double kappa2 = 0.0;  // 4|g1 g2|^2 / (Gamma_fg delta^2)
  cplx gamma;           // (-eps delta/(g1 g2))^{1/4}, argument in [0, pi/2)
  double error_rate = 0.0;  // |g1|^2 Gamma_eg / delta^2
};
EffectiveParams effective_params(const ReservoirParams& p);

struct RegimeFlags {
  double perturbative_ratio = 0.0;  // |delta| / max(|g1|, |g2|, |eps|)
  double lossy_ratio = 0.0;         // Gamma_fg / max(|g1 g2|/|delta|, |eps|)
  bool perturbative = false;
  bool lossy_junction = false;
};
RegimeFlags regime_flags(const ReservoirParams& p);

// Junction {g, e, f} as mode 0 with cutoff 2, cavities a, b as modes 1, 2.
FockSpace junction_space(int cutoff);
// Junction block in the frame where |e> sits at -delta, minus H_anhrm; decays
// Gamma_fg D[|g><f|] and Gamma_eg D[|g><e|].
LindbladGenerator full_model(const ReservoirParams& p, int cutoff);
// -i[H_cav, .] + kappa_II D[a^2 b^2 - gamma^4] + error_rate D[b^2]
LindbladGenerator effective_model(const ReservoirParams& p, int cutoff);

struct ValidationReport {
  EffectiveParams eff;
  RegimeFlags regime;
  std::vector<double> times;
  std::vector<double> trace_distance;
  double max_trace_distance = 0.0;
  int full_dim = 0;  // after restriction to the reachable subspace
  int effective_dim = 0;
};
// Evolves both models from the cavity state rho0 (junction in |g>) and compares
// the reduced cavity states.
ValidationReport validate_elimination(const ReservoirParams& p, int cutoff, const Mat& rho0, double horizon,
                                      int steps);

struct RateFit {
  double fitted = 0.0;
  double formula = 0.0;
  double ratio = 0.0;
  double horizon = 0.0;
};
// Population decay of |2,2> with eps = 0 and Gamma_eg = 0, divided by ||a^2 b^2|2,2>||^2 = 4.
RateFit fit_four_photon_rate(const ReservoirParams& p, int samples = 11);
// Population decay of |0,2>, divided by ||b^2|0,2>||^2 = 2.
RateFit fit_parasitic_rate(const ReservoirParams& p, int samples = 11);

struct ReadoutResult {
  cplx amplitude;
  double purity = 0.0;
  double residual = 0.0;  // ||L(rho_ss)||
  double top_mass = 0.0;
};
// Steady state of eps Delta (c + c^dag) with kappa_c D[c]; nu = -2i eps Delta / kappa_c.
ReadoutResult readout_displacement(int delta, double eps, double kappa_c, int cutoff = 30);

struct AutonomousTrace {
  std::vector<double> times;
  std::vector<double> fidelity;
  std::vector<double> pop_delta0;
  std::vector<double> pop_delta_plus;   // Delta = +1
  std::vector<double> pop_delta_minus;  // Delta = -1
};
// Logical pair-cat input c0|0_L> + c1|1_L> at Delta = 0; loss is "none", "a" or "b".
AutonomousTrace autonomous_correction_demo(double gamma, double kappa2, double kappa_f, const std::string& loss,
                                           cplx c0, cplx c1, double t_final, int steps, int cutoff = 20);

}  // namespace paircat
