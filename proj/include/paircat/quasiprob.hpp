#pragma once

#include <string>
#include <vector>

#include "paircat/fock.hpp"

namespace paircat {

// A state restricted to one Delta sector, in chain coordinates: index n stands
// for |n, n+Delta> (Delta >= 0) or |n+|Delta|, n> (Delta < 0).
struct FixedDeltaState {
  int delta = 0;
  Mat rho;
};
FixedDeltaState fixed_delta_state(const Ket& psi, int delta);
FixedDeltaState fixed_delta_state(const FockSpace& s, const Mat& rho, int delta);

struct GridSpec {
  double re_min = -3.0, re_max = 3.0;
  int n_re = 61;
  double im_min = -3.0, im_max = 3.0;
  int n_im = 61;
  // Row-major over (im, re), re fastest.
  std::vector<cplx> points() const;
};

enum class DistKind { Q, W };

struct DistributionGrid {
  int delta = 0;
  DistKind kind = DistKind::Q;
  GridSpec grid;
  std::vector<cplx> gamma;
  std::vector<double> values;
  // sigma(gamma) for Q, sigma~(gamma^2) for W
  std::vector<double> measure;
  double max_imag = 0.0;
  double edge_magnitude = 0.0;
  std::vector<std::string> warnings;
};

// sigma(gamma) = (4/pi)|gamma|^2 I_D K_D(2|gamma|^2)
double measure_sigma(int delta, cplx gamma);
// sigma~(Gamma) = (2/pi) I_D K_D(2|Gamma|), the measure for |Gamma~_D> = |sqrt(Gamma)_D>.
// Infinite at Gamma = 0 for Delta = 0.
double measure_sigma_tilde(int delta, cplx Gamma);

// <gamma_D|rho|gamma_D> from the Fock series of the pair-coherent state.
double q_value(const FixedDeltaState& st, cplx gamma);
// Same quantity from an explicit pair-coherent ket on the state's space.
double q_value_reference(const Ket& psi, int delta, cplx gamma);
DistributionGrid q_function(const FixedDeltaState& st, const GridSpec& g);
DistributionGrid q_function_serial(const FixedDeltaState& st, const GridSpec& g);
// int d^2gamma sigma Q on the disc |gamma| < radius, midpoint rule in r and
// uniform in the angle. Nested radii with the same dr increase monotonically.
double q_normalization(const FixedDeltaState& st, double radius, double dr = 0.005, int ntheta = 128);

// <m|exp(eta K+ - eta* K-)|n> = e^{i phi (m-n)} s_mn(r) for eta = r e^{i phi}, from the
// disentangled SU(1,1) form; no truncation is involved.
Eigen::MatrixXd su11_table(int size, int delta, double r);
// tr(rho exp(eta a+b+ - eta* ab)) on the sector.
cplx characteristic(const FixedDeltaState& st, cplx eta);
// Same by exponentiating the truncated tridiagonal chain; valid while the chain
// is long enough for |eta|.
cplx characteristic_tridiagonal(const FixedDeltaState& st, cplx eta, int chain = 200);

struct WOptions {
  double radius = 20.0;
  int nr = 2001;  // Simpson nodes on [0, radius]; odd
  double edge_tol = 1e-6;
};
// W(gamma^2) through the angular Fourier series of the characteristic function
// and a radial Hankel integral per harmonic.
DistributionGrid w_function(const FixedDeltaState& st, const GridSpec& g, const WOptions& opt = {});
DistributionGrid w_function_serial(const FixedDeltaState& st, const GridSpec& g, const WOptions& opt = {});
// Direct 2-D sum of e^{eta* G - G* eta} chi(eta) on an n x n square grid of
// half-width L. Returns the complex value before taking the real part.
cplx w_cartesian_reference(const FixedDeltaState& st, cplx Gamma, double half_width, int n);

}  // namespace paircat
