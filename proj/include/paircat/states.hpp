#pragma once

#include <span>
#include <vector>

#include "paircat/fock.hpp"

namespace paircat {

inline constexpr double kDefaultMaxTail = 1e-8;

// Closed-form normalizations. All depend on |alpha| or |gamma| only.
namespace norms {
// N_Pi = <alpha|P_Pi|alpha> = (1 + (-1)^Pi e^{-2a^2}) / 2
double cat_parity(double a, int parity);
// N_{mu,Pi} = N_Pi/2 + (-1)^mu e^{-a^2} cos(a^2 - pi Pi/2) / 2
double cat_code(double a, int parity, int mu);
// N_Delta = e^{-2g^2} I_Delta(2g^2)
double pair(double g, int delta);
// N_{mu,Delta} = e^{-2g^2} [I_Delta + (-1)^mu J_Delta](2g^2) / 2, mu taken mod 2
double paircat(double g, int delta, int mu);
}  // namespace norms

Ket coherent(const FockSpace& s, cplx alpha, int mode = 0, double max_tail = kDefaultMaxTail);
// P_Pi|alpha>/sqrt(N_Pi)
Ket cat_state(const FockSpace& s, cplx alpha, int parity, int mode = 0, double max_tail = kDefaultMaxTail);
// Support on 4n + 2mu + Pi.
Ket cat_code_state(const FockSpace& s, cplx alpha, int parity, int mu, int mode = 0,
                   double max_tail = kDefaultMaxTail);
// Support on |n, n+Delta> of modes (0, 1); Delta < 0 via SWAP.
Ket pair_coherent(const FockSpace& s, cplx gamma, int delta, double max_tail = kDefaultMaxTail);
// Fock-series form on |2n+mu, 2n+mu+Delta>.
Ket pair_cat_state(const FockSpace& s, cplx gamma, int delta, int mu, double max_tail = kDefaultMaxTail);
// [|g_D> + (-1)^mu (-i)^D |ig_D>] / (2 sqrt(N_{mu,D}/N_D)), built from two pair-coherent kets.
Ket pair_cat_superposition(const FockSpace& s, cplx gamma, int delta, int mu, double max_tail = kDefaultMaxTail);
// Amplitudes ~ sqrt(C(n+Delta, n)) tanh^n xi on |n, n+Delta>.
Ket two_mode_squeezed(const FockSpace& s, double xi, int delta, double max_tail = kDefaultMaxTail);
// M-mode code on the chain of fixed nearest-neighbour differences. The chain
// index j is the smallest occupation; the code keeps j = (S+1)(d n + mu).
Ket multimode_code_state(const FockSpace& s, cplx gamma, std::span<const int> dvec, int d, int spacing, int mu,
                         double max_tail = kDefaultMaxTail);
// Tensor product of kets on consecutive blocks of modes.
Ket product(const std::vector<Ket>& parts);

// Mean photon number of a mode and the total over all modes.
double mean_photons(const Ket& k, int mode);
double mean_total_photons(const Ket& k);

}  // namespace paircat
