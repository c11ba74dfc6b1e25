#pragma once

#include <optional>
#include <vector>

#include "paircat/codes.hpp"

namespace paircat {

struct Jump {
  double rate;
  SpMat op;
};

// d rho/dt = -i[H, rho] + sum_k rate_k D[F_k] rho
struct LindbladGenerator {
  int dim = 0;
  std::optional<SpMat> hamiltonian;
  std::vector<Jump> jumps;

  void set_hamiltonian(const SpMat& H);
  void add_jump(double rate, const SpMat& F);
  // -iH - (1/2) sum rate F^dag F
  SpMat effective() const;
};

Mat lindblad_rhs_serial(const LindbladGenerator& gen, const Mat& rho);
// Column-parallel, thread-count independent.
Mat lindblad_rhs(const LindbladGenerator& gen, const Mat& rho);
// Adjoint generator applied to an observable; L^dag(1) = 0 for trace preservation.
Mat lindblad_adjoint_rhs(const LindbladGenerator& gen, const Mat& O);

// Row-major vectorization: vec(A rho B) = kron(A, B^T) vec(rho).
SpMat superoperator(const LindbladGenerator& gen);
Vec vectorize(const Mat& rho);
Mat unvectorize(const Vec& v, int n);

// Closure of a set of basis indices under the nonzero pattern of the given
// operators and their adjoints.
std::vector<int> reachable_subspace(const std::vector<SpMat>& ops, const std::vector<int>& seed);
std::vector<int> support_of(const Vec& v, double tol = 0.0);
SpMat restrict_operator(const SpMat& A, const std::vector<int>& idx);
LindbladGenerator restrict_generator(const LindbladGenerator& gen, const std::vector<int>& idx);
Mat restrict_matrix(const Mat& A, const std::vector<int>& idx);
Mat embed_matrix(const Mat& A, const std::vector<int>& idx, int dim);

// Generator on the block of operators |k><b| with k in ket_idx, b in bra_idx.
// Every operator must leave both index sets invariant.
Mat coherence_block(const LindbladGenerator& gen, const std::vector<int>& ket_idx, const std::vector<int>& bra_idx);

struct EvolveOptions {
  enum class Method { rk, expm } method = Method::rk;
  double rtol = 1e-8;
  double atol = 1e-10;
  double max_trace_drift = 1e-6;
  // Dense expm refuses generators above this superoperator dimension.
  int expm_budget = 4096;
};

// Snapshots at t = 0, dt, ..., steps*dt.
std::vector<Mat> evolve(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps,
                        const EvolveOptions& opt = {});
Mat evolve_to(const LindbladGenerator& gen, const Mat& rho0, double t, const EvolveOptions& opt = {});
// Dense expm restricted to the forward closure of the nonzero entries of
// vec(rho0) under the superoperator. Sector-preserving dynamics started in one
// sector never touches most coherences, so the closure is far smaller than n^2.
std::vector<Mat> evolve_expm_reachable(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps,
                                       int budget = 1600, int* used = nullptr);

// Slowest logical coherence decay of kappa_II D[a^2 b^2 - gamma^4] + kappa_n D[n]
// on the fixed-Delta chain of length cutoff + 1, scaled by kappa_n / 2.
struct RateResult {
  double scaled_rate = 0.0;
  cplx eigenvalue;
  double overlap = 0.0;
};
RateResult dephasing_rate_spectrum(double gamma, int delta, double kappa2, double kappa_n, int cutoff = 32);

struct RateRow {
  double gamma;
  int delta;
  double kappa_n;
  double scaled_rate;
};
// Grid points are independent and evaluated in parallel.
std::vector<RateRow> dephasing_sweep(const std::vector<double>& gammas, const std::vector<int>& deltas,
                                     const std::vector<double>& kappa_ns, double kappa2 = 1.0, int cutoff = 32);

// <mu_L| H |nu_L>
Eigen::Matrix2cd zeno_projected_hamiltonian(const CodeSpace& code, const SpMat& H);

// F_I^loss = |0_{a,0}><1_{a,1}| + |1_{a,0}><0_{a,1}|
SpMat cat_loss1_jump(double alpha, int cutoff);
// Literal case table: bit-flip pairing for Delta < 0 and odd, plain otherwise.
SpMat paircat_loss2_jump(double gamma, int delta, int cutoff);
// F(1) = a^dag P_{Delta=1}, F(-1) = b^dag P_{Delta=-1}
SpMat autonomous_jump(const FockSpace& s, int sign);

SpMat jump_operator_ii(const FockSpace& s, cplx gamma);  // a^2 b^2 - gamma^4
SpMat jump_operator_i(const FockSpace& s, cplx alpha);   // a^2 - alpha^2

}  // namespace paircat
