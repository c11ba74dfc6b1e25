#include "paircat/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/MatrixFunctions>

#include "paircat/special.hpp"

namespace paircat {

void LindbladGenerator::set_hamiltonian(const SpMat& H) {
  if (dim == 0) dim = static_cast<int>(H.rows());
  if (H.rows() != dim || H.cols() != dim) throw ConfigError("Hamiltonian dimension mismatch");
  hamiltonian = H;
}

void LindbladGenerator::add_jump(double rate, const SpMat& F) {
  if (rate < 0) throw ConfigError("jump rate must be non-negative");
  if (dim == 0) dim = static_cast<int>(F.rows());
  if (F.rows() != dim || F.cols() != dim) throw ConfigError("jump operator dimension mismatch");
  jumps.push_back({rate, F});
}

SpMat LindbladGenerator::effective() const {
  SpMat K(dim, dim);
  if (hamiltonian) K = cplx(0, -1) * *hamiltonian;
  for (const auto& j : jumps) K -= (0.5 * j.rate) * SpMat(adjoint(j.op) * j.op);
  return K;
}

Mat lindblad_rhs_serial(const LindbladGenerator& gen, const Mat& rho) {
  const SpMat K = gen.effective();
  Mat out = K * rho;
  out += rho * adjoint(K);
  for (const auto& j : gen.jumps) out += j.rate * (j.op * (rho * adjoint(j.op)));
  return out;
}

Mat lindblad_rhs(const LindbladGenerator& gen, const Mat& rho) {
  const SpMat K = gen.effective();
  const SpMat Kd = adjoint(K);
  std::vector<SpMat> Fd;
  Fd.reserve(gen.jumps.size());
  for (const auto& j : gen.jumps) Fd.push_back(adjoint(j.op));
  const int n = static_cast<int>(rho.rows());
  Mat out(n, n);
#pragma omp parallel for schedule(static)
  for (int c = 0; c < n; ++c) {
    Vec col = K * rho.col(c);
    for (SpMat::InnerIterator it(Kd, c); it; ++it) col += rho.col(it.row()) * it.value();
    for (size_t k = 0; k < gen.jumps.size(); ++k) {
      Vec t = Vec::Zero(n);
      for (SpMat::InnerIterator it(Fd[k], c); it; ++it) t += rho.col(it.row()) * it.value();
      col += gen.jumps[k].rate * (gen.jumps[k].op * t);
    }
    out.col(c) = col;
  }
  return out;
}

Mat lindblad_adjoint_rhs(const LindbladGenerator& gen, const Mat& O) {
  const SpMat K = gen.effective();
  Mat out = adjoint(K) * O;
  out += O * K;
  for (const auto& j : gen.jumps) out += j.rate * (adjoint(j.op) * (O * j.op));
  return out;
}

SpMat superoperator(const LindbladGenerator& gen) {
  const SpMat K = gen.effective();
  SpMat I(gen.dim, gen.dim);
  I.setIdentity();
  SpMat S = kron(K, I) + kron(I, SpMat(K.conjugate()));
  for (const auto& j : gen.jumps) S += j.rate * kron(j.op, SpMat(j.op.conjugate()));
  S.prune(cplx(0.0));
  return S;
}

Vec vectorize(const Mat& rho) {
  const int n = static_cast<int>(rho.rows());
  Vec v(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v[i * n + j] = rho(i, j);
  return v;
}

Mat unvectorize(const Vec& v, int n) {
  Mat r(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = v[i * n + j];
  return r;
}

std::vector<int> reachable_subspace(const std::vector<SpMat>& ops, const std::vector<int>& seed) {
  if (ops.empty()) return seed;
  const int n = static_cast<int>(ops.front().rows());
  // Symmetrized adjacency: a link i -> j exists if any op or its adjoint connects them.
  std::vector<std::vector<int>> adj(n);
  for (const auto& A : ops)
    for (int k = 0; k < A.outerSize(); ++k)
      for (SpMat::InnerIterator it(A, k); it; ++it) {
        if (it.value() == cplx(0.0)) continue;
        adj[it.row()].push_back(static_cast<int>(it.col()));
        adj[it.col()].push_back(static_cast<int>(it.row()));
      }
  std::vector<char> seen(n, 0);
  std::queue<int> q;
  for (int s : seed)
    if (!seen[s]) {
      seen[s] = 1;
      q.push(s);
    }
  while (!q.empty()) {
    const int i = q.front();
    q.pop();
    for (int j : adj[i])
      if (!seen[j]) {
        seen[j] = 1;
        q.push(j);
      }
  }
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

std::vector<int> support_of(const Vec& v, double tol) {
  std::vector<int> out;
  for (int i = 0; i < v.size(); ++i)
    if (std::abs(v[i]) > tol) out.push_back(i);
  return out;
}

SpMat restrict_operator(const SpMat& A, const std::vector<int>& idx) {
  std::vector<int> pos(A.rows(), -1);
  for (size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
  std::vector<Triplet> t;
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it)
      if (pos[it.row()] >= 0 && pos[it.col()] >= 0) t.emplace_back(pos[it.row()], pos[it.col()], it.value());
  SpMat R(idx.size(), idx.size());
  R.setFromTriplets(t.begin(), t.end());
  return R;
}

LindbladGenerator restrict_generator(const LindbladGenerator& gen, const std::vector<int>& idx) {
  LindbladGenerator r;
  r.dim = static_cast<int>(idx.size());
  if (gen.hamiltonian) r.hamiltonian = restrict_operator(*gen.hamiltonian, idx);
  for (const auto& j : gen.jumps) r.jumps.push_back({j.rate, restrict_operator(j.op, idx)});
  return r;
}

Mat restrict_matrix(const Mat& A, const std::vector<int>& idx) {
  const int m = static_cast<int>(idx.size());
  Mat R(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) R(i, j) = A(idx[i], idx[j]);
  return R;
}

Mat embed_matrix(const Mat& A, const std::vector<int>& idx, int dim) {
  Mat R = Mat::Zero(dim, dim);
  const int m = static_cast<int>(idx.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) R(idx[i], idx[j]) = A(i, j);
  return R;
}

namespace {

// Sub-block A[rows, cols] after checking that A maps span(cols) into span(rows).
Mat invariant_block(const SpMat& A, const std::vector<int>& idx) {
  std::vector<int> pos(A.rows(), -1);
  for (size_t k = 0; k < idx.size(); ++k) pos[idx[k]] = static_cast<int>(k);
  Mat B = Mat::Zero(idx.size(), idx.size());
  for (int k = 0; k < A.outerSize(); ++k)
    for (SpMat::InnerIterator it(A, k); it; ++it) {
      const bool in_c = pos[it.col()] >= 0, in_r = pos[it.row()] >= 0;
      if (in_c && !in_r && it.value() != cplx(0.0)) throw NumericalError("operator leaks out of the block");
      if (in_c && in_r) B(pos[it.row()], pos[it.col()]) = it.value();
    }
  return B;
}

Mat kron_dense(const Mat& A, const Mat& B) {
  Mat K(A.rows() * B.rows(), A.cols() * B.cols());
  for (int i = 0; i < A.rows(); ++i)
    for (int j = 0; j < A.cols(); ++j) K.block(i * B.rows(), j * B.cols(), B.rows(), B.cols()) = A(i, j) * B;
  return K;
}

}  // namespace

Mat coherence_block(const LindbladGenerator& gen, const std::vector<int>& ket_idx, const std::vector<int>& bra_idx) {
  const SpMat K = gen.effective();
  const Mat Kk = invariant_block(K, ket_idx), Kb = invariant_block(K, bra_idx);
  const Mat Ik = Mat::Identity(ket_idx.size(), ket_idx.size());
  const Mat Ib = Mat::Identity(bra_idx.size(), bra_idx.size());
  Mat L = kron_dense(Kk, Ib) + kron_dense(Ik, Kb.conjugate());
  for (const auto& j : gen.jumps) {
    const Mat Fk = invariant_block(j.op, ket_idx), Fb = invariant_block(j.op, bra_idx);
    L += j.rate * kron_dense(Fk, Fb.conjugate());
  }
  return L;
}

namespace {

using State = std::vector<cplx>;

std::vector<Mat> evolve_rk(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps,
                           const EvolveOptions& opt) {
  namespace ode = boost::numeric::odeint;
  const int n = static_cast<int>(rho0.rows());
  State y(rho0.data(), rho0.data() + rho0.size());
  auto sys = [&](const State& x, State& dxdt, double) {
    Eigen::Map<const Mat> r(x.data(), n, n);
    const Mat d = lindblad_rhs_serial(gen, r);
    std::copy(d.data(), d.data() + d.size(), dxdt.begin());
  };
  auto stepper = ode::make_controlled(opt.atol, opt.rtol, ode::runge_kutta_dopri5<State>());
  std::vector<Mat> out{rho0};
  const cplx tr0 = rho0.trace();
  double t = 0.0;
  for (int s = 1; s <= steps; ++s) {
    ode::integrate_adaptive(stepper, sys, y, t, t + dt, dt / 10);
    t += dt;
    Mat r = Eigen::Map<Mat>(y.data(), n, n);
    if (std::abs(r.trace() - tr0) > opt.max_trace_drift) throw NumericalError("trace drift exceeds tolerance");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<Mat> evolve_expm(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps,
                             const EvolveOptions& opt) {
  const int n = static_cast<int>(rho0.rows());
  if (n * n > opt.expm_budget) throw TruncationError("superoperator exceeds the dense expm budget");
  const Mat S = Mat(superoperator(gen)) * dt;
  const Mat P = S.exp();
  std::vector<Mat> out{rho0};
  Vec v = vectorize(rho0);
  for (int s = 1; s <= steps; ++s) {
    v = P * v;
    out.push_back(unvectorize(v, n));
  }
  return out;
}

}  // namespace

std::vector<Mat> evolve(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps, const EvolveOptions& opt) {
  if (dt < 0 || steps < 0) throw ConfigError("evolve: negative time");
  if (rho0.rows() != gen.dim && !(gen.dim == 0 && gen.jumps.empty()))
    throw ConfigError("evolve: state dimension does not match the generator");
  if (gen.jumps.empty() && !gen.hamiltonian) return std::vector<Mat>(steps + 1, rho0);
  return opt.method == EvolveOptions::Method::rk ? evolve_rk(gen, rho0, dt, steps, opt)
                                                 : evolve_expm(gen, rho0, dt, steps, opt);
}

Mat evolve_to(const LindbladGenerator& gen, const Mat& rho0, double t, const EvolveOptions& opt) {
  return evolve(gen, rho0, t, 1, opt).back();
}

std::vector<Mat> evolve_expm_reachable(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps,
                                       int budget, int* used) {
  if (dt < 0 || steps < 0) throw ConfigError("evolve: negative time");
  const int n = static_cast<int>(rho0.rows());
  if (n != gen.dim) throw ConfigError("evolve: state dimension does not match the generator");
  const SpMat S = superoperator(gen);
  const Vec v0 = vectorize(rho0);
  std::vector<char> seen(v0.size(), 0);
  std::vector<int> sel;
  std::queue<int> q;
  for (int i = 0; i < v0.size(); ++i)
    if (v0[i] != cplx(0)) {
      seen[i] = 1;
      q.push(i);
    }
  while (!q.empty()) {
    const int j = q.front();
    q.pop();
    sel.push_back(j);
    for (SpMat::InnerIterator it(S, j); it; ++it)
      if (!seen[it.row()]) {
        seen[it.row()] = 1;
        q.push(static_cast<int>(it.row()));
      }
  }
  std::sort(sel.begin(), sel.end());
  const int m = static_cast<int>(sel.size());
  if (used) *used = m;
  if (m > budget) throw TruncationError("reachable superoperator block exceeds the dense expm budget");
  std::vector<int> pos(v0.size(), -1);
  for (int k = 0; k < m; ++k) pos[sel[k]] = k;
  Mat Ssub = Mat::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (SpMat::InnerIterator it(S, sel[k]); it; ++it) Ssub(pos[it.row()], k) = it.value();
  const Mat P = (Ssub * dt).exp();
  Vec v(m);
  for (int k = 0; k < m; ++k) v[k] = v0[sel[k]];
  std::vector<Mat> out{rho0};
  for (int s = 1; s <= steps; ++s) {
    v = P * v;
    Vec full = Vec::Zero(v0.size());
    for (int k = 0; k < m; ++k) full[sel[k]] = v[k];
    out.push_back(unvectorize(full, n));
  }
  return out;
}

RateResult dephasing_rate_spectrum(double gamma, int delta, double kappa2, double kappa_n, int cutoff) {
  if (!(kappa2 > 0)) throw ConfigError("kappa_II must be positive");
  const int D = std::abs(delta);
  const int K = cutoff + 1 - D;
  if (K < 4) throw TruncationError("chain too short for the requested Delta");
  // Chain |j, j+D>, j = 0..K-1. Under SWAP the Delta < 0 chain has the same matrix elements.
  std::vector<Triplet> tf, tn;
  for (int j = 0; j < K; ++j) {
    tf.emplace_back(j, j, -std::pow(gamma, 4));
    if (j >= 2) tf.emplace_back(j - 2, j, std::sqrt(double(j) * (j - 1) * (j + D) * (j + D - 1)));
    tn.emplace_back(j, j, double(j));
  }
  SpMat F(K, K), N(K, K);
  F.setFromTriplets(tf.begin(), tf.end());
  N.setFromTriplets(tn.begin(), tn.end());
  LindbladGenerator gen;
  gen.add_jump(kappa2, F);
  gen.add_jump(kappa_n, N);

  std::vector<int> even, odd;
  for (int j = 0; j < K; ++j) (j % 2 ? odd : even).push_back(j);
  const Mat L = coherence_block(gen, even, odd);

  // Code coherence |0_L><1_L| on the block.
  const double lg = std::log(gamma);
  auto amp = [&](int j) { return std::exp((2.0 * j + D) * lg - 0.5 * (special::log_factorial(j) + special::log_factorial(j + D))); };
  Vec c0(even.size()), c1(odd.size());
  for (size_t i = 0; i < even.size(); ++i) c0[i] = amp(even[i]);
  for (size_t i = 0; i < odd.size(); ++i) c1[i] = amp(odd[i]);
  c0.normalize();
  c1.normalize();
  Vec target(even.size() * odd.size());
  for (size_t i = 0; i < even.size(); ++i)
    for (size_t k = 0; k < odd.size(); ++k) target[i * odd.size() + k] = c0[i] * std::conj(c1[k]);

  Eigen::ComplexEigenSolver<Mat> es(L);
  if (es.info() != Eigen::Success) throw NumericalError("eigensolver failed");
  const Vec w = es.eigenvalues();
  std::vector<int> order(w.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return std::abs(w[a].real()) < std::abs(w[b].real()); });
  for (int i : order) {
    if (std::abs(w[i]) < 1e-10) continue;
    const Vec v = es.eigenvectors().col(i);
    const double ov = std::abs(v.dot(target)) / (v.norm() * target.norm());
    if (ov > 0.5) return {std::abs(w[i].real()) / (0.5 * kappa_n), w[i], ov};
  }
  throw NumericalError("no eigenvector overlaps the logical coherence");
}

std::vector<RateRow> dephasing_sweep(const std::vector<double>& gammas, const std::vector<int>& deltas,
                                     const std::vector<double>& kappa_ns, double kappa2, int cutoff) {
  std::vector<RateRow> rows;
  for (double kn : kappa_ns)
    for (int d : deltas)
      for (double g : gammas) rows.push_back({g, d, kn, 0.0});
  const int n = static_cast<int>(rows.size());
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i)
    rows[i].scaled_rate = dephasing_rate_spectrum(rows[i].gamma, rows[i].delta, kappa2, rows[i].kappa_n, cutoff).scaled_rate;
  return rows;
}

Eigen::Matrix2cd zeno_projected_hamiltonian(const CodeSpace& code, const SpMat& H) {
  const Mat V = code.isometry();
  return V.adjoint() * (H * V);
}

namespace {
SpMat outer_sparse(const Vec& a, const Vec& b) { return Mat(a * b.adjoint()).sparseView(1.0, 1e-300); }
}  // namespace

SpMat cat_loss1_jump(double alpha, int cutoff) {
  const CodeSpace c0 = cat_code(cutoff, alpha, 0), c1 = cat_code(cutoff, alpha, 1);
  return outer_sparse(c0.zero, c1.one) + outer_sparse(c0.one, c1.zero);
}

SpMat paircat_loss2_jump(double gamma, int delta, int cutoff) {
  if (delta == 0) throw ConfigError("loss2 jump is not defined for Delta = 0");
  const CodeSpace c0 = paircat_code(cutoff, gamma, 0), cd = paircat_code(cutoff, gamma, delta);
  if (delta < 0 && (delta % 2 != 0)) return outer_sparse(c0.zero, cd.one) + outer_sparse(c0.one, cd.zero);
  return outer_sparse(c0.zero, cd.zero) + outer_sparse(c0.one, cd.one);
}

SpMat autonomous_jump(const FockSpace& s, int sign) {
  if (sign == 1) return SpMat(creation_op(s, 0) * difference_projector(s, 1).op);
  if (sign == -1) return SpMat(creation_op(s, 1) * difference_projector(s, -1).op);
  throw ConfigError("autonomous jump sign must be +1 or -1");
}

SpMat jump_operator_ii(const FockSpace& s, cplx gamma) {
  return SpMat(power(annihilation_op(s, 0), 2) * power(annihilation_op(s, 1), 2) - std::pow(gamma, 4) * identity_op(s));
}

SpMat jump_operator_i(const FockSpace& s, cplx alpha) {
  return SpMat(power(annihilation_op(s, 0), 2) - alpha * alpha * identity_op(s));
}

}  // namespace paircat
