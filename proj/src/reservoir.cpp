#include "paircat/reservoir.hpp"

#include <cmath>

#include "paircat/codes.hpp"

namespace paircat {

namespace {

// |to><from| on the junction, identity on the cavities.
SpMat sigma(const FockSpace& s, int to, int from) {
  std::vector<Triplet> t;
  for (int i = 0; i < s.dim(); ++i)
    if (s.occupation(i, 0) == from) t.emplace_back(i + (to - from) * s.stride(0), i, 1.0);
  SpMat m(s.dim(), s.dim());
  m.setFromTriplets(t.begin(), t.end());
  return m;
}

double chi_bb_used(const ReservoirParams& p) { return p.cancel_bb ? 2.0 * std::norm(p.g1) / p.delta : p.chi_bb; }

// (1/2)(chi_aa a+^2 a^2 + chi_bb b+^2 b^2) + chi_ab a+a b+b on modes (ma, mb).
SpMat anharmonic(const FockSpace& s, const ReservoirParams& p, int ma, int mb) {
  const double cbb = chi_bb_used(p);
  return diagonal_op(s, [&](const std::vector<int>& o) {
    const double na = o[ma], nb = o[mb];
    return cplx(0.5 * (p.chi_aa * na * (na - 1) + cbb * nb * (nb - 1)) + p.chi_ab * na * nb);
  });
}

void check_delta(const ReservoirParams& p) {
  if (p.delta == 0.0) throw ConfigError("detuning delta must be nonzero");
}

double trace_distance(const Mat& a, const Mat& b) {
  const Mat d = a - b;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (d + d.adjoint()));
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

std::vector<SpMat> generator_ops(const LindbladGenerator& g) {
  std::vector<SpMat> ops;
  if (g.hamiltonian) ops.push_back(*g.hamiltonian);
  for (const auto& j : g.jumps) ops.push_back(j.op);
  return ops;
}

std::vector<int> support_indices(const Mat& rho) {
  std::vector<int> idx;
  for (int i = 0; i < rho.rows(); ++i)
    if (rho.row(i).cwiseAbs().maxCoeff() > 0 || rho.col(i).cwiseAbs().maxCoeff() > 0) idx.push_back(i);
  return idx;
}

// Evolve on the reachable subspace and embed the snapshots back.
std::vector<Mat> evolve_restricted(const LindbladGenerator& gen, const Mat& rho0, double dt, int steps, int* dim_used) {
  const auto idx = reachable_subspace(generator_ops(gen), support_indices(rho0));
  if (dim_used) *dim_used = static_cast<int>(idx.size());
  const auto snaps = evolve_expm_reachable(restrict_generator(gen, idx), restrict_matrix(rho0, idx), dt, steps);
  std::vector<Mat> out;
  for (const auto& r : snaps) out.push_back(embed_matrix(r, idx, gen.dim));
  return out;
}

double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  const int n = static_cast<int>(t.size());
  double st = 0, sy = 0, stt = 0, sty = 0;
  for (int i = 0; i < n; ++i) {
    const double ly = std::log(y[i]);
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
  }
  return (n * sty - st * sy) / (n * stt - st * st);
}

// Population of cavity Fock state (na, nb) in the full model over time.
RateFit fit_population_decay(const ReservoirParams& p, int na, int nb, double norm, double formula, int samples) {
  if (samples < 3) throw ConfigError("rate fit needs at least three samples");
  if (!(formula > 0)) throw ConfigError("rate fit needs a positive formula rate");
  const int cutoff = std::max(na, nb);
  const FockSpace s = junction_space(cutoff);
  const LindbladGenerator gen = full_model(p, cutoff);
  Mat rho0 = Mat::Zero(s.dim(), s.dim());
  const std::vector<int> occ{0, na, nb};
  rho0(s.index(occ), s.index(occ)) = 1.0;
  RateFit r;
  r.formula = formula;
  r.horizon = 1.0 / (norm * formula);
  const double dt = r.horizon / (samples - 1);
  const auto snaps = evolve_restricted(gen, rho0, dt, samples - 1, nullptr);
  std::vector<double> t, y;
  for (int i = 1; i < samples; ++i) {
    double pop = 0.0;
    for (int j = 0; j < 3; ++j) {
      const int k = s.index(std::vector<int>{j, na, nb});
      pop += snaps[i](k, k).real();
    }
    t.push_back(i * dt);
    y.push_back(pop);
  }
  r.fitted = -fit_log_slope(t, y) / norm;
  r.ratio = r.fitted / r.formula;
  return r;
}

}  // namespace

EffectiveParams effective_params(const ReservoirParams& p) {
  check_delta(p);
  EffectiveParams e;
  const double gg = std::abs(p.g1 * p.g2);
  e.kappa2 = 4.0 * gg * gg / (p.gamma_fg * p.delta * p.delta);
  e.error_rate = std::norm(p.g1) * p.gamma_eg / (p.delta * p.delta);
  if (p.eps_gf == cplx(0)) {
    e.gamma = 0.0;
  } else {
    if (gg == 0.0) throw ConfigError("gamma is undefined for g1 g2 = 0 with a nonzero gf drive");
    const cplx w = -p.eps_gf * p.delta / (p.g1 * p.g2);
    double arg = std::arg(w);
    if (arg < 0) arg += 2 * kPi;
    e.gamma = std::polar(std::pow(std::abs(w), 0.25), arg / 4.0);
  }
  return e;
}

RegimeFlags regime_flags(const ReservoirParams& p) {
  check_delta(p);
  RegimeFlags f;
  const double c = std::max({std::abs(p.g1), std::abs(p.g2), std::abs(p.eps_gf)});
  f.perturbative_ratio = c > 0 ? std::abs(p.delta) / c : INFINITY;
  const double e = std::max(std::abs(p.g1 * p.g2) / std::abs(p.delta), std::abs(p.eps_gf));
  f.lossy_ratio = e > 0 ? p.gamma_fg / e : INFINITY;
  f.perturbative = f.perturbative_ratio >= p.regime_factor;
  f.lossy_junction = f.lossy_ratio >= p.regime_factor;
  return f;
}

FockSpace junction_space(int cutoff) { return FockSpace({2, cutoff, cutoff}); }

LindbladGenerator full_model(const ReservoirParams& p, int cutoff) {
  check_delta(p);
  const FockSpace s = junction_space(cutoff);
  const SpMat a2 = power(annihilation_op(s, 1), 2), b2 = power(annihilation_op(s, 2), 2);
  const SpMat eg = sigma(s, 1, 0), fe = sigma(s, 2, 1), fg = sigma(s, 2, 0);
  SpMat V = p.g1 * SpMat(eg * b2) + p.g2 * SpMat(fe * a2) + p.eps_gf * fg;
  SpMat H = SpMat(V + adjoint(V)) - p.delta * SpMat(sigma(s, 1, 1)) - anharmonic(s, p, 1, 2);
  LindbladGenerator g;
  g.dim = s.dim();
  g.set_hamiltonian(H);
  if (p.gamma_fg > 0) g.add_jump(p.gamma_fg, sigma(s, 0, 2));
  if (p.gamma_eg > 0) g.add_jump(p.gamma_eg, sigma(s, 0, 1));
  return g;
}

LindbladGenerator effective_model(const ReservoirParams& p, int cutoff) {
  const EffectiveParams e = effective_params(p);
  const FockSpace s = FockSpace::uniform(2, cutoff);
  const double shift = std::norm(p.g1) / p.delta;
  SpMat H = diagonal_op(s, [&](const std::vector<int>& o) {
    const double nb = o[1];
    return cplx(shift * nb * (nb - 1));
  });
  H = SpMat(H - anharmonic(s, p, 0, 1));
  LindbladGenerator g;
  g.dim = s.dim();
  g.set_hamiltonian(H);
  if (e.kappa2 > 0) g.add_jump(e.kappa2, jump_operator_ii(s, e.gamma));
  if (e.error_rate > 0) g.add_jump(e.error_rate, power(annihilation_op(s, 1), 2));
  return g;
}

ValidationReport validate_elimination(const ReservoirParams& p, int cutoff, const Mat& rho0, double horizon,
                                      int steps) {
  ValidationReport r;
  r.eff = effective_params(p);
  r.regime = regime_flags(p);
  if (!r.regime.perturbative || !r.regime.lossy_junction)
    throw ConfigError("parameters are outside the perturbative, lossy-junction regime");
  if (cutoff > 6) throw TruncationError("validation is limited to cavity cutoff 6");
  if (steps < 1 || !(horizon > 0)) throw ConfigError("horizon and step count must be positive");
  const FockSpace cav = FockSpace::uniform(2, cutoff);
  if (rho0.rows() != cav.dim()) throw ConfigError("cavity state does not match the cutoff");
  const FockSpace s = junction_space(cutoff);
  Mat full0 = Mat::Zero(s.dim(), s.dim());
  full0.topLeftCorner(cav.dim(), cav.dim()) = rho0;  // junction in |g>
  const double dt = horizon / steps;
  const auto full = evolve_restricted(full_model(p, cutoff), full0, dt, steps, &r.full_dim);
  const auto eff = evolve_restricted(effective_model(p, cutoff), rho0, dt, steps, &r.effective_dim);
  for (int i = 0; i <= steps; ++i) {
    r.times.push_back(i * dt);
    r.trace_distance.push_back(trace_distance(partial_trace(s, full[i], 0), eff[i]));
    r.max_trace_distance = std::max(r.max_trace_distance, r.trace_distance.back());
  }
  return r;
}

RateFit fit_four_photon_rate(const ReservoirParams& p, int samples) {
  ReservoirParams q = p;
  q.eps_gf = 0.0;
  q.gamma_eg = 0.0;
  return fit_population_decay(q, 2, 2, 4.0, effective_params(q).kappa2, samples);
}

RateFit fit_parasitic_rate(const ReservoirParams& p, int samples) {
  return fit_population_decay(p, 0, 2, 2.0, effective_params(p).error_rate, samples);
}

ReadoutResult readout_displacement(int delta, double eps, double kappa_c, int cutoff) {
  if (!(kappa_c > 0)) throw ConfigError("kappa_c must be positive");
  const double nu = std::abs(2.0 * eps * delta / kappa_c);
  if (nu * nu + 8.0 * nu + 8.0 > cutoff) throw TruncationError("readout cutoff too small for the displacement");
  const FockSpace s = FockSpace::uniform(1, cutoff);
  const SpMat c = annihilation_op(s, 0);
  LindbladGenerator g;
  g.dim = s.dim();
  g.set_hamiltonian(eps * delta * SpMat(c + adjoint(c)));
  g.add_jump(kappa_c, c);
  const int n = s.dim();
  Mat A = Mat(superoperator(g));
  const Mat S = A;
  // Replace one equation with the trace condition.
  A.row(0).setZero();
  for (int i = 0; i < n; ++i) A(0, i * n + i) = 1.0;
  Vec rhs = Vec::Zero(n * n);
  rhs[0] = 1.0;
  const Vec v = A.fullPivLu().solve(rhs);
  Mat rho = unvectorize(v, n);
  rho = 0.5 * (rho + rho.adjoint());
  ReadoutResult r;
  r.amplitude = (rho * Mat(c)).trace();
  r.purity = (rho * rho).trace().real();
  r.residual = (S * vectorize(rho)).norm();
  r.top_mass = rho(n - 1, n - 1).real();
  if (r.top_mass > 1e-10) throw TruncationError("readout steady state reaches the cutoff");
  if (r.purity < 0.999) throw NumericalError("readout steady state is not a coherent state");
  return r;
}

AutonomousTrace autonomous_correction_demo(double gamma, double kappa2, double kappa_f, const std::string& loss,
                                           cplx c0, cplx c1, double t_final, int steps, int cutoff) {
  if (loss != "none" && loss != "a" && loss != "b") throw ConfigError("loss event must be none, a or b");
  if (steps < 1 || !(t_final > 0)) throw ConfigError("time grid must be positive");
  const CodeSpace code = paircat_code(cutoff, gamma, 0);
  const FockSpace& s = code.space;
  Vec psi = c0 * code.zero + c1 * code.one;
  if (psi.norm() == 0) throw ConfigError("logical input must be nonzero");
  psi.normalize();
  Vec start = psi;
  if (loss == "a") start = annihilation_op(s, 0) * psi;
  if (loss == "b") start = annihilation_op(s, 1) * psi;
  start.normalize();
  LindbladGenerator g;
  g.dim = s.dim();
  g.add_jump(kappa2, jump_operator_ii(s, gamma));
  g.add_jump(kappa_f, autonomous_jump(s, 1));
  g.add_jump(kappa_f, autonomous_jump(s, -1));
  const auto snaps = evolve_restricted(g, outer(start, start), t_final / steps, steps, nullptr);
  const SpMat P0 = difference_projector(s, 0).op, Pp = difference_projector(s, 1).op,
              Pm = difference_projector(s, -1).op;
  AutonomousTrace tr;
  for (int i = 0; i <= steps; ++i) {
    const Mat& r = snaps[i];
    tr.times.push_back(i * t_final / steps);
    tr.fidelity.push_back((psi.adjoint() * r * psi)(0, 0).real());
    tr.pop_delta0.push_back((P0 * r).trace().real());
    tr.pop_delta_plus.push_back((Pp * r).trace().real());
    tr.pop_delta_minus.push_back((Pm * r).trace().real());
  }
  return tr;
}

}  // namespace paircat
