#include "paircat/quasiprob.hpp"

#include <cmath>
#include <limits>

#include "paircat/special.hpp"
#include "paircat/states.hpp"

namespace paircat {

namespace {

std::vector<int> chain_indices(const FockSpace& s, int delta) {
  if (s.modes() != 2) throw ConfigError("fixed-Delta distributions need a two-mode space");
  const int D = std::abs(delta);
  std::vector<int> idx;
  for (int n = 0;; ++n) {
    const std::vector<int> occ = delta >= 0 ? std::vector<int>{n, n + D} : std::vector<int>{n + D, n};
    if (!s.contains(occ)) break;
    idx.push_back(s.index(occ));
  }
  if (idx.empty()) throw TruncationError("Delta sector has no states below the cutoff");
  return idx;
}

// Normalized pair-coherent amplitudes u_n(gamma) on the chain.
Vec pair_coherent_amplitudes(int size, int delta, cplx gamma) {
  const int D = std::abs(delta);
  Vec u = Vec::Zero(size);
  const double g = std::abs(gamma);
  if (g == 0.0) {
    u[0] = 1.0;
    return u;
  }
  const double x = 2 * g * g;
  const double lognorm = std::log(special::bessel_i_scaled(D, x)) + x;
  const double lg = std::log(g), ph = std::arg(gamma);
  for (int n = 0; n < size; ++n) {
    const int p = 2 * n + D;
    const double lm =
        p * lg - 0.5 * (special::log_factorial(n) + special::log_factorial(n + D)) - 0.5 * lognorm;
    u[n] = std::polar(std::exp(lm), p * ph);
  }
  return u;
}

double log_cosh(double r) { return r + std::log1p(std::exp(-2 * r)) - std::log(2.0); }

// Fourier coefficients c_k(r) of chi(r e^{i phi}) = sum_k c_k(r) e^{i k phi},
// tabulated on the radial nodes; column k + L - 1.
Mat harmonic_table(const FixedDeltaState& st, const std::vector<double>& r, bool parallel) {
  const int L = static_cast<int>(st.rho.rows());
  const int D = std::abs(st.delta);
  Mat c = Mat::Zero(static_cast<Eigen::Index>(r.size()), 2 * L - 1);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < static_cast<int>(r.size()); ++i) {
    const Eigen::MatrixXd s = su11_table(L, D, r[i]);
    for (int n = 0; n < L; ++n)
      for (int m = 0; m < L; ++m)
        if (st.rho(n, m) != cplx(0)) c(i, m - n + L - 1) += st.rho(n, m) * s(m, n);
  }
  return c;
}

struct WPrepared {
  std::vector<double> r, w;
  Mat c;
  std::vector<int> ks;  // harmonics with nonzero weight
  int kmax = 0;
};

WPrepared prepare_w(const FixedDeltaState& st, const WOptions& opt, bool parallel) {
  if (opt.nr < 3 || opt.nr % 2 == 0) throw ConfigError("radial node count must be odd and at least 3");
  if (!(opt.radius > 0)) throw ConfigError("radial extent must be positive");
  WPrepared p;
  const double h = opt.radius / (opt.nr - 1);
  for (int i = 0; i < opt.nr; ++i) {
    p.r.push_back(i * h);
    p.w.push_back(h / 3.0 * (i == 0 || i == opt.nr - 1 ? 1.0 : (i % 2 ? 4.0 : 2.0)));
  }
  p.c = harmonic_table(st, p.r, parallel);
  const int L = static_cast<int>(st.rho.rows());
  for (int k = -(L - 1); k <= L - 1; ++k)
    if (p.c.col(k + L - 1).cwiseAbs().maxCoeff() > 0) {
      p.ks.push_back(k);
      p.kmax = std::max(p.kmax, std::abs(k));
    }
  return p;
}

cplx w_point(const FixedDeltaState& st, const WPrepared& p, cplx Gamma) {
  const int L = static_cast<int>(st.rho.rows());
  const double G = std::abs(Gamma), th = std::arg(Gamma);
  const double sig = measure_sigma_tilde(st.delta, Gamma);
  if (!std::isfinite(sig)) return 0.0;
  std::vector<cplx> acc(p.ks.size(), 0.0);
  for (size_t i = 0; i < p.r.size(); ++i) {
    const auto J = special::bessel_j_table(p.kmax, 2 * p.r[i] * G);
    const double wr = p.w[i] * p.r[i];
    for (size_t q = 0; q < p.ks.size(); ++q) {
      const int k = p.ks[q];
      const double jk = (k < 0 && (-k) % 2) ? -J[-k] : J[std::abs(k)];
      acc[q] += wr * jk * p.c(static_cast<Eigen::Index>(i), k + L - 1);
    }
  }
  cplx sum = 0.0;
  for (size_t q = 0; q < p.ks.size(); ++q) sum += std::polar(1.0, p.ks[q] * th) * acc[q];
  return 2.0 / (kPi * sig) * sum;
}

DistributionGrid w_grid(const FixedDeltaState& st, const GridSpec& g, const WOptions& opt, bool parallel) {
  const WPrepared p = prepare_w(st, opt, parallel);
  DistributionGrid out;
  out.delta = st.delta;
  out.kind = DistKind::W;
  out.grid = g;
  out.gamma = g.points();
  const int n = static_cast<int>(out.gamma.size());
  out.values.assign(n, 0.0);
  out.measure.assign(n, 0.0);
  std::vector<double> im(n, 0.0);
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (int i = 0; i < n; ++i) {
    const cplx G = out.gamma[i] * out.gamma[i];
    const cplx w = w_point(st, p, G);
    out.values[i] = w.real();
    im[i] = std::abs(w.imag());
    out.measure[i] = measure_sigma_tilde(st.delta, G);
  }
  for (double v : im) out.max_imag = std::max(out.max_imag, v);
  out.edge_magnitude = p.c.row(p.c.rows() - 1).cwiseAbs().maxCoeff();
  if (out.edge_magnitude > opt.edge_tol)
    out.warnings.push_back("characteristic function has not decayed at the integration edge (|chi| = " +
                           std::to_string(out.edge_magnitude) + ")");
  return out;
}

DistributionGrid q_grid(const FixedDeltaState& st, const GridSpec& g, bool parallel) {
  DistributionGrid out;
  out.delta = st.delta;
  out.kind = DistKind::Q;
  out.grid = g;
  out.gamma = g.points();
  const int n = static_cast<int>(out.gamma.size());
  out.values.assign(n, 0.0);
  out.measure.assign(n, 0.0);
#pragma omp parallel for schedule(static) if (parallel)
  for (int i = 0; i < n; ++i) {
    out.values[i] = q_value(st, out.gamma[i]);
    out.measure[i] = measure_sigma(st.delta, out.gamma[i]);
  }
  return out;
}

}  // namespace

FixedDeltaState fixed_delta_state(const Ket& psi, int delta) {
  const auto idx = chain_indices(psi.space, delta);
  Vec c(static_cast<Eigen::Index>(idx.size()));
  for (size_t n = 0; n < idx.size(); ++n) c[n] = psi.amp[idx[n]];
  return {delta, c * c.adjoint()};
}

FixedDeltaState fixed_delta_state(const FockSpace& s, const Mat& rho, int delta) {
  const auto idx = chain_indices(s, delta);
  const int L = static_cast<int>(idx.size());
  Mat b(L, L);
  for (int n = 0; n < L; ++n)
    for (int m = 0; m < L; ++m) b(n, m) = rho(idx[n], idx[m]);
  return {delta, b};
}

std::vector<cplx> GridSpec::points() const {
  if (n_re < 1 || n_im < 1) throw ConfigError("grid needs at least one point per axis");
  std::vector<cplx> p;
  p.reserve(static_cast<size_t>(n_re) * n_im);
  auto at = [](double lo, double hi, int n, int i) { return n == 1 ? lo : lo + (hi - lo) * i / (n - 1); };
  for (int j = 0; j < n_im; ++j)
    for (int i = 0; i < n_re; ++i) p.emplace_back(at(re_min, re_max, n_re, i), at(im_min, im_max, n_im, j));
  return p;
}

double measure_sigma(int delta, cplx gamma) {
  const double g2 = std::norm(gamma);
  if (g2 == 0.0) return 0.0;
  return 4.0 / kPi * g2 * special::bessel_ik_product(std::abs(delta), 2 * g2);
}

double measure_sigma_tilde(int delta, cplx Gamma) {
  const double G = std::abs(Gamma);
  const int D = std::abs(delta);
  if (G == 0.0) return D == 0 ? std::numeric_limits<double>::infinity() : 1.0 / (kPi * D);
  return 2.0 / kPi * special::bessel_ik_product(D, 2 * G);
}

double q_value(const FixedDeltaState& st, cplx gamma) {
  const Vec u = pair_coherent_amplitudes(static_cast<int>(st.rho.rows()), st.delta, gamma);
  return std::max(0.0, (u.adjoint() * st.rho * u)(0, 0).real());
}

double q_value_reference(const Ket& psi, int delta, cplx gamma) {
  const Ket pc = pair_coherent(psi.space, gamma, delta, 1.0);
  return std::norm(pc.amp.dot(psi.amp));
}

DistributionGrid q_function(const FixedDeltaState& st, const GridSpec& g) { return q_grid(st, g, true); }
DistributionGrid q_function_serial(const FixedDeltaState& st, const GridSpec& g) { return q_grid(st, g, false); }

double q_normalization(const FixedDeltaState& st, double radius, double dr, int ntheta) {
  const int nr = static_cast<int>(std::floor(radius / dr + 1e-9));
  double total = 0.0;
  for (int i = 0; i < nr; ++i) {
    const double r = (i + 0.5) * dr;
    double ring = 0.0;
    for (int t = 0; t < ntheta; ++t) {
      const cplx g = std::polar(r, 2 * kPi * (t + 0.5) / ntheta);
      ring += measure_sigma(st.delta, g) * q_value(st, g);
    }
    total += ring * (2 * kPi / ntheta) * r * dr;
  }
  return total;
}

Eigen::MatrixXd su11_table(int size, int delta, double r) {
  const int D = std::abs(delta);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(size, size);
  if (r == 0.0) return Eigen::MatrixXd::Identity(size, size);
  // exp(tau K+) (sech^2 r)^{K0} exp(-tau* K-), tau = e^{i phi} tanh r, K0 = n + (D+1)/2
  const double lt = std::log(std::tanh(r));
  const double ls = -2.0 * log_cosh(r);
  std::vector<double> lf(size + D + 1);
  for (size_t i = 0; i < lf.size(); ++i) lf[i] = special::log_factorial(static_cast<int>(i));
  for (int m = 0; m < size; ++m)
    for (int n = 0; n < size; ++n) {
      const double half = 0.5 * (lf[m] + lf[m + D] + lf[n] + lf[n + D]);
      double acc = 0.0;
      for (int j = 0; j <= std::min(m, n); ++j) {
        const int e = m + n - 2 * j;
        const double lm = (e ? e * lt : 0.0) + (j + 0.5 * (D + 1)) * ls + half - lf[j] - lf[j + D] - lf[m - j] -
                          lf[n - j];
        acc += ((n - j) % 2 ? -1.0 : 1.0) * std::exp(lm);
      }
      s(m, n) = acc;
    }
  return s;
}

cplx characteristic(const FixedDeltaState& st, cplx eta) {
  const int L = static_cast<int>(st.rho.rows());
  const Eigen::MatrixXd s = su11_table(L, st.delta, std::abs(eta));
  const double ph = std::arg(eta);
  cplx chi = 0.0;
  for (int n = 0; n < L; ++n)
    for (int m = 0; m < L; ++m) chi += st.rho(n, m) * std::polar(s(m, n), ph * (m - n));
  return chi;
}

cplx characteristic_tridiagonal(const FixedDeltaState& st, cplx eta, int chain) {
  const int L = static_cast<int>(st.rho.rows());
  chain = std::max(chain, L + 1);
  const int D = std::abs(st.delta);
  // H = -i (eta K+ - eta* K-) is Hermitian; exp(eta K+ - eta* K-) = exp(i H).
  Mat H = Mat::Zero(chain, chain);
  for (int n = 0; n + 1 < chain; ++n) {
    const double e = std::sqrt(double(n + 1) * (n + 1 + D));
    H(n + 1, n) = -kI * eta * e;
    H(n, n + 1) = std::conj(H(n + 1, n));
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(H);
  const Eigen::VectorXcd ph = (kI * es.eigenvalues().cast<cplx>()).array().exp();
  const Mat U = es.eigenvectors() * ph.asDiagonal() * es.eigenvectors().adjoint();
  cplx chi = 0.0;
  for (int n = 0; n < L; ++n)
    for (int m = 0; m < L; ++m) chi += st.rho(n, m) * U(m, n);
  return chi;
}

DistributionGrid w_function(const FixedDeltaState& st, const GridSpec& g, const WOptions& opt) {
  return w_grid(st, g, opt, true);
}
DistributionGrid w_function_serial(const FixedDeltaState& st, const GridSpec& g, const WOptions& opt) {
  return w_grid(st, g, opt, false);
}

cplx w_cartesian_reference(const FixedDeltaState& st, cplx Gamma, double half_width, int n) {
  const double h = 2 * half_width / (n - 1);
  cplx sum = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const cplx eta(-half_width + i * h, -half_width + j * h);
      const double wt = (i == 0 || i == n - 1 ? 0.5 : 1.0) * (j == 0 || j == n - 1 ? 0.5 : 1.0);
      // eta* G - G* eta = 2i Im(eta* G)
      sum += wt * std::exp(kI * 2.0 * std::imag(std::conj(eta) * Gamma)) * characteristic(st, eta);
    }
  return sum * h * h / (kPi * kPi) / measure_sigma_tilde(st.delta, Gamma);
}

}  // namespace paircat
