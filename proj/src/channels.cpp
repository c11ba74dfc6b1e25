#include "paircat/channels.hpp"

#include <cmath>

#include "paircat/special.hpp"

namespace paircat {

double completeness_defect(const std::vector<SpMat>& kraus) {
  if (kraus.empty()) return 0.0;
  SpMat S(kraus.front().cols(), kraus.front().cols());
  for (const auto& E : kraus) S += adjoint(E) * E;
  SpMat I(S.rows(), S.cols());
  I.setIdentity();
  return SpMat(S - I).norm();
}

KrausChannel loss_kraus(const FockSpace& s, int mode, double kt, int lmax) {
  if (kt < 0) throw ConfigError("loss: kt must be non-negative");
  return loss_kraus_eta(s, mode, std::exp(-kt), lmax);
}

KrausChannel loss_kraus_eta(const FockSpace& s, int mode, double eta, int lmax) {
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("loss: eta must lie in (0, 1]");
  if (mode < 0 || mode >= s.modes()) throw ConfigError("mode index out of range");
  if (lmax < 0) lmax = s.cutoff(mode);
  if (eta == 1.0) lmax = 0;
  const double loss = 1.0 - eta;
  const double leta = std::log(eta);
  const SpMat damp = diagonal_op(s, [&](const std::vector<int>& o) { return cplx(std::exp(0.5 * leta * o[mode])); });
  const SpMat a = annihilation_op(s, mode);
  KrausChannel ch;
  SpMat al = identity_op(s);
  for (int l = 0; l <= lmax; ++l) {
    const double c = l == 0 ? 1.0 : std::exp(0.5 * (l * std::log(loss) - special::log_factorial(l)));
    ch.kraus.push_back(SpMat(c * damp * al).pruned());
    ch.labels.push_back("L" + std::to_string(mode) + "^" + std::to_string(l));
    al = SpMat(a * al).pruned();
  }
  ch.completeness_defect = completeness_defect(ch.kraus);
  return ch;
}

KrausChannel dephasing_kraus(const FockSpace& s, int mode, double kt, int lmax) {
  if (kt < 0) throw ConfigError("dephasing: kt must be non-negative");
  if (mode < 0 || mode >= s.modes()) throw ConfigError("mode index out of range");
  const double top = kt * double(s.cutoff(mode)) * s.cutoff(mode);
  if (lmax < 0) {
    // Poisson(top) tail below 1e-14.
    double cum = 0.0;
    lmax = 0;
    while (top > 0) {
      cum += std::exp(lmax * std::log(top) - top - special::log_factorial(lmax));
      if (1.0 - cum < 1e-14 && lmax > top) break;
      if (++lmax > 100000) throw NumericalError("dephasing: Kraus order did not converge");
    }
  }
  KrausChannel ch;
  for (int l = 0; l <= lmax; ++l) {
    ch.kraus.push_back(diagonal_op(s, [&](const std::vector<int>& o) {
      const double n = o[mode];
      if (n == 0) return cplx(l == 0 ? 1.0 : 0.0);
      const double x = kt * n * n;
      if (x == 0) return cplx(l == 0 ? 1.0 : 0.0);
      return cplx(std::exp(0.5 * (l * std::log(x) - x - special::log_factorial(l))));
    }));
    ch.labels.push_back("D" + std::to_string(mode) + "^" + std::to_string(l));
  }
  ch.completeness_defect = completeness_defect(ch.kraus);
  return ch;
}

KrausChannel product_channel(const KrausChannel& A, const KrausChannel& B) {
  KrausChannel ch;
  for (size_t i = 0; i < A.kraus.size(); ++i)
    for (size_t j = 0; j < B.kraus.size(); ++j) {
      ch.kraus.push_back(SpMat(B.kraus[j] * A.kraus[i]).pruned());
      ch.labels.push_back(A.labels[i] + "*" + B.labels[j]);
    }
  ch.completeness_defect = completeness_defect(ch.kraus);
  return ch;
}

KrausChannel uniform_loss(const FockSpace& s, double eta, int lmax) {
  KrausChannel ch = loss_kraus_eta(s, 0, eta, lmax);
  for (int m = 1; m < s.modes(); ++m) ch = product_channel(ch, loss_kraus_eta(s, m, eta, lmax));
  return ch;
}

Mat apply_channel_serial(const KrausChannel& ch, const Mat& rho) {
  Mat out = Mat::Zero(rho.rows(), rho.cols());
  for (const auto& E : ch.kraus) out += E * rho * adjoint(E);
  return out;
}

Mat apply_channel(const KrausChannel& ch, const Mat& rho) {
  const int K = static_cast<int>(ch.kraus.size());
  const int n = static_cast<int>(rho.rows());
  std::vector<Mat> T(K);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) T[k] = rho * adjoint(ch.kraus[k]);
  Mat out(n, n);
#pragma omp parallel for schedule(static)
  for (int j = 0; j < n; ++j) {
    Vec col = Vec::Zero(n);
    for (int k = 0; k < K; ++k) col += ch.kraus[k] * T[k].col(j);
    out.col(j) = col;
  }
  return out;
}

double loss_probability(const CodeSpace& code, const SpMat& E) {
  return 0.5 * ((E * code.zero).squaredNorm() + (E * code.one).squaredNorm());
}

double loss_probability(const CodeSpace& code, double eta, int l) {
  const auto ch = loss_kraus_eta(code.space, 0, eta, l);
  if (l >= static_cast<int>(ch.kraus.size())) return 0.0;
  return loss_probability(code, ch.kraus[l]);
}

double loss_probability(const CodeSpace& code, double eta, int l, int lp) {
  if (code.space.modes() < 2) throw ConfigError("pr(l, l') needs a two-mode code");
  const auto ca = loss_kraus_eta(code.space, 0, eta, l);
  const auto cb = loss_kraus_eta(code.space, 1, eta, lp);
  if (l >= static_cast<int>(ca.kraus.size()) || lp >= static_cast<int>(cb.kraus.size())) return 0.0;
  return loss_probability(code, SpMat(cb.kraus[lp] * ca.kraus[l]));
}

double analytic_p2(double alpha, double eta) {
  const double s = std::sqrt(eta) * alpha;
  const double a2 = alpha * alpha;
  const double pre = (1 - eta) * (1 - eta) * a2 * a2 / 4.0 * std::exp(-(1 - eta) * a2);
  return pre * (norms::cat_code(s, 0, 1) / norms::cat_code(alpha, 0, 0) +
                norms::cat_code(s, 0, 0) / norms::cat_code(alpha, 0, 1));
}

double analytic_p11(double gamma, double eta) {
  const double s = std::sqrt(eta) * gamma;
  const double g2 = gamma * gamma;
  const double pre = (1 - eta) * (1 - eta) * g2 * g2 / 2.0 * std::exp(-2 * (1 - eta) * g2);
  return pre * (norms::paircat(s, 0, 1) / norms::paircat(gamma, 0, 0) +
                norms::paircat(s, 0, 0) / norms::paircat(gamma, 0, 1));
}

std::vector<double> loss_distribution(const CodeSpace& code, double eta, int lmax) {
  // Uniform loss thins the total photon number binomially.
  const FockSpace& s = code.space;
  std::vector<double> pN;
  for (int i = 0; i < s.dim(); ++i) {
    int N = 0;
    for (int m = 0; m < s.modes(); ++m) N += s.occupation(i, m);
    if (N >= static_cast<int>(pN.size())) pN.resize(N + 1, 0.0);
    pN[N] += 0.5 * (std::norm(code.zero[i]) + std::norm(code.one[i]));
  }
  std::vector<double> pr(lmax + 1, 0.0);
  for (int N = 0; N < static_cast<int>(pN.size()); ++N)
    for (int l = 0; l <= std::min(N, lmax); ++l) {
      const double lb = special::log_factorial(N) - special::log_factorial(l) - special::log_factorial(N - l);
      const double t = l == 0 ? 0.0 : l * std::log(1 - eta);
      const double u = N == l ? 0.0 : (N - l) * std::log(eta);
      pr[l] += pN[N] * std::exp(lb + t + u);
    }
  return pr;
}

std::vector<LossProbRow> lossprob_sweep(const std::vector<double>& nbars, const std::vector<double>& one_minus_eta) {
  std::vector<LossProbRow> rows;
  for (double nb : nbars) {
    const double a = alpha_for_nbar(nb, 0);
    const double g = gamma_for_nbar(nb, 0);
    for (double le : one_minus_eta) {
      const double eta = 1.0 - le;
      rows.push_back({"cat", a, eta, nb, "p2", analytic_p2(a, eta)});
      rows.push_back({"paircat", g, eta, nb, "p11", analytic_p11(g, eta)});
    }
  }
  return rows;
}

}  // namespace paircat
