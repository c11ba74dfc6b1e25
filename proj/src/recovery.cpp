#include "paircat/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace paircat {

namespace {
// sqrt(1 - S) for Hermitian S, with eigenvalues of 1 - S clipped at zero.
Mat completion(const Mat& S) {
  const int n = static_cast<int>(S.rows());
  Eigen::SelfAdjointEigenSolver<Mat> es(Mat::Identity(n, n) - 0.5 * (S + S.adjoint()));
  const Eigen::VectorXd w = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

Mat recovery_sum(const RecoverySpec& r) {
  const int n = static_cast<int>(r.n_inv_sqrt.rows());
  Mat S = Mat::Zero(n, n);
  for (const auto& A : r.A) {
    const Mat R = A.adjoint() * r.n_inv_sqrt;
    S += R.adjoint() * R;
  }
  return S;
}
}  // namespace

RecoverySpec transpose_recovery(const CodeSpace& code, const KrausChannel& ch, double cutoff) {
  RecoverySpec r;
  r.code = code;
  r.cutoff = cutoff;
  const Mat V = code.isometry();
  const int n = code.space.dim();
  const int K = static_cast<int>(ch.kraus.size());
  // N = B B^dag with B = [A_1 ... A_K]. The SVD of B resolves the small
  // eigenvalues of N far better than an eigensolve of N itself.
  Mat B(n, 2 * K);
  for (int k = 0; k < K; ++k) {
    r.A.push_back(ch.kraus[k] * V);
    B.middleCols(2 * k, 2) = r.A.back();
  }
  Eigen::BDCSVD<Mat> svd(B, Eigen::ComputeThinU);
  const Eigen::VectorXd& sv = svd.singularValues();
  while (r.rank < sv.size() && sv[r.rank] * sv[r.rank] > cutoff) ++r.rank;
  const Mat U = svd.matrixU().leftCols(r.rank);
  r.n_inv_sqrt = U * sv.head(r.rank).cwiseInverse().asDiagonal() * U.adjoint();
  const Mat S = recovery_sum(r);
  const Mat C = completion(S);
  r.completeness_defect = (S + C.adjoint() * C - Mat::Identity(n, n)).norm();
  return r;
}

double entanglement_fidelity(const RecoverySpec& r) {
  const int K = static_cast<int>(r.A.size());
  std::vector<Mat> B(K);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) B[k] = r.n_inv_sqrt * r.A[k];
  // Column k of the fidelity matrix per thread; the final sum runs in a fixed order.
  std::vector<double> col(K, 0.0);
#pragma omp parallel for schedule(static)
  for (int k = 0; k < K; ++k) {
    double acc = 0.0;
    for (int j = 0; j < K; ++j) {
      const cplx t = 0.5 * (r.A[j].adjoint() * B[k]).trace();
      acc += std::norm(t);
    }
    col[k] = acc;
  }
  return std::accumulate(col.begin(), col.end(), 0.0);
}

double entanglement_fidelity_serial(const RecoverySpec& r) {
  double f = 0.0;
  for (size_t j = 0; j < r.A.size(); ++j)
    for (size_t k = 0; k < r.A.size(); ++k) f += std::norm(0.5 * (r.A[j].adjoint() * r.n_inv_sqrt * r.A[k]).trace());
  return f;
}

std::vector<Mat> recovery_kraus_dense(const RecoverySpec& r) {
  const Mat V = r.code.isometry();
  std::vector<Mat> R;
  for (const auto& A : r.A) R.push_back(V * A.adjoint() * r.n_inv_sqrt);
  R.push_back(completion(recovery_sum(r)));
  return R;
}

double entanglement_fidelity_bell(const CodeSpace& code, const KrausChannel& ch, const std::vector<Mat>& recovery) {
  const int n = code.space.dim();
  // |Phi> = (|0_L>|0> + |1_L>|1>)/sqrt2, system index major.
  Vec phi = Vec::Zero(2 * n);
  for (int i = 0; i < n; ++i) {
    phi[2 * i] = code.zero[i] / std::sqrt(2.0);
    phi[2 * i + 1] = code.one[i] / std::sqrt(2.0);
  }
  auto act = [n](const Mat& O, const Vec& v) {
    Vec out(2 * n);
    for (int r = 0; r < 2; ++r) {
      Vec part(n);
      for (int i = 0; i < n; ++i) part[i] = v[2 * i + r];
      const Vec t = O * part;
      for (int i = 0; i < n; ++i) out[2 * i + r] = t[i];
    }
    return out;
  };
  double f = 0.0;
  for (const auto& E : ch.kraus) {
    const Vec e = act(Mat(E), phi);
    for (const auto& R : recovery) f += std::norm(phi.dot(act(R, e)));
  }
  return f;
}

double projection_fidelity(const CodeSpace& code, const KrausChannel& ch) {
  const Mat V = code.isometry();
  double f = 0.0;
  for (const auto& E : ch.kraus) f += std::norm(0.5 * (V.adjoint() * (E * V)).trace());
  return f;
}

std::vector<int> select_kraus(const CodeSpace& code, const KrausChannel& ch, double tol) {
  const Mat V = code.isometry();
  const int K = static_cast<int>(ch.kraus.size());
  std::vector<double> p(K);
  for (int k = 0; k < K; ++k) p[k] = 0.5 * (ch.kraus[k] * V).squaredNorm();
  std::vector<int> order(K);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return p[a] > p[b]; });
  std::vector<int> keep;
  double acc = 0.0;
  for (int k : order) {
    keep.push_back(k);
    acc += p[k];
    if (1.0 - acc < tol) break;
  }
  std::sort(keep.begin(), keep.end());
  return keep;
}

KrausChannel subset(const KrausChannel& ch, const std::vector<int>& idx) {
  KrausChannel out;
  for (int k : idx) {
    out.kraus.push_back(ch.kraus.at(k));
    out.labels.push_back(ch.labels.at(k));
  }
  out.completeness_defect = completeness_defect(out.kraus);
  return out;
}

CodeSpace figure5_code(const std::string& name, const Figure5Config& cfg) {
  if (name == "paircat3") {
    const double g = gamma_for_multimode_nbar(cfg.nbar_per_mode, 3);
    return multimode_code(3, cfg.cutoff, g, {0, 0}, 0, cfg.max_tail);
  }
  if (name == "paircat") return paircat_code(cfg.cutoff, gamma_for_nbar(2 * cfg.nbar_per_mode), 0, cfg.max_tail);
  if (name == "concat") return concat_code(cfg.cutoff, alpha_for_concat_nbar(cfg.nbar_per_mode), cfg.max_tail);
  if (name == "singlerail") return singlerail_code(cfg.cutoff);
  throw ConfigError("unknown fidelity code '" + name + "'");
}

std::vector<FidelityRow> figure5_sweep(const Figure5Config& cfg) {
  if (cfg.one_minus_eta.empty()) throw ConfigError("empty loss grid");
  const double worst = *std::max_element(cfg.one_minus_eta.begin(), cfg.one_minus_eta.end());
  struct Prepared {
    CodeSpace code;
    std::vector<int> keep;
    int total;
  };
  std::vector<Prepared> prep;
  for (const auto& name : cfg.codes) {
    CodeSpace c = figure5_code(name, cfg);
    const auto ch = uniform_loss(c.space, 1.0 - worst);
    prep.push_back({c, select_kraus(c, ch, cfg.kraus_tol), static_cast<int>(ch.kraus.size())});
  }
  std::vector<FidelityRow> rows;
  std::vector<std::pair<int, double>> pts;
  for (size_t c = 0; c < prep.size(); ++c)
    for (double le : cfg.one_minus_eta) {
      rows.push_back({cfg.codes[c], le, 0.0, 0.0, static_cast<int>(prep[c].keep.size()), prep[c].total});
      pts.emplace_back(static_cast<int>(c), le);
    }
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) {
    const auto& p = prep[pts[i].first];
    const double eta = 1.0 - pts[i].second;
    if (eta == 1.0) {
      rows[i].fidelity = 1.0;
      rows[i].truncation_defect = p.code.tail_mass;
      continue;
    }
    const KrausChannel full = uniform_loss(p.code.space, eta);
    const KrausChannel ch = subset(full, p.keep);
    double kept = 0.0;
    for (const auto& E : ch.kraus) kept += loss_probability(p.code, E);
    rows[i].fidelity = entanglement_fidelity(transpose_recovery(p.code, ch));
    rows[i].truncation_defect = p.code.tail_mass + std::max(0.0, 1.0 - kept);
  }
  return rows;
}

double singlerail_fidelity(double eta) {
  const double a = 1.0 / std::sqrt(2.0 - eta) + std::sqrt(eta);
  return 0.25 * (a * a + (1 - eta) * (1 - eta) / (2.0 - eta));
}

}  // namespace paircat
