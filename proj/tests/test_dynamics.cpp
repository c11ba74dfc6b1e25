#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <omp.h>

#include "paircat/dynamics.hpp"

using namespace paircat;

namespace {
Mat random_density(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> N;
  Mat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) A(i, j) = cplx(N(rng), N(rng));
  Mat r = A * A.adjoint();
  return r / r.trace().real();
}

LindbladGenerator pair_generator(const FockSpace& s, double gamma, double kn) {
  LindbladGenerator g;
  g.dim = s.dim();
  g.add_jump(1.0, jump_operator_ii(s, gamma));
  if (kn > 0) g.add_jump(kn, number_op(s, 0));
  return g;
}

double min_eig(const Mat& r) {
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (r + r.adjoint()));
  return es.eigenvalues().minCoeff();
}
}  // namespace

TEST(Lindblad, SingleJumpExample) {
  const FockSpace s = FockSpace::uniform(1, 3);
  LindbladGenerator g;
  g.dim = s.dim();
  g.add_jump(0.7, annihilation_op(s, 0));
  Mat r = Mat::Zero(4, 4);
  r(1, 1) = 1.0;
  Mat want = Mat::Zero(4, 4);
  want(0, 0) = 0.7;
  want(1, 1) = -0.7;
  EXPECT_LT((lindblad_rhs(g, r) - want).norm(), 1e-15);
}

TEST(Lindblad, CodeSpaceIsSteady) {
  const CodeSpace c = paircat_code(24, 2.0, 0);
  const LindbladGenerator g = pair_generator(c.space, 2.0, 0.0);
  const Vec* kets[2] = {&c.zero, &c.one};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) EXPECT_LT(lindblad_rhs(g, outer(*kets[i], *kets[j])).norm(), 1e-7) << i << j;
}

TEST(LindbladProperty, TracelessAndRoutesAgree) {
  const FockSpace s = FockSpace::uniform(2, 4);
  LindbladGenerator g = pair_generator(s, 1.1, 0.3);
  g.set_hamiltonian(SpMat(number_op(s, 0) * number_op(s, 1)));
  g.add_jump(0.2, annihilation_op(s, 1));
  const SpMat S = superoperator(g);
  for (unsigned seed = 0; seed < 4; ++seed) {
    const Mat r = random_density(s.dim(), seed);
    const Mat par = lindblad_rhs(g, r), ser = lindblad_rhs_serial(g, r);
    EXPECT_NEAR(std::abs(par.trace()), 0.0, 1e-12);
    EXPECT_LT((par - ser).norm(), 1e-12);
    EXPECT_LT((unvectorize(S * vectorize(r), s.dim()) - ser).norm(), 1e-12);
  }
  EXPECT_LT(lindblad_adjoint_rhs(g, Mat::Identity(s.dim(), s.dim())).norm(), 1e-12);
  // Adjoint duality: Tr(O L(r)) = Tr(L^dag(O) r)
  const Mat O = random_density(s.dim(), 9), r = random_density(s.dim(), 8);
  EXPECT_NEAR(std::abs((O * lindblad_rhs(g, r)).trace() - (lindblad_adjoint_rhs(g, O) * r).trace()), 0.0, 1e-12);

  const Mat r0 = random_density(s.dim(), 5);
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const Mat one = lindblad_rhs(g, r0);
  omp_set_num_threads(3);
  const Mat three = lindblad_rhs(g, r0);
  omp_set_num_threads(saved);
  EXPECT_EQ((one - three).norm(), 0.0);
}

TEST(Evolve, TrivialAndLoss) {
  const FockSpace s = FockSpace::uniform(1, 3);
  LindbladGenerator zero;
  zero.dim = s.dim();
  const Mat r = random_density(4, 4);
  EXPECT_LT((evolve_to(zero, r, 3.0) - r).norm(), 1e-14);

  LindbladGenerator g;
  g.dim = s.dim();
  g.add_jump(1.0, annihilation_op(s, 0));
  Mat one = Mat::Zero(4, 4);
  one(1, 1) = 1.0;
  EvolveOptions ex;
  ex.method = EvolveOptions::Method::expm;
  const auto rk = evolve(g, one, 0.5, 4), em = evolve(g, one, 0.5, 4, ex);
  for (int k = 0; k <= 4; ++k) {
    EXPECT_NEAR(rk[k](1, 1).real(), std::exp(-0.5 * k), 1e-7);
    EXPECT_NEAR(em[k](1, 1).real(), std::exp(-0.5 * k), 1e-12);
  }
}

TEST(Evolve, ReachableExpmMatchesIntegrator) {
  const CodeSpace c = paircat_code(6, 0.8, 0, 1e-2);
  const FockSpace& s = c.space;
  LindbladGenerator g = pair_generator(s, 1.0, 0.05);
  g.add_jump(0.1, annihilation_op(s, 0));
  const Mat r0 = outer(c.zero + c.one, c.zero + c.one) / 2.0;
  int used = 0;
  const auto fast = evolve_expm_reachable(g, r0, 0.25, 8, 2401, &used);
  EvolveOptions tight;
  tight.rtol = 1e-10;
  tight.atol = 1e-12;
  const auto ref = evolve(g, r0, 0.25, 8, tight);
  EXPECT_GT(used, 0);
  EXPECT_LT(used, s.dim() * s.dim());
  for (int k = 0; k <= 8; ++k) EXPECT_LT((fast[k] - ref[k]).norm(), 1e-8) << k;
  EXPECT_THROW(evolve_expm_reachable(g, r0, 0.25, 2, 10), TruncationError);
}

TEST(EvolveProperty, SectorPopulationsConservedAndPositive) {
  const double gamma = 0.7;
  const FockSpace s = FockSpace::uniform(2, 5);
  const LindbladGenerator g = pair_generator(s, gamma, 0.02);
  const Ket a = coherent(FockSpace::uniform(1, 5), gamma, 0, 1e-2);
  Vec psi(s.dim());
  for (int i = 0; i <= 5; ++i)
    for (int j = 0; j <= 5; ++j) psi[6 * i + j] = a.amp[i] * a.amp[j];
  psi.normalize();
  const Mat r0 = outer(psi, psi);
  const auto traj = evolve(g, r0, 0.5, 6);
  std::vector<double> pop0;
  for (int d = -2; d <= 2; ++d) pop0.push_back((difference_projector(s, d).op * r0).trace().real());
  for (const auto& r : traj) {
    EXPECT_GT(min_eig(r), -1e-8);
    for (int d = -2; d <= 2; ++d)
      EXPECT_NEAR((difference_projector(s, d).op * r).trace().real(), pop0[d + 2], 1e-9);
  }
}

TEST(EvolveProperty, PumpedStateRelaxesToCodeManifold) {
  const double gamma = 0.7;
  const FockSpace s = FockSpace::uniform(2, 6);
  const LindbladGenerator g = pair_generator(s, gamma, 0.0);
  const Vec psi = (fock_ket(s, std::vector<int>{2, 2}) + fock_ket(s, std::vector<int>{3, 3})).normalized();
  const Mat rinf = evolve_expm_reachable(g, outer(psi, psi), 60.0, 1).back();
  const CodeSpace c = paircat_code(6, gamma, 0, 1.0);
  EXPECT_NEAR((c.projector() * rinf).trace().real(), 1.0, 1e-8);
  EXPECT_LT(lindblad_rhs(g, rinf).norm(), 1e-7);
}

TEST(DephasingRate, SmallGammaLimitAndSuppression) {
  EXPECT_NEAR(dephasing_rate_spectrum(0.05, 0, 1.0, 0.01).scaled_rate, 1.0, 1e-3);
  double prev = 1e9;
  std::vector<double> x, y;
  for (int i = 0; i <= 8; ++i) {
    const double g = 0.5 + 0.25 * i;
    const RateResult r = dephasing_rate_spectrum(g, 0, 1.0, 0.01);
    EXPECT_GT(r.overlap, 0.5);
    EXPECT_LT(r.scaled_rate, prev) << g;
    prev = r.scaled_rate;
    if (g >= 1.5) {
      x.push_back(g * g);
      y.push_back(std::log(r.scaled_rate));
    }
  }
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) mx += x[i] / x.size(), my += y[i] / x.size();
  double sxy = 0, sxx = 0;
  for (size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my), sxx += (x[i] - mx) * (x[i] - mx);
  EXPECT_LT(sxy / sxx, -1.0);
  // frozen regression value
  EXPECT_NEAR(dephasing_rate_spectrum(1.5, 0, 1.0, 0.01).scaled_rate, 0.25094990995268218, 1e-9);
}

TEST(DephasingRate, CoherenceBlockAgreesWithFullSuperoperator) {
  // Independent route: dense spectrum of the full Lindbladian on a small space.
  const double gamma = 0.7, kn = 0.3;
  const int cut = 4;
  const FockSpace s = FockSpace::uniform(2, cut);
  const LindbladGenerator g = pair_generator(s, gamma, kn);
  const Mat S = Mat(superoperator(g));
  Eigen::ComplexEigenSolver<Mat> es(S);
  const CodeSpace c = paircat_code(cut, gamma, 0, 1.0);
  const Vec target = vectorize(outer(c.zero, c.one));
  double best = -1, rate = 0;
  for (int i = 0; i < es.eigenvalues().size(); ++i) {
    const cplx lam = es.eigenvalues()[i];
    if (std::abs(lam) < 1e-10) continue;
    const double ov = std::abs(es.eigenvectors().col(i).normalized().dot(target));
    if (ov > best) best = ov, rate = -lam.real();
  }
  const RateResult r = dephasing_rate_spectrum(gamma, 0, 1.0, kn, cut);
  EXPECT_NEAR(r.scaled_rate, rate / (kn / 2), 1e-8);
}

TEST(Zeno, ProjectedGenerators) {
  const CodeSpace pc = paircat_code(30, 2.0, 0);
  const SpMat ab = annihilation_op(pc.space, 0) * annihilation_op(pc.space, 1);
  const double g = 0.3;
  const Eigen::Matrix2cd h = zeno_projected_hamiltonian(pc, SpMat(g * (ab + adjoint(ab))));
  Eigen::Matrix2cd X;
  X << 0, 1, 1, 0;
  EXPECT_LT((h - 2 * g * 4.0 * X).norm(), std::exp(-8.0) * 50);

  const SpMat nn = number_op(pc.space, 0) + number_op(pc.space, 1);
  const Eigen::Matrix2cd k = zeno_projected_hamiltonian(pc, SpMat(nn * nn));
  EXPECT_LT(std::abs(k(0, 1)) + std::abs(k(1, 0)), 1e-12);

  const CodeSpace cat = cat_code(40, 2.0, 0);
  const SpMat a2 = power(annihilation_op(cat.space, 0), 2);
  const Eigen::Matrix2cd hc = zeno_projected_hamiltonian(cat, SpMat(g * (a2 + adjoint(a2))));
  EXPECT_NEAR(hc(0, 1).real(), 2 * g * 4.0, 2 * g * 4.0 * 1e-2);
  EXPECT_LT(std::abs(hc(0, 0)) + std::abs(hc(1, 1)), 1e-12);
}

TEST(RecoveryJumps, CatLossOneRestoresLogicalState) {
  const int cut = 40;
  const CodeSpace c0 = cat_code(cut, 2.0, 0);
  const SpMat F = cat_loss1_jump(2.0, cut);
  const SpMat a = annihilation_op(c0.space, 0);
  // a weights the two logical states by their norms after one loss
  const double n0 = (a * c0.zero).norm(), n1 = (a * c0.one).norm();
  for (auto [u, v] : {std::pair<cplx, cplx>{1, 0}, {0, 1}, {1, 1}, {1, cplx(0, 1)}}) {
    const Vec psi = (u * c0.zero + v * c0.one).normalized();
    const Vec out = F * (a * psi);
    const cplx pu = u / std::sqrt(std::norm(u) + std::norm(v)), pv = v / std::sqrt(std::norm(u) + std::norm(v));
    const double want = std::pow(std::norm(pu) * n0 + std::norm(pv) * n1, 2) /
                        (std::norm(pu) * n0 * n0 + std::norm(pv) * n1 * n1);
    EXPECT_NEAR(std::norm(psi.dot(out.normalized())), want, 1e-12);
    EXPECT_GT(want, 0.999);
  }
}

TEST(RecoveryJumps, PairLossTwoCaseTable) {
  const int cut = 24;
  const CodeSpace c0 = paircat_code(cut, 2.0, 0), cm = paircat_code(cut, 2.0, -1), cp = paircat_code(cut, 2.0, 2);
  const Mat Fm = Mat(paircat_loss2_jump(2.0, -1, cut)), Fp = Mat(paircat_loss2_jump(2.0, 2, cut));
  // Delta = -1: bit-flip pairing
  EXPECT_NEAR(std::abs(c0.zero.dot(Fm * cm.one)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c0.one.dot(Fm * cm.zero)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c0.zero.dot(Fp * cp.zero)), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(c0.one.dot(Fp * cp.one)), 1.0, 1e-12);
  EXPECT_THROW(paircat_loss2_jump(2.0, 0, cut), ConfigError);
}

TEST(RecoveryJumps, AutonomousJumpReturnsToDeltaZero) {
  const CodeSpace c = paircat_code(24, 2.0, 0);
  const SpMat F = autonomous_jump(c.space, 1), G = autonomous_jump(c.space, -1);
  const Vec la = annihilation_op(c.space, 0) * c.zero, lb = annihilation_op(c.space, 1) * c.one;
  const Vec ra = F * la, rb = G * lb;
  const SpMat P0 = difference_projector(c.space, 0).op;
  EXPECT_LT((P0 * ra - ra).norm(), 1e-14);
  EXPECT_LT((P0 * rb - rb).norm(), 1e-14);
  EXPECT_GT(ra.norm(), 0.0);
  EXPECT_THROW(autonomous_jump(c.space, 2), ConfigError);
}
