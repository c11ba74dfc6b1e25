#include <gtest/gtest.h>

#include <boost/math/special_functions/laguerre.hpp>
#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "paircat/gates.hpp"

using namespace paircat;

namespace {
const cplx I(0.0, 1.0);

// Removes the global phase by fixing the first diagonal entry to 1.
Mat dephase(const Mat& m) { return m / (m(0, 0) / std::abs(m(0, 0))); }

// Diagonal Fock phases applied to the code states directly.
Eigen::Matrix2cd kerr_oracle(const CodeSpace& c, int shift) {
  const Mat V = c.isometry();
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int i = 0; i < c.space.dim(); ++i) {
    int n = 0;
    for (int m = 0; m < c.space.modes(); ++m) n += c.space.occupation(i, m);
    const cplx u = std::polar(1.0, kPi / 8 * (n - shift) * (n - shift));
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) out(a, b) += std::conj(V(i, a)) * u * V(i, b);
  }
  return out;
}
}  // namespace

TEST(KerrZ, ExamplesAreDiagOneI) {
  Eigen::Matrix2cd want;
  want << 1, 0, 0, I;
  for (const CodeSpace& c : {cat_code(40, 2.0, 0), cat_code(40, 2.0, 1), paircat_code(30, 2.0, 0),
                             paircat_code(30, 2.0, 1), paircat_code(30, 2.0, -2)}) {
    const ProjectedGate g = kerr_z_rotation(c);
    EXPECT_LT((dephase(g.projected) - want).norm(), 1e-12);
    EXPECT_LT(g.leakage, 1e-12);
  }
}

TEST(KerrZ, OddNegativeDeltaSwapsDiagonal) {
  const CodeSpace c = paircat_code(30, 2.0, -1);
  const ProjectedGate g = kerr_z_rotation(c);
  Eigen::Matrix2cd want;
  want << 1, 0, 0, -I;
  EXPECT_LT((dephase(g.projected) - want).norm(), 1e-12);
  EXPECT_LT((g.projected - kerr_oracle(c, -1)).norm(), 1e-12);
}

TEST(KerrZProperty, MatchesOracleUnitaryAndParameterFree) {
  for (double p : {0.8, 1.5, 2.5})
    for (const CodeSpace& c : {cat_code(50, p, 1), paircat_code(36, p, 2), paircat_code(36, p, -3)}) {
      const ProjectedGate g = kerr_z_rotation(c);
      EXPECT_LT((g.projected - kerr_oracle(c, c.sector)).norm(), 1e-12);
      EXPECT_LT((g.projected.adjoint() * g.projected - Mat::Identity(2, 2)).norm(), 1e-12);
      // the logical action does not depend on the amplitude
      EXPECT_LT((dephase(g.projected) - dephase(kerr_oracle(c, c.sector))).norm(), 1e-12);
      const double rel = std::arg(g.projected(1, 1) / g.projected(0, 0));
      EXPECT_NEAR(std::abs(rel), kPi / 2, 1e-12) << p;
    }
}

TEST(KerrCZ, ExampleIsDiagOneOneOneMinusOne) {
  const CodeSpace c1 = cat_code(24, 1.5, 0), c2 = paircat_code(14, 1.2, 0, 1e-6);
  const ProjectedGate g = kerr_cz(c1, c2);
  Mat want = Mat::Identity(4, 4);
  want(3, 3) = -1.0;
  EXPECT_LT((dephase(g.projected) - want).norm(), 1e-12);
  EXPECT_LT(g.leakage, 1e-6);
  EXPECT_THROW(kerr_cz(c1, c2, 100), TruncationError);
}

TEST(RWADisplacement, DiagonalOfFullDisplacement) {
  // Independent route: dense matrix exponential of beta a^dag - beta* a on a larger space.
  const int big = 70;
  const FockSpace s = FockSpace::uniform(1, big);
  const cplx beta(0.8, 0.6);
  const Mat a = Mat(annihilation_op(s, 0));
  const Mat G = beta * a.adjoint() - std::conj(beta) * a;
  const Mat D = G.exp();
  const FockSpace small = FockSpace::uniform(1, 20);
  const Mat R = Mat(rwa_displacement(small, 0, beta));
  for (int n = 0; n <= 20; ++n) {
    EXPECT_NEAR(std::abs(R(n, n) - D(n, n)), 0.0, 1e-12) << n;
    EXPECT_NEAR(R(n, n).real(), std::exp(-0.5) * boost::math::laguerre(n, 1.0), 1e-14);
  }
  EXPECT_LT((Mat(rwa_displacement(small, 0, 0.0)) - Mat::Identity(21, 21)).norm(), 1e-15);
}

TEST(Junction, IdentityAtZeroDisplacement) {
  for (const CodeSpace& c : {cat_code(40, 2.0, 0), paircat_code(30, 2.0, 1)}) {
    const JunctionResult j = junction_z(c, 0.0, 0.0);
    EXPECT_NEAR(std::abs(j.c_plus - 2.0), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(j.c_minus), 0.0, 1e-12);
    EXPECT_EQ(j.off_diagonal, 0.0);
  }
  EXPECT_THROW(junction_z(concat_code(6, 1.0, 1.0), 0.5), ConfigError);
}

TEST(Junction, CatValuesDependOnParity) {
  // Oracle: Fock-weight sums with an independent Laguerre implementation.
  const double alpha = 2.0, beta = 1.0;
  for (int P = 0; P < 2; ++P) {
    double m[2] = {0, 0};
    for (int mu = 0; mu < 2; ++mu) {
      double norm = 0.0;
      for (int n = 2 * mu + P; n < 80; n += 4) {
        const double w = std::exp(-alpha * alpha + 2 * n * std::log(alpha) - std::lgamma(n + 1.0));
        norm += w;
        m[mu] += w * std::exp(-0.5 * beta * beta) * boost::math::laguerre(n, beta * beta);
      }
      m[mu] /= norm;
    }
    const JunctionResult j = junction_z(cat_code(60, alpha, P), beta);
    EXPECT_NEAR(j.c_minus.real(), m[0] - m[1], 1e-10);
    EXPECT_NEAR(j.c_plus.real(), m[0] + m[1], 1e-10);
    EXPECT_LT(j.off_diagonal, 1e-14);
  }
  // frozen
  EXPECT_NEAR(junction_z(cat_code(60, 2.0, 0), 1.0).c_minus.real(), -0.014071, 1e-6);
  EXPECT_NEAR(junction_z(cat_code(60, 2.0, 1), 1.0).c_minus.real(), 0.139464, 1e-6);
}

TEST(Junction, PairCatIsDiagonal) {
  for (int d : {0, 1}) {
    const JunctionResult j = junction_z(paircat_code(30, 2.0, d), 0.7, 0.4);
    EXPECT_LT(j.off_diagonal, 1e-14);
    EXPECT_LT(std::abs(j.c_minus.imag()), 1e-14);
    EXPECT_GT(std::abs(j.c_minus), 1e-4);
  }
}

TEST(Holonomic, SmallGammaLimit) {
  for (int d : {0, 1, 2, -1})
    for (int mu = 0; mu < 2; ++mu) {
      const double phi = 0.3;
      const int D = std::abs(d);
      EXPECT_NEAR(holonomic_limit_phase(0.05, d, mu, phi), (2 * mu + D) * phi, 1e-9) << d << mu;
      EXPECT_NEAR(std::arg(holonomic_z(D, phi)(mu, mu)), -(2 * mu + D) * phi, 1e-14);
    }
  const Eigen::Matrix2cd U = holonomic_z(1, 0.7);
  EXPECT_LT((U.adjoint() * U - Eigen::Matrix2cd::Identity()).norm(), 1e-15);
  EXPECT_EQ(std::abs(U(0, 1)), 0.0);
}

TEST(Generators, SingleAndTwoQubitX) {
  const GeneratorResult pc = x_generator(paircat_code(30, 2.0, 0), 0.5);
  EXPECT_LT(pc.deviation / pc.target.norm(), 1e-6);
  EXPECT_NEAR(pc.target(0, 1).real(), 2 * 0.5 * 4.0, 1e-14);

  // relative error shrinks with gamma
  double prev = 1.0;
  for (double g : {1.5, 2.0, 2.5}) {
    const GeneratorResult r = x_generator(paircat_code(40, g, 0), 1.0);
    const double rel = r.deviation / r.target.norm();
    EXPECT_LT(rel, prev);
    prev = rel;
  }
  const GeneratorResult cat = x_generator(cat_code(50, 2.0, 0), 1.0);
  EXPECT_LT(cat.deviation / cat.target.norm(), 0.05);
  EXPECT_LT(std::abs(cat.projected(0, 0)) + std::abs(cat.projected(1, 1)), 1e-12);

  const GeneratorResult xx = xx_generator(cat_code(50, 2.0, 0), cat_code(50, 1.8, 0), 1.0);
  EXPECT_LT(xx.deviation / xx.target.norm(), 1e-2);
  EXPECT_LT((xx.projected - xx.projected.adjoint()).norm(), 1e-12);
  const GeneratorResult pp = xx_generator(paircat_code(30, 2.0, 0), paircat_code(30, 2.0, 1), 0.1);
  EXPECT_LT(pp.deviation / pp.target.norm(), 1e-5);
}
