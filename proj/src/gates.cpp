#include "paircat/gates.hpp"

#include <cmath>

#include "paircat/special.hpp"

namespace paircat {

namespace {

int total_photons(const FockSpace& s, int idx) {
  int n = 0;
  for (int m = 0; m < s.modes(); ++m) n += s.occupation(idx, m);
  return n;
}

int sector_shift(const CodeSpace& c) {
  if (c.kind != CodeKind::cat && c.kind != CodeKind::paircat)
    throw ConfigError("Kerr gates are defined for cat and pair-cat codes");
  return c.sector;
}

SpMat lowering_monomial(const CodeSpace& c) {
  if (c.kind == CodeKind::cat) return power(annihilation_op(c.space, 0), 2);
  if (c.kind == CodeKind::paircat) return SpMat(annihilation_op(c.space, 0) * annihilation_op(c.space, 1));
  throw ConfigError("X generators are defined for cat and pair-cat codes");
}

Mat pauli_x() {
  Mat X(2, 2);
  X << 0, 1, 1, 0;
  return X;
}

}  // namespace

ProjectedGate kerr_z_rotation(const CodeSpace& code) {
  const int s = sector_shift(code);
  const FockSpace& sp = code.space;
  ProjectedGate g;
  g.full = diagonal_op(sp, [s](const std::vector<int>& o) {
    int n = -s;
    for (int x : o) n += x;
    return std::polar(1.0, kPi / 8.0 * double(n) * n);
  });
  const Mat V = code.isometry();
  const Mat UV = g.full * V;
  g.projected = V.adjoint() * UV;
  g.leakage = (UV - V * g.projected).norm();
  return g;
}

ProjectedGate kerr_cz(const CodeSpace& c1, const CodeSpace& c2, long long budget) {
  const int s1 = sector_shift(c1), s2 = sector_shift(c2);
  const int d1 = c1.space.dim(), d2 = c2.space.dim();
  if (static_cast<long long>(d1) * d2 > budget) throw TruncationError("combined dimension exceeds the CZ budget");
  const Mat V1 = c1.isometry(), V2 = c2.isometry();
  std::vector<double> f1(d1), f2(d2);
  for (int i = 0; i < d1; ++i) f1[i] = total_photons(c1.space, i) - s1;
  for (int i = 0; i < d2; ++i) f2[i] = total_photons(c2.space, i) - s2;
  ProjectedGate g;
  g.projected = Mat::Zero(4, 4);
  for (int i1 = 0; i1 < d1; ++i1) {
    if (V1.row(i1).squaredNorm() == 0) continue;
    for (int i2 = 0; i2 < d2; ++i2) {
      if (V2.row(i2).squaredNorm() == 0) continue;
      const cplx u = std::polar(1.0, kPi / 4.0 * f1[i1] * f2[i2]);
      for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
          g.projected(a, b) += std::conj(V1(i1, a / 2) * V2(i2, a % 2)) * u * V1(i1, b / 2) * V2(i2, b % 2);
    }
  }
  double leak = 0.0;
  for (int i1 = 0; i1 < d1; ++i1) {
    if (V1.row(i1).squaredNorm() == 0) continue;
    for (int i2 = 0; i2 < d2; ++i2) {
      if (V2.row(i2).squaredNorm() == 0) continue;
      const cplx u = std::polar(1.0, kPi / 4.0 * f1[i1] * f2[i2]);
      for (int b = 0; b < 4; ++b) {
        cplx r = u * V1(i1, b / 2) * V2(i2, b % 2);
        for (int a = 0; a < 4; ++a) r -= V1(i1, a / 2) * V2(i2, a % 2) * g.projected(a, b);
        leak += std::norm(r);
      }
    }
  }
  g.leakage = std::sqrt(leak);
  return g;
}

SpMat rwa_displacement(const FockSpace& s, int mode, cplx beta) {
  const double x = std::norm(beta);
  const auto L = special::laguerre_table(s.cutoff(mode), x);
  const double pre = std::exp(-0.5 * x);
  return diagonal_op(s, [&](const std::vector<int>& o) { return cplx(pre * L[o[mode]]); });
}

JunctionResult junction_z(const CodeSpace& code, cplx beta_a, cplx beta_b) {
  SpMat D;
  if (code.kind == CodeKind::cat)
    D = rwa_displacement(code.space, 0, beta_a);
  else if (code.kind == CodeKind::paircat)
    D = SpMat(rwa_displacement(code.space, 0, beta_a) * rwa_displacement(code.space, 1, beta_b));
  else
    throw ConfigError("junction gate is defined for cat and pair-cat codes");
  const Mat V = code.isometry();
  const Mat m = V.adjoint() * (D * V);
  return {m(0, 0) + m(1, 1), m(0, 0) - m(1, 1), std::abs(m(0, 1)) + std::abs(m(1, 0))};
}

Eigen::Matrix2cd holonomic_z(int sector, double phi) {
  Eigen::Matrix2cd U = Eigen::Matrix2cd::Zero();
  U(0, 0) = 1.0;
  U(1, 1) = std::polar(1.0, -2.0 * phi);
  return std::polar(1.0, -phi * sector) * U;
}

double holonomic_limit_phase(double gamma, int delta, int mu, double phi, int cutoff) {
  const FockSpace s = FockSpace::uniform(2, cutoff);
  const Ket k = pair_cat_state(s, std::polar(gamma, phi), delta, mu);
  const int D = std::abs(delta);
  const std::vector<int> occ = delta >= 0 ? std::vector<int>{mu, mu + D} : std::vector<int>{mu + D, mu};
  return std::arg(k.amp[s.index(occ)]);
}

GeneratorResult x_generator(const CodeSpace& code, double g) {
  const SpMat m = lowering_monomial(code);
  const SpMat H = g * SpMat(m + adjoint(m));
  const Mat V = code.isometry();
  GeneratorResult r;
  r.projected = V.adjoint() * (H * V);
  r.target = 2.0 * g * std::pow(code.param, 2) * pauli_x();
  r.deviation = (r.projected - r.target).norm();
  return r;
}

GeneratorResult xx_generator(const CodeSpace& c1, const CodeSpace& c2, double g) {
  // P = P1 x P2, so P(m1 m2)P = (P1 m1 P1)(P2 m2 P2).
  const Mat V1 = c1.isometry(), V2 = c2.isometry();
  const Mat M1 = V1.adjoint() * (lowering_monomial(c1) * V1);
  const Mat M2 = V2.adjoint() * (lowering_monomial(c2) * V2);
  Mat K(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) K(a, b) = M1(a / 2, b / 2) * M2(a % 2, b % 2);
  GeneratorResult r;
  r.projected = g * (K + K.adjoint());
  Mat XX(4, 4);
  const Mat X = pauli_x();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) XX(a, b) = X(a / 2, b / 2) * X(a % 2, b % 2);
  r.target = 2.0 * g * std::pow(c1.param, 2) * std::pow(c2.param, 2) * XX;
  r.deviation = (r.projected - r.target).norm();
  return r;
}

}  // namespace paircat
