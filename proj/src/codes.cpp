#include "paircat/codes.hpp"

#include <cmath>
#include <limits>

#include <boost/math/tools/roots.hpp>

#include "paircat/special.hpp"

namespace paircat {

std::string to_string(CodeKind k) {
  switch (k) {
    case CodeKind::cat: return "cat";
    case CodeKind::paircat: return "paircat";
    case CodeKind::multimode: return "multimode";
    case CodeKind::concat: return "concat";
    case CodeKind::singlerail: return "singlerail";
  }
  return "?";
}

CodeKind code_kind_from_string(const std::string& s) {
  if (s == "cat") return CodeKind::cat;
  if (s == "paircat") return CodeKind::paircat;
  if (s == "multimode") return CodeKind::multimode;
  if (s == "concat") return CodeKind::concat;
  if (s == "singlerail") return CodeKind::singlerail;
  throw ConfigError("unknown code kind '" + s + "'");
}

Mat CodeSpace::isometry() const {
  Mat V(space.dim(), 2);
  V.col(0) = zero;
  V.col(1) = one;
  return V;
}

Mat CodeSpace::projector() const { return zero * zero.adjoint() + one * one.adjoint(); }
Mat CodeSpace::logical_x() const { return zero * one.adjoint() + one * zero.adjoint(); }
Mat CodeSpace::logical_y() const { return one * zero.adjoint() - zero * one.adjoint(); }
Mat CodeSpace::logical_z() const { return zero * zero.adjoint() - one * one.adjoint(); }

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

// Cat code normalization indexed by Fock residue r = 2 mu + Pi (mod 4).
double cat_res(double a, int r) {
  r = mod(r, 4);
  return norms::cat_code(a, r % 2, r / 2);
}

// Pair-cat code states are labelled here by the parity p of the first mode.
// Under the SWAP convention a Delta < 0 code state mu has p = mu + |Delta|.
int a_parity(int mu, int delta) { return mod(delta < 0 ? mu - delta : mu, 2); }

void finish(CodeSpace& c, const Ket& k0, const Ket& k1) {
  c.space = k0.space;
  c.zero = k0.amp.normalized();
  c.one = k1.amp.normalized();
  // Supports are disjoint; this removes round-off only.
  c.one -= c.zero * c.zero.dot(c.one);
  c.one.normalize();
  c.tail_mass = std::max(k0.tail_mass, k1.tail_mass);
}

template <class F>
double bisect_increasing(F f, double target, double lo, double hi) {
  if (f(lo) > target || f(hi) < target) throw ConfigError("photon-number target outside the invertible range");
  auto g = [&](double x) { return f(x) - target; };
  boost::math::tools::eps_tolerance<double> tol(50);
  auto r = boost::math::tools::bisect(g, lo, hi, tol);
  return 0.5 * (r.first + r.second);
}

}  // namespace

CodeSpace cat_code(int cutoff, cplx alpha, int parity, double max_tail) {
  const FockSpace s = FockSpace::uniform(1, cutoff);
  CodeSpace c;
  c.kind = CodeKind::cat;
  c.param = alpha;
  c.sector = mod(parity, 2);
  finish(c, cat_code_state(s, alpha, parity, 0, 0, max_tail), cat_code_state(s, alpha, parity, 1, 0, max_tail));
  return c;
}

CodeSpace paircat_code(int cutoff, cplx gamma, int delta, double max_tail) {
  const FockSpace s = FockSpace::uniform(2, cutoff);
  CodeSpace c;
  c.kind = CodeKind::paircat;
  c.param = gamma;
  c.sector = delta;
  finish(c, pair_cat_state(s, gamma, delta, 0, max_tail), pair_cat_state(s, gamma, delta, 1, max_tail));
  return c;
}

CodeSpace multimode_code(int modes, int cutoff, cplx gamma, const std::vector<int>& dvec, int spacing,
                         double max_tail) {
  const FockSpace s = FockSpace::uniform(modes, cutoff);
  CodeSpace c;
  c.kind = CodeKind::multimode;
  c.param = gamma;
  c.dvec = dvec;
  c.spacing = spacing;
  finish(c, multimode_code_state(s, gamma, dvec, 2, spacing, 0, max_tail),
         multimode_code_state(s, gamma, dvec, 2, spacing, 1, max_tail));
  return c;
}

CodeSpace concat_code(int cutoff, cplx alpha, double max_tail) {
  const FockSpace s = FockSpace::uniform(1, cutoff);
  const Ket c0 = cat_state(s, alpha, 0, 0, max_tail);
  const Ket c1 = cat_state(s, alpha, 1, 0, max_tail);
  CodeSpace c;
  c.kind = CodeKind::concat;
  c.param = alpha;
  finish(c, product({c0, c0, c0}), product({c1, c1, c1}));
  return c;
}

CodeSpace singlerail_code(int cutoff) {
  const FockSpace s = FockSpace::uniform(1, cutoff);
  CodeSpace c;
  c.kind = CodeKind::singlerail;
  const std::vector<int> o0{0}, o1{1};
  finish(c, Ket{s, fock_ket(s, o0), 0.0}, Ket{s, fock_ket(s, o1), 0.0});
  return c;
}

CodeSpace build_code(const CodeParams& p, double max_tail) {
  switch (p.kind) {
    case CodeKind::cat: return cat_code(p.cutoff, p.param, p.sector, max_tail);
    case CodeKind::paircat: return paircat_code(p.cutoff, p.param, p.sector, max_tail);
    case CodeKind::multimode: {
      std::vector<int> d = p.dvec;
      if (d.empty()) d.assign(p.modes - 1, 0);
      return multimode_code(p.modes, p.cutoff, p.param, d, p.spacing, max_tail);
    }
    case CodeKind::concat: return concat_code(p.cutoff, p.param, max_tail);
    case CodeKind::singlerail: return singlerail_code(p.cutoff);
  }
  throw ConfigError("unknown code kind");
}

KLCoeffs kl_decompose(const CodeSpace& code, const SpMat& E, const SpMat& Ep) {
  if (E.rows() != code.space.dim() || Ep.rows() != code.space.dim())
    throw ConfigError("kl_decompose: operator dimension does not match the code space");
  const Mat V = code.isometry();
  const Mat A = E * V;
  const Mat B = Ep * V;
  const Eigen::Matrix2cd m = A.adjoint() * B;
  KLCoeffs k;
  k.c = 0.5 * (m(0, 0) + m(1, 1));
  k.z = 0.5 * (m(0, 0) - m(1, 1));
  k.x = 0.5 * (m(0, 1) + m(1, 0));
  k.y = 0.5 * (m(1, 0) - m(0, 1));
  Eigen::Matrix2cd r;
  r << k.c + k.z, k.x - k.y, k.x + k.y, k.c - k.z;
  k.residual = (m - r).norm();
  return k;
}

KLCoeffs kl_decompose_dense(const CodeSpace& code, const SpMat& E, const SpMat& Ep) {
  if (E.rows() != code.space.dim() || Ep.rows() != code.space.dim())
    throw ConfigError("kl_decompose: operator dimension does not match the code space");
  const Mat P = code.projector(), X = code.logical_x(), Y = code.logical_y(), Z = code.logical_z();
  const Mat EE = Mat(adjoint(E) * Ep);
  const Mat M = P * EE * P;
  KLCoeffs k;
  k.c = 0.5 * (P * M).trace();
  k.x = 0.5 * (X * M).trace();
  k.y = 0.5 * (Y.adjoint() * M).trace();
  k.z = 0.5 * (Z * M).trace();
  k.residual = (M - (k.c * P + k.x * X + k.y * Y + k.z * Z)).norm();
  return k;
}

KLReport kl_report(const CodeSpace& code, const std::vector<NamedOp>& errors, double tol) {
  KLReport rep;
  rep.tol = tol;
  for (size_t i = 0; i < errors.size(); ++i)
    for (size_t j = i; j < errors.size(); ++j) {
      KLEntry e;
      e.left = errors[i].label;
      e.right = errors[j].label;
      e.coeffs = kl_decompose(code, errors[i].op, errors[j].op);
      const double off = std::max({std::abs(e.coeffs.x), std::abs(e.coeffs.y), std::abs(e.coeffs.z)});
      e.exact = off < tol;
      const double c = std::abs(e.coeffs.c);
      e.ratio = c > 0 ? off / c : (off > 0 ? std::numeric_limits<double>::infinity() : 0.0);
      rep.entries.push_back(std::move(e));
    }
  return rep;
}

std::vector<NamedOp> loss_monomials(const FockSpace& s, int kmax) {
  std::vector<NamedOp> out{{"1", identity_op(s)}};
  const char* names = "abcdefgh";
  for (int m = 0; m < s.modes() && m < 8; ++m) {
    const SpMat a = annihilation_op(s, m);
    for (int k = 1; k <= kmax; ++k) out.push_back({std::string(1, names[m]) + "^" + std::to_string(k), power(a, k)});
  }
  return out;
}

double nbar_cat(double alpha, int parity) {
  const int P = mod(parity, 2);
  double n = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    const int r = 2 * mu + P;
    n += alpha * alpha * cat_res(alpha, r - 1) / cat_res(alpha, r);
  }
  return 0.5 * n;
}

double nbar_paircat(double gamma, int delta) {
  double n = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    const int p = a_parity(mu, delta);
    const double N = norms::paircat(gamma, delta, p);
    n += gamma * gamma * (norms::paircat(gamma, delta + 1, p + 1) + norms::paircat(gamma, delta - 1, p)) / N;
  }
  return 0.5 * n;
}

double nbar_multimode_per_mode(double gamma, int modes, int spacing) {
  const double lg = std::log(gamma);
  double total = 0.0;
  for (int mu = 0; mu < 2; ++mu) {
    double lmax = -std::numeric_limits<double>::infinity();
    std::vector<std::pair<int, double>> terms;
    for (int k = 0; k < 100000; ++k) {
      const int n = (spacing + 1) * (2 * k + mu);
      const double lw = modes * (2.0 * n * lg - special::log_factorial(n));
      terms.emplace_back(n, lw);
      lmax = std::max(lmax, lw);
      if (lw < lmax - 80.0 && n > gamma * gamma) break;
    }
    double w = 0.0, nw = 0.0;
    for (auto [n, lw] : terms) {
      const double e = std::exp(lw - lmax);
      w += e;
      nw += n * e;
    }
    total += nw / w;
  }
  return 0.5 * total;
}

double nbar_concat_per_mode(double alpha) {
  const double a2 = alpha * alpha;
  return 0.5 * a2 * (norms::cat_parity(alpha, 1) / norms::cat_parity(alpha, 0) +
                     norms::cat_parity(alpha, 0) / norms::cat_parity(alpha, 1));
}

double mean_total_photons(const CodeSpace& code) {
  double n = 0.0;
  for (const Vec* v : {&code.zero, &code.one}) n += mean_total_photons(Ket{code.space, *v, 0.0});
  return 0.5 * n;
}

double alpha_for_nbar(double nbar, int parity) {
  return bisect_increasing([parity](double a) { return nbar_cat(a, parity); }, nbar, 0.05, 12.0);
}

double gamma_for_nbar(double nbar, int delta) {
  return bisect_increasing([delta](double g) { return nbar_paircat(g, delta); }, nbar, 0.05, 12.0);
}

double gamma_for_multimode_nbar(double per_mode, int modes, int spacing) {
  return bisect_increasing([=](double g) { return nbar_multimode_per_mode(g, modes, spacing); }, per_mode, 0.05,
                           8.0);
}

double alpha_for_concat_nbar(double per_mode) {
  return bisect_increasing(nbar_concat_per_mode, per_mode, 0.05, 12.0);
}

double c1_minus_paircat(double g) {
  return norms::paircat(g, 1, 1) / norms::paircat(g, 0, 0) - norms::paircat(g, 1, 0) / norms::paircat(g, 0, 1);
}

double c1_minus_cat(double a) { return cat_res(a, 3) / cat_res(a, 0) - cat_res(a, 1) / cat_res(a, 2); }

namespace {
double root_in(double (*f)(double), double lo, double hi) {
  if (f(lo) * f(hi) > 0) throw NumericalError("no sign change of C1^- in the bracket");
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t it = 200;
  auto r = boost::math::tools::toms748_solve(f, lo, hi, tol, it);
  return 0.5 * (r.first + r.second);
}
}  // namespace

double sweet_spot_paircat(double lo, double hi) { return root_in(c1_minus_paircat, lo, hi); }
double sweet_spot_cat(double lo, double hi) { return root_in(c1_minus_cat, lo, hi); }

DephasingProjection dephasing_projection(const CodeSpace& code, int mode, int k) {
  if (k < 0) throw ConfigError("k must be non-negative");
  if (mode < 0 || mode >= code.space.modes()) throw ConfigError("mode index out of range");
  if (k > code.space.cutoff(mode)) throw TruncationError("truncation too small for the requested k");
  DephasingProjection d;
  const SpMat ak = power(annihilation_op(code.space, mode), k);
  const Mat A = ak * code.isometry();
  d.numeric = A.adjoint() * A;
  const double g = std::abs(code.param);
  if (code.kind == CodeKind::cat) {
    for (int mu = 0; mu < 2; ++mu) {
      const int r = 2 * mu + code.sector;
      d.closed[mu] = std::pow(g, 2 * k) * cat_res(g, r - k) / cat_res(g, r);
    }
  } else if (code.kind == CodeKind::paircat) {
    const int D = code.sector;
    for (int mu = 0; mu < 2; ++mu) {
      const int p = a_parity(mu, D);
      const double num = mode == 0 ? norms::paircat(g, D + k, p + k) : norms::paircat(g, D - k, p);
      d.closed[mu] = std::pow(g, 2 * k) * num / norms::paircat(g, D, p);
    }
  } else {
    d.closed.setConstant(std::numeric_limits<double>::quiet_NaN());
  }
  return d;
}

StabilizerReport stabilizer_check(const CodeSpace& code) {
  const FockSpace& s = code.space;
  const SpMat I = identity_op(s);
  const Mat P = code.projector();
  SpMat Sg;
  std::vector<SpMat> sectors;
  switch (code.kind) {
    case CodeKind::cat: {
      Sg = power(annihilation_op(s, 0), 4) - std::pow(code.param, 4) * I;
      const int Pi = code.sector;
      sectors.push_back(SpMat(diagonal_op(s, [Pi](const std::vector<int>& o) {
                          return cplx(((o[0] + Pi) % 2) ? -1.0 : 1.0);
                        }) - I));
      break;
    }
    case CodeKind::paircat:
    case CodeKind::multimode: {
      const int M = s.modes();
      const int p = 2 * (code.spacing + 1);
      Sg = I;
      for (int m = 0; m < M; ++m) Sg = SpMat(Sg * power(annihilation_op(s, m), p));
      Sg -= std::pow(code.param, p * M) * I;
      std::vector<int> dv = code.dvec;
      if (code.kind == CodeKind::paircat) dv = {code.sector};
      for (int m = 0; m + 1 < M; ++m)
        sectors.push_back(SpMat(number_op(s, m + 1) - number_op(s, m) - double(dv[m]) * I));
      break;
    }
    default: throw ConfigError("stabilizer_check needs a cat, pair-cat, or multimode code");
  }
  // Sg and sectors hold S - 1.
  StabilizerReport r;
  r.s_gamma = (Sg * P).norm();
  for (const auto& S : sectors) r.s_sector = std::max(r.s_sector, (S * P).norm());
  r.p_s_gamma = (P * Sg).norm();
  r.p_s_gamma_dag = (P * adjoint(Sg)).norm();
  return r;
}

}  // namespace paircat
