// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "paircat/channels.hpp"
#include "paircat/codes.hpp"
#include "paircat/dynamics.hpp"
#include "paircat/gates.hpp"
#include "paircat/mmqec.hpp"
#include "paircat/quasiprob.hpp"
#include "paircat/recovery.hpp"
#include "paircat/reservoir.hpp"

using namespace paircat;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void check(bool ok, const std::string& what) {
    if (!ok) pass = false;
    detail << (ok ? "" : "[x] ") << what << "; ";
  }
};

std::string fmt(double v, const char* f = "%.6g") {
  char b[64];
  std::snprintf(b, sizeof b, f, v);
  return b;
}

Mat dephase(const Mat& m) { return m / (m(0, 0) / std::abs(m(0, 0))); }

// ---- criteria ----

void sweet_spot(Outcome& o) {
  const double g = sweet_spot_paircat();
  const double per_mode = nbar_paircat(g) / 2;
  o.check(std::abs(g - 1.3) <= 0.05, "gamma* = " + fmt(g) + " (1.3 +- 0.05)");
  o.check(std::abs(per_mode - 1.3) <= 0.05, "nbar/mode = " + fmt(per_mode) + " (1.3 +- 0.05)");
  const double a = sweet_spot_cat();
  const double nc = nbar_cat(a);
  o.check(std::abs(nc - 2.3) <= 0.05, "cat nbar = " + fmt(nc) + " (2.3 +- 0.05)");
  o.check(std::abs(a - 1.5) <= 0.05, "cat alpha* = " + fmt(a) + " (~1.5)");
}

void loss_table(Outcome& o) {
  const double pp = 1e-3;  // 0.1 percentage point
  const double p2 = analytic_p2(alpha_for_nbar(2.3), 0.97);
  const double p11 = analytic_p11(gamma_for_nbar(2.6), 0.97);
  o.check(std::abs(p2 - 0.024) <= pp, "pr(2) at nbar 2.3, 1-eta 0.03 = " + fmt(100 * p2, "%.4f") + "% (2.4 +- 0.1)");
  o.check(std::abs(p11 - 0.021) <= pp,
          "pr(1,1) at nbar 2.6, 1-eta 0.03 = " + fmt(100 * p11, "%.4f") + "% (2.1 +- 0.1)");
  const double h2 = analytic_p2(alpha_for_nbar(10.0), 0.8), h11 = analytic_p11(gamma_for_nbar(10.0), 0.8);
  o.check(std::abs(h2 - 0.27) <= 0.01, "pr(2) at nbar 10, 1-eta 0.2 = " + fmt(100 * h2, "%.3f") + "% (27 +- 1)");
  o.check(std::abs(h11 - 0.15) <= 0.01, "pr(1,1) at nbar 10, 1-eta 0.2 = " + fmt(100 * h11, "%.3f") + "% (15 +- 1)");
  double worst = 0.0;
  for (double nb : {2.3, 2.6, 10.0})
    for (double eta : {0.97, 0.8}) {
      const double a = alpha_for_nbar(nb), g = gamma_for_nbar(nb);
      const CodeSpace c = cat_code(60, a, 0, 1e-10);
      const CodeSpace p = paircat_code(45, g, 0, 1e-10);
      worst = std::max(worst, std::abs(analytic_p2(a, eta) / loss_probability(c, eta, 2) - 1));
      worst = std::max(worst, std::abs(analytic_p11(g, eta) / loss_probability(p, eta, 1, 1) - 1));
    }
  o.check(worst <= 1e-6, "analytic vs Kraus trace max rel diff " + fmt(worst, "%.2e") + " (<= 1e-6)");
}

void dominance(Outcome& o) {
  // nbar = 1 itself is not reachable: code-averaged occupation exceeds 1 for every amplitude.
  int points = 0, bad = 0;
  double tightest = 1e9;
  for (int i = 0; i <= 36; ++i) {
    const double nb = i == 0 ? 1.01 : 1.0 + 0.25 * i;
    const double a = alpha_for_nbar(nb), g = gamma_for_nbar(nb);
    for (int j = 1; j <= 30; ++j) {
      const double eta = 1.0 - 0.01 * j;
      const double p2 = analytic_p2(a, eta), p11 = analytic_p11(g, eta);
      ++points;
      if (p2 < p11) ++bad;
      tightest = std::min(tightest, p2 - p11);
    }
  }
  o.check(bad == 0, std::to_string(points) + " grid points, " + std::to_string(bad) +
                        " violations, min pr(2) - pr(1,1) = " + fmt(tightest, "%.3e"));
}

void dephasing(Outcome& o) {
  std::vector<double> gs;
  for (int i = 0; i <= 8; ++i) gs.push_back(0.5 + 0.25 * i);
  for (double kn : {0.01, 5.0}) {
    const auto rows = dephasing_sweep(gs, {0}, {kn});
    bool monotone = true;
    for (size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].scaled_rate < rows[i - 1].scaled_rate;
    double mx = 0, my = 0;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows) mx += r.gamma * r.gamma / n, my += std::log(r.scaled_rate) / n;
    double sxy = 0, sxx = 0;
    for (const auto& r : rows) {
      sxy += (r.gamma * r.gamma - mx) * (std::log(r.scaled_rate) - my);
      sxx += (r.gamma * r.gamma - mx) * (r.gamma * r.gamma - mx);
    }
    const double slope = sxy / sxx, drop = rows.front().scaled_rate / rows.back().scaled_rate;
    const std::string tag = "kappa_n " + fmt(kn) + ": ";
    o.check(monotone, tag + "monotone decrease");
    if (kn == 0.01) {
      o.check(drop >= 100, tag + "rate(0.5)/rate(2.5) = " + fmt(drop, "%.3g") + " (>= 100)");
      o.check(slope < -1, tag + "slope of log rate vs gamma^2 = " + fmt(slope, "%.3f") + " (< -1)");
    } else {
      o.check(slope < 0, tag + "slope = " + fmt(slope, "%.3f") + " (< 0)");
    }
  }
}

void kl_exactness(Outcome& o) {
  const CodeSpace c = paircat_code(30, 2.0, 0);
  const SpMat a = annihilation_op(c.space, 0), b = annihilation_op(c.space, 1);
  std::vector<std::pair<int, SpMat>> errs;  // sector label: +k for a^k, -l for b^l
  for (int k = 0; k <= 3; ++k) errs.push_back({k, SpMat(power(a, k))});
  for (int l = 1; l <= 3; ++l) errs.push_back({-l, SpMat(power(b, l))});
  double worst = 0.0;
  for (const auto& [si, Ei] : errs)
    for (const auto& [sj, Ej] : errs) {
      if (si == sj) continue;
      const KLCoeffs k = kl_decompose(c, Ei, Ej);
      worst = std::max({worst, std::abs(k.x), std::abs(k.y), std::abs(k.z)});
    }
  o.check(worst <= 1e-9, "mixed-sector max |x|,|y|,|z| = " + fmt(worst, "%.2e") + " (<= 1e-9)");
  const KLCoeffs ab = kl_decompose(c, identity_op(c.space), SpMat(a * b));
  const double rel = std::abs(ab.x.real() / 4.0 - 1.0);
  const double bound = std::exp(-8.0) * 100;
  o.check(rel <= 1e-6, "ab: x/gamma^2 - 1 = " + fmt(rel, "%.2e") + " (<= 1e-6)");
  o.check(std::abs(ab.y) < bound && std::abs(ab.z) < bound,
          "ab: |y| = " + fmt(std::abs(ab.y), "%.2e") + ", |z| = " + fmt(std::abs(ab.z), "%.2e") + " (< " +
              fmt(bound, "%.2e") + ")");
  double dr = 0.0;
  for (int mode = 0; mode < 2; ++mode)
    for (int k = 0; k <= 3; ++k) {
      const DephasingProjection d = dephasing_projection(c, mode, k);
      for (int i = 0; i < 2; ++i) dr = std::max(dr, std::abs(d.numeric(i, i).real() / d.closed[i] - 1));
    }
  o.check(dr <= 1e-9, "dephasing closed form vs projection rel " + fmt(dr, "%.2e") + " (<= 1e-9)");
}

void gates(Outcome& o) {
  Eigen::Matrix2cd z;
  z << 1, 0, 0, cplx(0, 1);
  Mat cz = Mat::Identity(4, 4);
  cz(3, 3) = -1;
  const CodeSpace cat = cat_code(40, 2.0, 0), pc = paircat_code(30, 2.0, 0);
  const double ec = (dephase(kerr_z_rotation(cat).projected) - z).norm();
  const double ep = (dephase(kerr_z_rotation(pc).projected) - z).norm();
  o.check(ec <= 1e-10, "cat Kerr Z err " + fmt(ec, "%.1e"));
  o.check(ep <= 1e-10, "pair-cat Kerr Z err " + fmt(ep, "%.1e"));
  const double cc = (dephase(kerr_cz(cat, cat).projected) - cz).norm();
  const double cp = (dephase(kerr_cz(pc, pc).projected) - cz).norm();
  o.check(cc <= 1e-10, "cat Kerr CZ err " + fmt(cc, "%.1e"));
  o.check(cp <= 1e-10, "pair-cat Kerr CZ err " + fmt(cp, "%.1e"));
}

void lattice(Outcome& o) {
  int cases = 0, fails = 0;
  for (int p = 0; p <= 3; ++p)
    for (int q = 0; q <= 3; ++q)
      for (int r = 0; r <= 3; ++r) {
        if ((p > 0) + (q > 0) + (r > 0) > 2) continue;
        const ErrorExps e{p, q, r};
        ++cases;
        if (decode_loss(syndrome_of(e)).exps != e) ++fails;
      }
  for (int m = 0; m < 3; ++m)
    for (int k = -3; k <= 3; ++k) {
      ErrorExps e{0, 0, 0};
      e[m] = k;
      ++cases;
      const DecodedError d = decode_single_mode_loss_gain(syndrome_of(e));
      if (d.unused || d.exps != e) ++fails;
    }
  o.check(fails == 0, std::to_string(cases) + " errors, " + std::to_string(fails) + " decoding failures");
}

void fidelity(Outcome& o) {
  const Figure5Config cfg;
  const auto rows = figure5_sweep(cfg);
  std::map<std::string, std::map<double, double>> f;
  for (const auto& r : rows) f[r.code][r.one_minus_eta] = r.fidelity;
  bool ordered = true;
  for (double le : cfg.one_minus_eta)
    ordered = ordered && f["paircat3"][le] > f["concat"][le] && f["concat"][le] > f["singlerail"][le];
  o.check(ordered, "F_paircat > F_concat > F_singlerail at every 1-eta");
  const double cc = 0.5 * (1 - f["concat"][0.025]), pc = 1 - f["paircat3"][0.025];
  o.check(cc >= 2.6e-3 / 3 && cc <= 2.6e-3 * 3, "(1-F_cc)/2 at 0.025 = " + fmt(cc, "%.3e") + " (2.6e-3 x/ 3)");
  o.check(pc >= 0.2e-3 / 3 && pc <= 0.2e-3 * 3, "1-F_pc at 0.025 = " + fmt(pc, "%.3e") + " (2e-4 x/ 3)");
  o.check(f["paircat3"][0.1] >= 0.985, "F_pc at 0.1 = " + fmt(f["paircat3"][0.1], "%.5f") + " (>= 0.985)");
}

void reservoir(Outcome& o) {
  ReservoirParams p;
  p.g1 = p.g2 = 0.01;
  p.delta = 1.0;
  p.gamma_fg = 10.0;
  p.gamma_eg = 0.1;
  const RateFit four = fit_four_photon_rate(p), para = fit_parasitic_rate(p);
  o.check(std::abs(four.ratio - 1) <= 0.25, "four-photon fit/formula = " + fmt(four.ratio, "%.4f") + " (1 +- 0.25)");
  o.check(std::abs(para.ratio - 1) <= 0.25, "parasitic fit/formula = " + fmt(para.ratio, "%.4f") + " (1 +- 0.25)");
  double worst = 0.0;
  for (int d : {-2, -1, 1, 2}) {
    const ReadoutResult r = readout_displacement(d, 0.5, 1.0);
    worst = std::max(worst, std::abs(std::abs(r.amplitude) - 2 * 0.5 * std::abs(d) / 1.0));
  }
  o.check(worst <= 1e-3, "readout | |<c>| - 2 eps |Delta| / kappa_c | max " + fmt(worst, "%.2e") + " (<= 1e-3)");
  for (const char* loss : {"a", "b"}) {
    const AutonomousTrace t = autonomous_correction_demo(2.0, 1.0, 1.0, loss, 1.0, 1.0, 20.0, 1, 20);
    o.check(t.fidelity.back() >= 0.99,
            std::string("demo loss ") + loss + " final F = " + fmt(t.fidelity.back(), "%.5f") + " (>= 0.99)");
  }
}

void quasiprob(Outcome& o) {
  const FockSpace s = FockSpace::uniform(2, 40);
  const std::vector<std::pair<std::string, Ket>> states{
      {"fock00", Ket{s, fock_ket(s, std::vector<int>{0, 0}), 0.0}},
      {"fock11", Ket{s, fock_ket(s, std::vector<int>{1, 1}), 0.0}},
      {"pair_coherent", pair_coherent(s, 2.0, 0, 1e-8)},
      {"pair_cat", pair_cat_state(s, 2.0, 0, 0, 1e-8)},
      {"two_mode_squeezed", two_mode_squeezed(s, 1.0, 0, 1e-8)}};
  double worst = 0.0;
  for (const auto& [name, k] : states) worst = std::max(worst, std::abs(q_normalization(fixed_delta_state(k, 0), 5.0) - 1));
  o.check(worst <= 1e-3, "Q normalization max |N - 1| = " + fmt(worst, "%.2e") + " (<= 1e-3)");
  GridSpec g;
  g.n_re = g.n_im = 31;
  const FockSpace w = FockSpace::uniform(2, 30);
  for (int mu = 0; mu < 2; ++mu) {
    const DistributionGrid d = w_function(fixed_delta_state(pair_cat_state(w, 2.0, 0, mu), 0), g);
    const double mn = *std::min_element(d.values.begin(), d.values.end());
    o.check(mn < 0, "W(mu=" + std::to_string(mu) + ") min " + fmt(mn, "%.4f") + " (< 0)");
    o.check(d.max_imag <= 1e-8, "W(mu=" + std::to_string(mu) + ") max imag " + fmt(d.max_imag, "%.1e") + " (<= 1e-8)");
  }
}

struct Criterion {
  const char* name;
  double budget_s;
  std::function<void(Outcome&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> all{
      {"sweet-spot", 10, sweet_spot},         {"loss-table", 30, loss_table},
      {"dominance", 120, dominance},          {"dephasing-suppression", 300, dephasing},
      {"kl-exactness", 1e9, kl_exactness},    {"gate-identities", 1e9, gates},
      {"lattice-decoding", 1, lattice},       {"fidelity-comparison", 1800, fidelity},
      {"reservoir-validation", 900, reservoir}, {"quasiprobability", 1e9, quasiprob},
  };
  int failed = 0;
  for (const auto& c : all) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.check(false, std::string("exception: ") + e.what());
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s < 1e9) o.check(dt < c.budget_s, "runtime " + fmt(dt, "%.2f") + " s (< " + fmt(c.budget_s) + " s)");
    else o.detail << "runtime " << fmt(dt, "%.2f") << " s";
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.str().c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed ? 1 : 0;
}
