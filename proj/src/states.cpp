#include "paircat/states.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "paircat/special.hpp"

namespace paircat {

namespace norms {

double cat_parity(double a, int parity) {
  const double s = (parity % 2) ? -1.0 : 1.0;
  return 0.5 * (1.0 + s * std::exp(-2.0 * a * a));
}

// Below this argument the closed forms lose digits to cancellation (mu = 1 at
// small amplitude); the positive-term series is used instead.
constexpr double kSeriesBelow = 8.0;

double cat_code(double a, int parity, int mu) {
  const double x = a * a;
  if (x < kSeriesBelow) {
    const int r = 2 * (((mu % 2) + 2) % 2) + (((parity % 2) + 2) % 2);
    double sum = 0.0;
    for (int n = r; n < 200; n += 4) sum += std::exp(-x + n * std::log(x) - special::log_factorial(n));
    return x == 0.0 ? (r == 0 ? 1.0 : 0.0) : sum;
  }
  const double s = (mu % 2) ? -1.0 : 1.0;
  return 0.5 * cat_parity(a, parity) + 0.5 * s * std::exp(-a * a) * std::cos(a * a - 0.5 * kPi * parity);
}

double pair(double g, int delta) { return special::bessel_i_scaled(delta, 2.0 * g * g); }

double paircat(double g, int delta, int mu) {
  const double x = 2.0 * g * g;
  double s = (((mu % 2) + 2) % 2) ? -1.0 : 1.0;
  if (x < kSeriesBelow) {
    // (I_D + s J_D)/2 keeps the terms with (-1)^n = s; J_{-D} = (-1)^D J_D.
    const int D = std::abs(delta);
    if (delta < 0 && D % 2) s = -s;
    if (x == 0.0) return (D == 0 && s > 0) ? 1.0 : 0.0;
    double sum = 0.0;
    const double lh = std::log(0.5 * x);
    for (int n = s > 0 ? 0 : 1; n < 200; n += 2)
      sum += std::exp(-x + (2 * n + D) * lh - special::log_factorial(n) - special::log_factorial(n + D));
    return sum;
  }
  return 0.5 * (special::bessel_i_scaled(delta, x) + s * std::exp(-x) * special::bessel_j(delta, x));
}

}  // namespace norms

namespace {

struct Chain {
  std::function<bool(long)> keep;
  std::function<std::vector<int>(long)> occ;
  std::function<double(long)> logw;   // log |amplitude|, unnormalized
  std::function<double(long)> phase;  // amplitude argument
};

long first_kept(const Chain& c) {
  for (long j = 0; j < 1000000; ++j)
    if (c.keep(j)) return j;
  throw NumericalError("empty chain");
}

// Limit state for vanishing amplitude parameter: the lowest kept chain element.
Ket limit_state(const FockSpace& s, const Chain& c) {
  const auto o = c.occ(first_kept(c));
  if (!s.contains(o)) throw TruncationError("limit Fock state lies outside the truncation");
  Ket k{s, fock_ket(s, o), 0.0};
  return k;
}

Ket build(const FockSpace& s, const Chain& c, double max_tail, const char* what) {
  struct Entry {
    int idx;
    double lw;
    double ph;
  };
  std::vector<Entry> in;
  std::vector<double> out;
  double lmax = -std::numeric_limits<double>::infinity();
  double prev = lmax;
  bool all_out = false;
  for (long j = 0; j < 2000000; ++j) {
    if (!c.keep(j)) continue;
    const auto o = c.occ(j);
    const double lw = c.logw(j);
    const bool inside = s.contains(o);
    if (inside)
      in.push_back({s.index(o), lw, c.phase(j)});
    else {
      all_out = true;
      out.push_back(lw);
    }
    lmax = std::max(lmax, lw);
    if (all_out && lw < prev && lw < lmax - 80.0) break;
    prev = lw;
  }
  if (!std::isfinite(lmax)) throw NumericalError(std::string(what) + ": degenerate normalization");
  double m_in = 0.0, m_out = 0.0;
  for (const auto& e : in) m_in += std::exp(2.0 * (e.lw - lmax));
  for (double lw : out) m_out += std::exp(2.0 * (lw - lmax));
  if (m_in <= 0.0) throw TruncationError(std::string(what) + ": no support inside the truncation");
  Ket k;
  k.space = s;
  k.amp = Vec::Zero(s.dim());
  for (const auto& e : in) k.amp[e.idx] += std::polar(std::exp(e.lw - lmax), e.ph);
  k.amp /= k.amp.norm();
  k.tail_mass = m_out / (m_in + m_out);
  if (k.tail_mass > max_tail) {
    std::ostringstream os;
    os << what << ": truncation tail " << k.tail_mass << " exceeds " << max_tail;
    throw TruncationError(os.str());
  }
  return k;
}

std::vector<int> single(const FockSpace& s, int mode, long n) {
  std::vector<int> o(s.modes(), 0);
  o[mode] = static_cast<int>(std::min<long>(n, std::numeric_limits<int>::max() / 2));
  return o;
}

void require_mode(const FockSpace& s, int mode) {
  if (mode < 0 || mode >= s.modes()) throw ConfigError("mode index out of range");
}

// Single-mode series alpha^n / sqrt(n!) restricted by `keep`.
Chain single_mode_chain(const FockSpace& s, cplx alpha, int mode, std::function<bool(long)> keep) {
  const double la = std::log(std::abs(alpha));
  const double arg = std::arg(alpha);
  return Chain{std::move(keep), [&s, mode](long n) { return single(s, mode, n); },
               [la](long n) { return n * la - 0.5 * special::log_factorial(int(n)); },
               [arg](long n) { return n * arg; }};
}

// Two-mode chain |j, j+D> (or its swap for D < 0) with weight g^{2j+|D|}/sqrt(j!(j+|D|)!).
Chain pair_chain(const FockSpace& s, cplx gamma, int delta, std::function<bool(long)> keep) {
  if (s.modes() != 2) throw ConfigError("pair states need a two-mode space");
  const int ad = std::abs(delta);
  const double lg = std::log(std::abs(gamma));
  const double arg = std::arg(gamma);
  return Chain{std::move(keep),
               [delta, ad](long j) {
                 const int n = int(j);
                 return delta >= 0 ? std::vector<int>{n, n + ad} : std::vector<int>{n + ad, n};
               },
               [lg, ad](long j) {
                 return (2.0 * j + ad) * lg -
                        0.5 * (special::log_factorial(int(j)) + special::log_factorial(int(j) + ad));
               },
               [arg, ad](long j) { return (2.0 * j + ad) * arg; }};
}

}  // namespace

Ket coherent(const FockSpace& s, cplx alpha, int mode, double max_tail) {
  require_mode(s, mode);
  auto c = single_mode_chain(s, alpha, mode, [](long) { return true; });
  if (std::abs(alpha) == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "coherent");
}

Ket cat_state(const FockSpace& s, cplx alpha, int parity, int mode, double max_tail) {
  require_mode(s, mode);
  if (norms::cat_parity(std::abs(alpha), parity) < 1e-300) throw NumericalError("cat_state: degenerate normalization");
  const int p = ((parity % 2) + 2) % 2;
  auto c = single_mode_chain(s, alpha, mode, [p](long n) { return n % 2 == p; });
  if (std::abs(alpha) == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "cat_state");
}

Ket cat_code_state(const FockSpace& s, cplx alpha, int parity, int mu, int mode, double max_tail) {
  require_mode(s, mode);
  const int r = 2 * (((mu % 2) + 2) % 2) + (((parity % 2) + 2) % 2);
  auto c = single_mode_chain(s, alpha, mode, [r](long n) { return n % 4 == r; });
  if (std::abs(alpha) == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "cat_code_state");
}

Ket pair_coherent(const FockSpace& s, cplx gamma, int delta, double max_tail) {
  auto c = pair_chain(s, gamma, delta, [](long) { return true; });
  if (std::abs(gamma) == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "pair_coherent");
}

Ket pair_cat_state(const FockSpace& s, cplx gamma, int delta, int mu, double max_tail) {
  const int m = ((mu % 2) + 2) % 2;
  auto c = pair_chain(s, gamma, delta, [m](long j) { return j % 2 == m; });
  if (std::abs(gamma) == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "pair_cat_state");
}

Ket pair_cat_superposition(const FockSpace& s, cplx gamma, int delta, int mu, double max_tail) {
  const int ad = std::abs(delta);
  const double g = std::abs(gamma);
  const Ket p1 = pair_coherent(s, gamma, ad, max_tail);
  const Ket p2 = pair_coherent(s, kI * gamma, ad, max_tail);
  const double sgn = (((mu % 2) + 2) % 2) ? -1.0 : 1.0;
  const cplx ph = sgn * std::pow(-kI, ad);
  const double scale = 2.0 * std::sqrt(norms::paircat(g, ad, mu) / norms::pair(g, ad));
  Ket k{s, (p1.amp + ph * p2.amp) / scale, std::max(p1.tail_mass, p2.tail_mass)};
  if (delta < 0) k.amp = swap_op(s) * k.amp;
  return k;
}

Ket two_mode_squeezed(const FockSpace& s, double xi, int delta, double max_tail) {
  if (s.modes() != 2) throw ConfigError("two_mode_squeezed needs a two-mode space");
  const int ad = std::abs(delta);
  const double lt = std::log(std::abs(std::tanh(xi)));
  const double sg = std::tanh(xi) < 0 ? kPi : 0.0;
  Chain c{[](long) { return true; },
          [delta, ad](long j) {
            const int n = int(j);
            return delta >= 0 ? std::vector<int>{n, n + ad} : std::vector<int>{n + ad, n};
          },
          [lt, ad](long j) {
            const int n = int(j);
            return 0.5 * (special::log_factorial(n + ad) - special::log_factorial(n) - special::log_factorial(ad)) +
                   n * lt;
          },
          [sg](long j) { return j * sg; }};
  if (xi == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "two_mode_squeezed");
}

Ket multimode_code_state(const FockSpace& s, cplx gamma, std::span<const int> dvec, int d, int spacing, int mu,
                         double max_tail) {
  const int M = s.modes();
  if (static_cast<int>(dvec.size()) != M - 1) throw ConfigError("delta vector must have M-1 entries");
  if (d < 2 || spacing < 0 || mu < 0 || mu >= d) throw ConfigError("invalid qudit dimension, spacing, or index");
  // Offsets so that the smallest occupation along the chain equals j.
  std::vector<int> off(M, 0);
  for (int m = 1; m < M; ++m) off[m] = off[m - 1] + dvec[m - 1];
  const int lo = *std::min_element(off.begin(), off.end());
  for (int& o : off) o -= lo;
  const long step = long(spacing + 1);
  const double lg = std::log(std::abs(gamma));
  const double arg = std::arg(gamma);
  Chain c{[=](long j) { return j % step == 0 && ((j / step) % d) == mu; },
          [off](long j) {
            std::vector<int> o(off.size());
            for (size_t m = 0; m < off.size(); ++m) o[m] = int(j) + off[m];
            return o;
          },
          [off, lg](long j) {
            double w = 0.0;
            for (int o : off) w += (j + o) * lg - 0.5 * special::log_factorial(int(j) + o);
            return w;
          },
          [off, arg](long j) {
            double p = 0.0;
            for (int o : off) p += (j + o) * arg;
            return p;
          }};
  if (std::abs(gamma) == 0.0) return limit_state(s, c);
  return build(s, c, max_tail, "multimode_code_state");
}

Ket product(const std::vector<Ket>& parts) {
  if (parts.empty()) throw ConfigError("product of zero kets");
  Ket k = parts.front();
  for (size_t i = 1; i < parts.size(); ++i) {
    const Ket& p = parts[i];
    FockSpace s = tensor(k.space, p.space);
    Vec v(s.dim());
    for (int a = 0; a < k.amp.size(); ++a)
      for (int b = 0; b < p.amp.size(); ++b) v[a * p.amp.size() + b] = k.amp[a] * p.amp[b];
    k = Ket{s, v, 1.0 - (1.0 - k.tail_mass) * (1.0 - p.tail_mass)};
  }
  return k;
}

double mean_photons(const Ket& k, int mode) {
  require_mode(k.space, mode);
  double n = 0.0;
  for (int i = 0; i < k.space.dim(); ++i) n += std::norm(k.amp[i]) * k.space.occupation(i, mode);
  return n / k.amp.squaredNorm();
}

double mean_total_photons(const Ket& k) {
  double n = 0.0;
  for (int m = 0; m < k.space.modes(); ++m) n += mean_photons(k, m);
  return n;
}

}  // namespace paircat
