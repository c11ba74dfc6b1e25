#include "paircat/mmqec.hpp"

#include <cmath>
#include <functional>

namespace paircat {

Syndrome syndrome_of(const ErrorExps& e) {
  if (e.empty()) throw ConfigError("error needs at least one mode");
  Syndrome s(e.size() - 1);
  for (size_t m = 0; m + 1 < e.size(); ++m) s[m] = e[m] - e[m + 1];
  return s;
}

DecodedError decode_loss(const Syndrome& s) {
  if (s.size() != 2) throw ConfigError("loss-only region decoding is defined for three modes");
  const int n = s[0], m = s[1];
  DecodedError d;
  if (m >= 0 && n + m >= 0) {
    d.exps = {n + m, m, 0};
    d.region = 1;
  } else if (n <= 0 && n + m <= 0) {
    d.exps = {0, -n, -(n + m)};
    d.region = 2;
  } else {
    d.exps = {n, 0, -m};
    d.region = 3;
  }
  if (n == 0 && m == 0) d.region = 0;
  return d;
}

DecodedError decode_single_mode_loss_gain(const Syndrome& s) {
  if (s.size() != 2) throw ConfigError("loss/gain decoding is defined for three modes");
  const int n = s[0], m = s[1];
  DecodedError d;
  d.mode = DecodedError::Mode::loss_gain;
  if (m == 0)
    d.exps = {n, 0, 0};
  else if (n == -m)
    d.exps = {0, m, 0};
  else if (n == 0)
    d.exps = {0, 0, -m};
  else {
    d.unused = true;
    d.exps = {0, 0, 0};
  }
  return d;
}

std::string error_label(const ErrorExps& e) {
  std::string out;
  for (size_t m = 0; m < e.size(); ++m) {
    if (e[m] == 0) continue;
    out += char('a' + m);
    if (e[m] < 0) out += "+";
    if (std::abs(e[m]) != 1) out += "^" + std::to_string(std::abs(e[m]));
  }
  return out.empty() ? "1" : out;
}

SpMat error_operator(const FockSpace& s, const ErrorExps& e) {
  if (static_cast<int>(e.size()) != s.modes()) throw ConfigError("error exponents do not match the mode count");
  SpMat E = identity_op(s);
  for (int m = 0; m < s.modes(); ++m) {
    if (e[m] == 0) continue;
    const SpMat op = e[m] > 0 ? annihilation_op(s, m) : creation_op(s, m);
    E = SpMat(power(op, std::abs(e[m])) * E);
  }
  return E;
}

std::vector<ErrorExps> loss_errors(int modes, int weight, int max_total) {
  std::vector<ErrorExps> out;
  ErrorExps e(modes, 0);
  std::function<void(int, int, int)> rec = [&](int m, int w, int tot) {
    if (m == modes) {
      out.push_back(e);
      return;
    }
    for (int k = 0; tot + k <= max_total; ++k) {
      if (k > 0 && w == weight) break;
      e[m] = k;
      rec(m + 1, w + (k > 0), tot + k);
    }
    e[m] = 0;
  };
  rec(0, 0, 0);
  return out;
}

CertReport certify_correctability(const CodeSpace& code, const std::vector<ErrorExps>& errors) {
  std::vector<SpMat> ops;
  std::vector<Syndrome> syn;
  for (const auto& e : errors) {
    ops.push_back(error_operator(code.space, e));
    syn.push_back(syndrome_of(e));
  }
  const int n = static_cast<int>(errors.size());
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  CertReport rep;
  rep.entries.resize(pairs.size());
  rep.max_tail = code.tail_mass;
#pragma omp parallel for schedule(dynamic)
  for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
    const auto [i, j] = pairs[p];
    CertEntry& c = rep.entries[p];
    c.left = error_label(errors[i]);
    c.right = error_label(errors[j]);
    c.same_sector = syn[i] == syn[j];
    c.coeffs = kl_decompose(code, ops[i], ops[j]);
  }
  for (const auto& c : rep.entries) {
    const double off = std::max({std::abs(c.coeffs.x), std::abs(c.coeffs.y), std::abs(c.coeffs.z)});
    if (!c.same_sector)
      rep.max_cross_sector = std::max({rep.max_cross_sector, off, std::abs(c.coeffs.c)});
    else if (std::abs(c.coeffs.c) > 0)
      rep.max_same_sector_ratio = std::max(rep.max_same_sector_ratio, off / std::abs(c.coeffs.c));
  }
  return rep;
}

}  // namespace paircat
