#pragma once

#include <string>
#include <vector>

#include "paircat/codes.hpp"

namespace paircat {

// Per-mode net loss exponents; negative entries are gains.
using ErrorExps = std::vector<int>;
using Syndrome = std::vector<int>;

// Delta_m = n_{m+1} - n_m changes by e_m - e_{m+1}. For M = 3:
// a -> (1, 0), b -> (-1, 1), c -> (0, -1).
Syndrome syndrome_of(const ErrorExps& e);

struct DecodedError {
  enum class Mode { loss_only, loss_gain } mode = Mode::loss_only;
  ErrorExps exps;
  int region = 0;       // 1..3 for loss-only decoding, 0 at the origin
  bool unused = false;  // off-line syndrome for loss/gain decoding
};

// Region 1: m >= 0, n+m >= 0 -> a^{n+m} b^m
// Region 2: n <= 0, n+m <= 0 -> b^{-n} c^{-(n+m)}
// Region 3: n >= 0, m <= 0   -> a^n c^{-m}
// Ties go to the first region listed.
DecodedError decode_loss(const Syndrome& s);
// Lines (k, 0) -> a^k, (-k, k) -> b^k, (0, -k) -> c^k with signed k; anything else is unused.
DecodedError decode_single_mode_loss_gain(const Syndrome& s);

std::string error_label(const ErrorExps& e);
// Product of a_m^{e_m} for loss exponents; gains use creation operators.
SpMat error_operator(const FockSpace& s, const ErrorExps& e);

// All loss errors with at most `weight` nonzero modes and total exponent <= max_total.
std::vector<ErrorExps> loss_errors(int modes, int weight, int max_total);

struct CertEntry {
  std::string left, right;
  bool same_sector = false;
  KLCoeffs coeffs;
};
struct CertReport {
  std::vector<CertEntry> entries;
  double max_cross_sector = 0.0;  // largest |c|,|x|,|y|,|z| over pairs in different sectors
  double max_same_sector_ratio = 0.0;
  double max_tail = 0.0;
};
CertReport certify_correctability(const CodeSpace& code, const std::vector<ErrorExps>& errors);

}  // namespace paircat
