#include "paircat/fock.hpp"

#include <cmath>
#include <numeric>

namespace paircat {

FockSpace::FockSpace(std::vector<int> cutoffs) : cutoffs_(std::move(cutoffs)) {
  if (cutoffs_.empty()) throw ConfigError("FockSpace needs at least one mode");
  for (int c : cutoffs_)
    if (c < 1) throw ConfigError("mode cutoff must be >= 1");
  strides_.assign(cutoffs_.size(), 1);
  for (int m = modes() - 2; m >= 0; --m) strides_[m] = strides_[m + 1] * (cutoffs_[m + 1] + 1);
  long long d = 1;
  for (int c : cutoffs_) d *= (c + 1);
  if (d > (1LL << 30)) throw ConfigError("Fock space dimension too large");
  dim_ = static_cast<int>(d);
}

FockSpace FockSpace::uniform(int modes, int cutoff) { return FockSpace(std::vector<int>(modes, cutoff)); }

int FockSpace::index(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != modes()) throw ConfigError("occupation tuple has wrong length");
  int idx = 0;
  for (int m = 0; m < modes(); ++m) {
    if (occ[m] < 0 || occ[m] > cutoffs_[m]) throw ConfigError("occupation outside truncation");
    idx += occ[m] * strides_[m];
  }
  return idx;
}

std::vector<int> FockSpace::occupation(int idx) const {
  std::vector<int> occ(modes());
  for (int m = 0; m < modes(); ++m) occ[m] = occupation(idx, m);
  return occ;
}

bool FockSpace::contains(std::span<const int> occ) const {
  if (static_cast<int>(occ.size()) != modes()) return false;
  for (int m = 0; m < modes(); ++m)
    if (occ[m] < 0 || occ[m] > cutoffs_[m]) return false;
  return true;
}

FockSpace tensor(const FockSpace& a, const FockSpace& b) {
  std::vector<int> c = a.cutoffs();
  c.insert(c.end(), b.cutoffs().begin(), b.cutoffs().end());
  return FockSpace(c);
}

static void check_mode(const FockSpace& s, int mode) {
  if (mode < 0 || mode >= s.modes()) throw ConfigError("mode index out of range");
}

SpMat identity_op(const FockSpace& s) {
  SpMat I(s.dim(), s.dim());
  I.setIdentity();
  return I;
}

SpMat annihilation_op(const FockSpace& s, int mode) {
  check_mode(s, mode);
  std::vector<Triplet> t;
  t.reserve(s.dim());
  const int st = s.stride(mode);
  for (int i = 0; i < s.dim(); ++i) {
    const int n = s.occupation(i, mode);
    if (n > 0) t.emplace_back(i - st, i, std::sqrt(double(n)));
  }
  SpMat A(s.dim(), s.dim());
  A.setFromTriplets(t.begin(), t.end());
  return A;
}

SpMat creation_op(const FockSpace& s, int mode) { return adjoint(annihilation_op(s, mode)); }

SpMat diagonal_op(const FockSpace& s, const std::function<cplx(const std::vector<int>&)>& f) {
  std::vector<Triplet> t;
  t.reserve(s.dim());
  for (int i = 0; i < s.dim(); ++i) {
    const cplx v = f(s.occupation(i));
    if (v != cplx(0.0)) t.emplace_back(i, i, v);
  }
  SpMat D(s.dim(), s.dim());
  D.setFromTriplets(t.begin(), t.end());
  return D;
}

SpMat number_op(const FockSpace& s, int mode) {
  check_mode(s, mode);
  return diagonal_op(s, [mode](const std::vector<int>& o) { return cplx(o[mode]); });
}

SpMat adjoint(const SpMat& A) { return SpMat(A.adjoint()); }

SpMat power(const SpMat& A, int k) {
  SpMat R(A.rows(), A.cols());
  R.setIdentity();
  for (int i = 0; i < k; ++i) R = (A * R).pruned();
  return R;
}

SpMat kron(const SpMat& A, const SpMat& B) {
  std::vector<Triplet> t;
  t.reserve(static_cast<size_t>(A.nonZeros()) * B.nonZeros());
  for (int ka = 0; ka < A.outerSize(); ++ka)
    for (SpMat::InnerIterator ia(A, ka); ia; ++ia)
      for (int kb = 0; kb < B.outerSize(); ++kb)
        for (SpMat::InnerIterator ib(B, kb); ib; ++ib)
          t.emplace_back(ia.row() * B.rows() + ib.row(), ia.col() * B.cols() + ib.col(), ia.value() * ib.value());
  SpMat K(A.rows() * B.rows(), A.cols() * B.cols());
  K.setFromTriplets(t.begin(), t.end());
  return K;
}

static Projector make_projector(const FockSpace& s, const std::function<bool(const std::vector<int>&)>& keep) {
  Projector p;
  p.op = diagonal_op(s, [&](const std::vector<int>& o) { return keep(o) ? cplx(1.0) : cplx(0.0); });
  p.empty = p.op.nonZeros() == 0;
  return p;
}

static int mod(int a, int m) { return ((a % m) + m) % m; }

Projector parity_projector(const FockSpace& s, int mode, int parity) {
  check_mode(s, mode);
  return make_projector(s, [&](const std::vector<int>& o) { return mod(o[mode], 2) == mod(parity, 2); });
}

Projector difference_projector(const FockSpace& s, int delta, int ma, int mb) {
  check_mode(s, ma);
  check_mode(s, mb);
  return make_projector(s, [&](const std::vector<int>& o) { return o[mb] - o[ma] == delta; });
}

Projector mod4_projector(const FockSpace& s, int residue) {
  return make_projector(s, [&](const std::vector<int>& o) {
    return mod(std::accumulate(o.begin(), o.end(), 0), 4) == mod(residue, 4);
  });
}

Projector delta_vector_projector(const FockSpace& s, std::span<const int> dvec) {
  if (static_cast<int>(dvec.size()) != s.modes() - 1) throw ConfigError("delta vector must have M-1 entries");
  std::vector<int> d(dvec.begin(), dvec.end());
  return make_projector(s, [d](const std::vector<int>& o) {
    for (size_t m = 0; m + 1 < o.size(); ++m)
      if (o[m + 1] - o[m] != d[m]) return false;
    return true;
  });
}

SpMat swap_op(const FockSpace& s) {
  if (s.modes() != 2) throw ConfigError("SWAP needs exactly two modes");
  if (s.cutoff(0) != s.cutoff(1)) throw ConfigError("SWAP needs equal cutoffs");
  std::vector<Triplet> t;
  for (int i = 0; i < s.dim(); ++i) {
    const int n = s.occupation(i, 0), m = s.occupation(i, 1);
    const int j = m * s.stride(0) + n * s.stride(1);
    t.emplace_back(j, i, 1.0);
  }
  SpMat S(s.dim(), s.dim());
  S.setFromTriplets(t.begin(), t.end());
  return S;
}

double top_level_mass(const FockSpace& s, const Vec& v) {
  double top = 0.0, tot = 0.0;
  for (int i = 0; i < s.dim(); ++i) {
    const double p = std::norm(v[i]);
    tot += p;
    for (int m = 0; m < s.modes(); ++m)
      if (s.occupation(i, m) == s.cutoff(m)) {
        top += p;
        break;
      }
  }
  return tot > 0 ? top / tot : 0.0;
}

Mat outer(const Vec& a, const Vec& b) { return a * b.adjoint(); }

Mat density(const Ket& k) { return outer(k.amp, k.amp); }

Vec fock_ket(const FockSpace& s, std::span<const int> occ) {
  Vec v = Vec::Zero(s.dim());
  v[s.index(occ)] = 1.0;
  return v;
}

Mat partial_trace(const FockSpace& s, const Mat& rho, int mode) {
  check_mode(s, mode);
  std::vector<int> rest;
  for (int m = 0; m < s.modes(); ++m)
    if (m != mode) rest.push_back(s.cutoff(m));
  if (rest.empty()) {
    Mat r(1, 1);
    r(0, 0) = rho.trace();
    return r;
  }
  const FockSpace rs(rest);
  Mat out = Mat::Zero(rs.dim(), rs.dim());
  auto reduce = [&](int idx) {
    int r = 0, k = 0;
    for (int m = 0; m < s.modes(); ++m)
      if (m != mode) r += s.occupation(idx, m) * rs.stride(k++);
    return r;
  };
  for (int i = 0; i < s.dim(); ++i)
    for (int j = 0; j < s.dim(); ++j)
      if (s.occupation(i, mode) == s.occupation(j, mode)) out(reduce(i), reduce(j)) += rho(i, j);
  return out;
}

}  // namespace paircat
