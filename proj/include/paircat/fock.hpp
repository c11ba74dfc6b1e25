#pragma once

#include <functional>
#include <span>
#include <vector>

#include "paircat/types.hpp"

namespace paircat {

// Truncated multimode Fock space. Flat index is row-major over modes in
// declared order: the last mode varies fastest.
class FockSpace {
 public:
  FockSpace() = default;
  explicit FockSpace(std::vector<int> cutoffs);
  static FockSpace uniform(int modes, int cutoff);

  int modes() const { return static_cast<int>(cutoffs_.size()); }
  int cutoff(int mode) const { return cutoffs_.at(mode); }
  int mode_dim(int mode) const { return cutoffs_.at(mode) + 1; }
  int dim() const { return dim_; }
  const std::vector<int>& cutoffs() const { return cutoffs_; }

  int index(std::span<const int> occ) const;
  std::vector<int> occupation(int idx) const;
  int occupation(int idx, int mode) const { return (idx / strides_[mode]) % (cutoffs_[mode] + 1); }
  int stride(int mode) const { return strides_[mode]; }
  bool contains(std::span<const int> occ) const;

  bool operator==(const FockSpace& o) const { return cutoffs_ == o.cutoffs_; }

 private:
  std::vector<int> cutoffs_;
  std::vector<int> strides_;
  int dim_ = 0;
};

FockSpace tensor(const FockSpace& a, const FockSpace& b);

// Mode operators.
SpMat identity_op(const FockSpace& s);
SpMat annihilation_op(const FockSpace& s, int mode);
SpMat creation_op(const FockSpace& s, int mode);
SpMat number_op(const FockSpace& s, int mode);
// Diagonal operator with entries f(occupation tuple).
SpMat diagonal_op(const FockSpace& s, const std::function<cplx(const std::vector<int>&)>& f);
SpMat adjoint(const SpMat& A);
SpMat power(const SpMat& A, int k);
SpMat kron(const SpMat& A, const SpMat& B);

// Sector projectors. Each returns a diagonal 0/1 operator; `empty` reports a
// value with no representable support.
struct Projector {
  SpMat op;
  bool empty = false;
};
Projector parity_projector(const FockSpace& s, int mode, int parity);
// Onto {|n, n+delta>} of modes (ma, mb): delta = n_mb - n_ma.
Projector difference_projector(const FockSpace& s, int delta, int ma = 0, int mb = 1);
// Onto total photon number congruent to residue (mod 4), summed over all modes.
Projector mod4_projector(const FockSpace& s, int residue);
// Onto fixed nearest-neighbour differences n_{m+1} - n_m = dvec[m].
Projector delta_vector_projector(const FockSpace& s, std::span<const int> dvec);

// SWAP|n,m> = |m,n> on a two-mode space with equal cutoffs.
SpMat swap_op(const FockSpace& s);

// Kets and density operators.
struct Ket {
  FockSpace space;
  Vec amp;
  double tail_mass = 0.0;
};

// Fraction of |amp|^2 sitting in the top level of any mode.
double top_level_mass(const FockSpace& s, const Vec& v);
Mat outer(const Vec& a, const Vec& b);
Mat density(const Ket& k);

// Basis vector for an occupation tuple.
Vec fock_ket(const FockSpace& s, std::span<const int> occ);

// Partial trace over the given mode of a density matrix.
Mat partial_trace(const FockSpace& s, const Mat& rho, int mode);

}  // namespace paircat
